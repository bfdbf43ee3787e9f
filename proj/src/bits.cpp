#include "clbf/bits.hpp"

#include <bit>
#include <stdexcept>

#include "clbf/errors.hpp"

namespace clbf {

BitVec BitVec::from_bytes(const Bytes& bytes, std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8)
    throw DecodeError("bit string length does not match byte count");
  BitVec v(nbits);
  for (std::size_t i = 0; i < bytes.size(); ++i)
    v.bytes_[i] = static_cast<uint8_t>(bytes[i]);
  // Padding bits beyond nbits must be zero so equal bit strings have a
  // unique byte form.
  if (nbits & 7) {
    const uint8_t pad_mask = uint8_t(0xFFu >> (nbits & 7));
    if (v.bytes_.back() & pad_mask) throw DecodeError("nonzero padding bits");
  }
  return v;
}

std::size_t BitVec::popcount() const {
  std::size_t n = 0;
  for (uint8_t b : bytes_) n += std::popcount(b);
  return n;
}

Bytes to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  Bytes out;
  out.reserve(b.size() * 2);
  for (unsigned char c : b) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

Bytes from_hex(const Bytes& hex) {
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DecodeError("invalid hex digit");
  };
  if (hex.size() % 2) throw DecodeError("odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(char((nib(hex[i]) << 4) | nib(hex[i + 1])));
  return out;
}

Bytes make_pid(uint64_t n) {
  Bytes pid(8, '\0');
  for (int i = 7; i >= 0; --i) {
    pid[i] = char(n & 0xFF);
    n >>= 8;
  }
  return pid;
}

}  // namespace clbf
