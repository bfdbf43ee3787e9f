#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace clbf {

// Raw byte strings (node ids, keys, pids, payloads are all opaque bytes).
using Bytes = std::string;

// A bit string with explicit length, stored MSB-first within each byte
// (bit 0 of the string is the 0x80 bit of byte 0). This matches the wire
// layout used for Bloom filter bits.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), bytes_((nbits + 7) / 8, 0) {}

  static BitVec from_bytes(const Bytes& bytes, std::size_t nbits);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }
  void set(std::size_t i, bool v = true) {
    const uint8_t mask = uint8_t(1u << (7 - (i & 7)));
    if (v)
      bytes_[i >> 3] |= mask;
    else
      bytes_[i >> 3] &= uint8_t(~mask);
  }
  void push_back(bool v) {
    if ((nbits_ & 7) == 0) bytes_.push_back(0);
    ++nbits_;
    set(nbits_ - 1, v);
  }

  std::size_t popcount() const;

  const std::vector<uint8_t>& bytes() const { return bytes_; }
  Bytes to_bytes() const { return Bytes(bytes_.begin(), bytes_.end()); }

  bool operator==(const BitVec& o) const {
    return nbits_ == o.nbits_ && bytes_ == o.bytes_;
  }

 private:
  std::size_t nbits_ = 0;
  std::vector<uint8_t> bytes_;
};

Bytes to_hex(const Bytes& b);
Bytes from_hex(const Bytes& hex);

// Packet ids are 8 bytes on the wire; helper for building them from ints.
Bytes make_pid(uint64_t n);

}  // namespace clbf
