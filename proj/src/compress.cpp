#include "clbf/compress.hpp"

#include <stdexcept>
#include <vector>

#include "clbf/errors.hpp"

namespace clbf {

namespace {

// Zero-run lengths between ones, with one trailing phantom run covering
// the zeros after the last set bit. A decoder emits `run` zeros and a one
// per run and stops once original_bits + 1 bits were produced; the
// phantom one is dropped.
std::vector<uint32_t> zero_runs(const BitVec& bits) {
  std::vector<uint32_t> runs;
  uint32_t run = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.get(i)) {
      runs.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  runs.push_back(run);  // phantom terminator
  return runs;
}

class BitReader {
 public:
  explicit BitReader(const BitVec& v) : v_(v) {}
  bool read() {
    if (pos_ >= v_.size()) throw DecodeError("compressed body truncated");
    return v_.get(pos_++);
  }
  uint32_t read_bits(unsigned n) {
    uint32_t x = 0;
    for (unsigned i = 0; i < n; ++i) x = (x << 1) | uint32_t(read());
    return x;
  }

 private:
  const BitVec& v_;
  std::size_t pos_ = 0;
};

void write_bits(BitVec& out, uint32_t value, unsigned n) {
  for (unsigned i = n; i-- > 0;) out.push_back((value >> i) & 1u);
}

BitVec rice_encode(const std::vector<uint32_t>& runs, unsigned k) {
  BitVec out;
  write_bits(out, k - 1, 2);  // parameter field, k in [1, 4]
  for (uint32_t n : runs) {
    for (uint32_t q = n >> k; q > 0; --q) out.push_back(true);
    out.push_back(false);
    write_bits(out, n & ((1u << k) - 1), k);
  }
  return out;
}

BitVec rake_encode(const BitVec& bits) {
  const std::vector<uint32_t> runs = zero_runs(bits);
  BitVec best;
  for (unsigned k = 1; k <= 4; ++k) {
    BitVec candidate = rice_encode(runs, k);
    if (best.empty() || candidate.size() < best.size()) best = std::move(candidate);
  }
  return best;
}

BitVec rake_decode(const BitVec& body, uint32_t original_bits) {
  BitReader in(body);
  const unsigned k = in.read_bits(2) + 1;
  BitVec out(original_bits);
  std::size_t pos = 0;
  while (pos <= original_bits) {  // one extra "one" for the phantom run
    uint32_t q = 0;
    while (in.read()) ++q;
    const uint32_t run = (q << k) | in.read_bits(k);
    if (pos + run > original_bits) throw DecodeError("zero run overruns bit string");
    pos += run;
    if (pos < original_bits) out.set(pos);
    ++pos;  // the (possibly phantom) one
  }
  if (pos != original_bits + 1) throw DecodeError("compressed body inconsistent");
  return out;
}

BitVec rle_encode(const BitVec& bits) {
  BitVec out;
  for (uint32_t n : zero_runs(bits)) {
    while (n >= 255) {
      write_bits(out, 255, 8);
      n -= 255;
    }
    write_bits(out, n, 8);
  }
  return out;
}

BitVec rle_decode(const BitVec& body, uint32_t original_bits) {
  BitReader in(body);
  BitVec out(original_bits);
  std::size_t pos = 0;
  while (pos <= original_bits) {
    uint32_t run = 0;
    uint32_t tok;
    do {
      tok = in.read_bits(8);
      run += tok;
    } while (tok == 255);
    if (pos + run > original_bits) throw DecodeError("zero run overruns bit string");
    pos += run;
    if (pos < original_bits) out.set(pos);
    ++pos;
  }
  if (pos != original_bits + 1) throw DecodeError("compressed body inconsistent");
  return out;
}

}  // namespace

Bytes CompressedBits::serialize() const {
  Bytes out;
  out.push_back(char(uint8_t(scheme)));
  out.push_back(char((original_bits >> 8) & 0xFF));
  out.push_back(char(original_bits & 0xFF));
  out += body.to_bytes();
  return out;
}

CompressedBits CompressedBits::parse(const Bytes& wire) {
  if (wire.size() < 3) throw DecodeError("compressed blob too short");
  const uint8_t tag = uint8_t(wire[0]);
  if (tag > uint8_t(CompressionScheme::kRle)) throw DecodeError("unknown compression scheme");
  CompressedBits c;
  c.scheme = CompressionScheme(tag);
  c.original_bits = (uint32_t(uint8_t(wire[1])) << 8) | uint8_t(wire[2]);
  const Bytes body = wire.substr(3);
  c.body = BitVec::from_bytes(body, body.size() * 8);
  return c;
}

CompressedBits compress_with(CompressionScheme scheme, const BitVec& bits) {
  if (bits.size() > 0xFFFF) throw std::invalid_argument("bit string exceeds 16-bit length");
  CompressedBits c;
  c.scheme = scheme;
  c.original_bits = uint32_t(bits.size());
  switch (scheme) {
    case CompressionScheme::kRaw:
      c.body = bits;
      break;
    case CompressionScheme::kRake:
      c.body = rake_encode(bits);
      break;
    case CompressionScheme::kRle:
      c.body = rle_encode(bits);
      break;
  }
  return c;
}

CompressedBits compress(const BitVec& bits, CompressionScheme preferred) {
  if (preferred == CompressionScheme::kRaw) return compress_with(CompressionScheme::kRaw, bits);
  CompressedBits coded = compress_with(preferred, bits);
  if (coded.body.size() >= bits.size()) return compress_with(CompressionScheme::kRaw, bits);
  return coded;
}

BitVec decompress(const CompressedBits& c) {
  switch (c.scheme) {
    case CompressionScheme::kRaw: {
      if (c.body.size() < c.original_bits) throw DecodeError("raw body shorter than declared");
      BitVec out(c.original_bits);
      for (std::size_t i = 0; i < c.original_bits; ++i)
        if (c.body.get(i)) out.set(i);
      return out;
    }
    case CompressionScheme::kRake:
      return rake_decode(c.body, c.original_bits);
    case CompressionScheme::kRle:
      return rle_decode(c.body, c.original_bits);
  }
  throw DecodeError("unknown compression scheme");
}

}  // namespace clbf
