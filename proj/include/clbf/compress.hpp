#pragma once

#include <cstdint>

#include "clbf/bits.hpp"

namespace clbf {

// Lossless codecs for sparse provenance bit arrays. The bit-level
// encodings are fixed (see docs/formats.md) so independent
// implementations interoperate.
enum class CompressionScheme : uint8_t {
  kRaw = 0,   // the input bits, byte-padded
  kRake = 1,  // Golomb-Rice coded zero-run lengths, per-filter parameter
  kRle = 2,   // 8-bit zero-run lengths with 0xFF continuation
};

struct CompressedBits {
  CompressionScheme scheme = CompressionScheme::kRaw;
  uint32_t original_bits = 0;
  BitVec body;

  // Size metric used in reports: one scheme-selection bit plus the body.
  std::size_t size_bits() const { return 1 + body.size(); }

  // Wire form: scheme byte || original bit length (big-endian 16 bits) ||
  // body bytes (zero-padded to a byte boundary).
  Bytes serialize() const;
  static CompressedBits parse(const Bytes& wire);
};

// Encodes with the preferred codec and falls back to raw passthrough
// whenever that is at least as small, so the result never exceeds the
// input by more than the header.
CompressedBits compress(const BitVec& bits,
                        CompressionScheme preferred = CompressionScheme::kRake);

// Forces a specific scheme (no raw fallback).
CompressedBits compress_with(CompressionScheme scheme, const BitVec& bits);

// Exact inverse of compress/compress_with. Throws DecodeError on
// malformed bodies.
BitVec decompress(const CompressedBits& c);

}  // namespace clbf
