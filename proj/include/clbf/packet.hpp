#pragma once

#include <cstdint>

#include "clbf/bits.hpp"
#include "clbf/bloom.hpp"

namespace clbf {

// Packet header carrying the CLBF pair plus the hop counter.
//
// Wire layout (all integers big-endian, filter bits MSB-first):
//   pid (8) || hop_counter (1) || m1 (2) || BF1 bits (ceil(m1/8)) ||
//   m2 (2) || BF2 bits (ceil(m2/8)) || payload_len (2) || payload
struct ClbfPacket {
  Bytes pid;
  BloomFilter bf1;
  BloomFilter bf2;
  uint32_t hop_counter = 0;
  Bytes payload;

  ClbfPacket(Bytes packet_id, uint32_t m1, uint32_t m2, Bytes body = {});

  Bytes serialize() const;
  static ClbfPacket parse(const Bytes& wire);

  bool operator==(const ClbfPacket& o) const = default;
};

}  // namespace clbf
