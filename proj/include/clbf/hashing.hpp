#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "clbf/bits.hpp"
#include "clbf/siphash.hpp"

namespace clbf {

// Domain separation tags for the two filters and for edge-id derivation.
inline constexpr std::string_view kTagSegment = "SEG";
inline constexpr std::string_view kTagEdge = "EDGE";
inline constexpr std::string_view kTagEdgeId = "EID";

// Incrementally builds the message `tag || 0x00 || (le16(len) || field)* || le32(l)`
// and evaluates the keyed digest for successive counter values l. The
// counter slot is rewritten in place so one buffer serves all k indices.
class KeyedIndexer {
 public:
  explicit KeyedIndexer(std::string_view domain_tag, const SipKey& key = index_key());

  void add_field(std::string_view field);

  // 64-bit digest for counter value l (l >= 1).
  uint64_t digest(uint32_t l) const;

  // 1-based filter index in [1, m] for counter value l. The modulo
  // reduction has negligible bias for m far below 2^64.
  uint32_t index(uint32_t l, uint32_t m) const {
    return uint32_t(digest(l) % m) + 1;
  }

  static const SipKey& index_key();

 private:
  SipKey key_;
  mutable std::string buf_;
};

// All k 1-based indices for (domain_tag || material) at counters 1..k.
// `material` is treated as a single length-prefixed field.
std::vector<uint32_t> hash_indices(std::string_view domain_tag, std::string_view material,
                                   uint32_t k, uint32_t m);

std::vector<uint32_t> hash_indices(std::string_view domain_tag,
                                   std::initializer_list<std::string_view> fields, uint32_t k,
                                   uint32_t m);

// Compresses an arbitrary-length secret to the 16-byte SipHash key size.
// A 16-byte secret is used as-is.
SipKey derive_sip_key(const Bytes& secret);

}  // namespace clbf
