#include "clbf/embed.hpp"

#include <stdexcept>

#include "clbf/hashing.hpp"

namespace clbf {

namespace {

void append_le32(Bytes& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

KeyedIndexer segment_indexer(const NodeCredentials& creds, int segment, const Bytes& pid) {
  if (segment < 1) throw std::invalid_argument("segment index must be positive");
  KeyedIndexer ix(kTagSegment);
  Bytes seg;
  append_le32(seg, uint32_t(segment));
  ix.add_field(creds.node_id);
  ix.add_field(seg);
  ix.add_field(pid);
  ix.add_field(creds.key);
  return ix;
}

KeyedIndexer edge_indexer(const EdgeId& eid, const Bytes& pid) {
  KeyedIndexer ix(kTagEdge);
  ix.add_field(eid.value);
  ix.add_field(pid);
  return ix;
}

}  // namespace

std::vector<uint32_t> segment_indices(const NodeCredentials& creds, int segment,
                                      const Bytes& pid, uint32_t k2, uint32_t m2) {
  KeyedIndexer ix = segment_indexer(creds, segment, pid);
  std::vector<uint32_t> out;
  out.reserve(k2);
  for (uint32_t l = 1; l <= k2; ++l) out.push_back(ix.index(l, m2));
  return out;
}

std::vector<uint32_t> edge_indices(const EdgeId& eid, const Bytes& pid, uint32_t k1,
                                   uint32_t m1) {
  KeyedIndexer ix = edge_indexer(eid, pid);
  std::vector<uint32_t> out;
  out.reserve(k1);
  for (uint32_t a = 1; a <= k1; ++a) out.push_back(ix.index(a, m1));
  return out;
}

void embed_segment(ClbfPacket& pkt, const NodeCredentials& creds, int segment, uint32_t k2) {
  KeyedIndexer ix = segment_indexer(creds, segment, pkt.pid);
  const uint32_t m2 = pkt.bf2.size_bits();
  for (uint32_t l = 1; l <= k2; ++l) pkt.bf2.set_index(ix.index(l, m2));
}

void embed_edge(ClbfPacket& pkt, const EdgeId& eid, uint32_t k1) {
  KeyedIndexer ix = edge_indexer(eid, pkt.pid);
  const uint32_t m1 = pkt.bf1.size_bits();
  for (uint32_t a = 1; a <= k1; ++a) pkt.bf1.set_index(ix.index(a, m1));
}

void forward_step(ClbfPacket& pkt, const NodeCredentials& creds,
                  const std::optional<Bytes>& prev_node_id, int segment, uint32_t k1,
                  uint32_t k2) {
  if (prev_node_id)
    embed_edge(pkt, derive_edge_id(creds, creds.node_id, *prev_node_id), k1);
  embed_segment(pkt, creds, segment, k2);
  ++pkt.hop_counter;
}

void embed_rsu_edge(ClbfPacket& pkt, const NodeCredentials& creds, const Bytes& rsu_id,
                    uint32_t k1) {
  embed_edge(pkt, derive_edge_id(creds, creds.node_id, rsu_id), k1);
}

bool query_segment(const BloomFilter& bf2, const NodeCredentials& creds, int segment,
                   const Bytes& pid, uint32_t k2) {
  KeyedIndexer ix = segment_indexer(creds, segment, pid);
  const uint32_t m2 = bf2.size_bits();
  for (uint32_t l = 1; l <= k2; ++l)
    if (!bf2.test_index(ix.index(l, m2))) return false;
  return true;
}

bool query_edge(const BloomFilter& bf1, const EdgeId& eid, const Bytes& pid, uint32_t k1) {
  KeyedIndexer ix = edge_indexer(eid, pid);
  const uint32_t m1 = bf1.size_bits();
  for (uint32_t a = 1; a <= k1; ++a)
    if (!bf1.test_index(ix.index(a, m1))) return false;
  return true;
}

}  // namespace clbf
