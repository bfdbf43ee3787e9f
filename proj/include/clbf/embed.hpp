#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clbf/credentials.hpp"
#include "clbf/packet.hpp"

namespace clbf {

// Indices a node derives for its (segment, pid) pair; the secret key is
// part of the digested material, mirroring H(id || seg || pid || l || key).
std::vector<uint32_t> segment_indices(const NodeCredentials& creds, int segment,
                                      const Bytes& pid, uint32_t k2, uint32_t m2);

// Indices for an edge id under a given pid, H(eid || pid || a).
std::vector<uint32_t> edge_indices(const EdgeId& eid, const Bytes& pid, uint32_t k1,
                                   uint32_t m1);

// Sets the k2 segment indices in BF2. Previously set bits stay set.
void embed_segment(ClbfPacket& pkt, const NodeCredentials& creds, int segment, uint32_t k2);

// Sets the k1 edge indices in BF1.
void embed_edge(ClbfPacket& pkt, const EdgeId& eid, uint32_t k1);

// One node's processing step. The source passes no predecessor and leaves
// BF1 untouched; a forwarder first embeds the edge from its predecessor
// (derived under its own key), then its segment, then increments the
// counter. The hop into the RSU is embedded by the RSU-adjacent node via
// embed_rsu_edge; the RSU itself never embeds.
void forward_step(ClbfPacket& pkt, const NodeCredentials& creds,
                  const std::optional<Bytes>& prev_node_id, int segment, uint32_t k1,
                  uint32_t k2);

// Final-hop edge (self -> RSU), derived under the forwarder's key.
void embed_rsu_edge(ClbfPacket& pkt, const NodeCredentials& creds, const Bytes& rsu_id,
                    uint32_t k1);

// Short-circuit membership checks used by recovery; equivalent to
// query(bf, segment_indices(...)) / query(bf, edge_indices(...)) but stops
// at the first unset bit.
bool query_segment(const BloomFilter& bf2, const NodeCredentials& creds, int segment,
                   const Bytes& pid, uint32_t k2);
bool query_edge(const BloomFilter& bf1, const EdgeId& eid, const Bytes& pid, uint32_t k1);

}  // namespace clbf
