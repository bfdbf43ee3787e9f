#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "clbf/credentials.hpp"
#include "clbf/packet.hpp"

namespace clbf {

// Candidate edge with its recovery-side orientation. For vehicle pairs the
// id is derived at the receiver, so the derivation (self=b, neighbor=a)
// names the edge a -> b. The hop into the RSU is the one exception: it is
// derived at the sending forwarder (the RSU never embeds), so (self=f,
// neighbor=rsu) names f -> rsu.
struct DirectedEdge {
  Bytes from;
  Bytes to;
  EdgeId eid;
};

// Node ids from source to RSU inclusive; an h-hop path has h+1 entries.
using Path = std::vector<Bytes>;

// Every edge the RSU can test for a packet: all ordered vehicle pairs plus
// one RSU-bound edge per vehicle.
std::vector<DirectedEdge> edge_universe(const KeyStore& ks);

// Edges whose k1 indices are all set in BF1; a superset of the embedded
// edges.
std::vector<DirectedEdge> recover_edges(const BloomFilter& bf1, const KeyStore& ks,
                                        const Bytes& pid, uint32_t k1);

// All simple h-hop paths from source to the RSU over the recovered edges.
// An empty result signals loss or corruption; callers decide severity.
std::vector<Path> enumerate_paths(const std::vector<DirectedEdge>& edges, const Bytes& source_id,
                                  const Bytes& rsu_id, int h);

// Per-node candidate segments: every segment whose k2 indices are all set
// in BF2. Always contains the truly embedded segment.
std::map<Bytes, std::set<int>> recover_segments(const BloomFilter& bf2,
                                                const std::vector<Bytes>& path_nodes,
                                                const KeyStore& ks, int r, const Bytes& pid,
                                                uint32_t k2);

struct CandidateSet {
  struct Candidate {
    Path path;                            // source .. rsu
    std::map<Bytes, std::set<int>> segments;  // embedding nodes only
    uint64_t assignment_count = 0;        // filled by prune(), saturating
  };
  std::vector<Candidate> candidates;
};

// Keeps only segments participating in at least one full assignment that
// satisfies the routing and communication constraints; candidates with no
// satisfying assignment are dropped. Throws InconsistentProvenanceError
// when nothing survives.
CandidateSet prune(const CandidateSet& in, int beta, int r, int rsu_segment = 1);

struct RecoveryOutcome {
  enum class Tag { Unique, FalsePositive };
  Tag tag;
  Path path;                    // populated when Unique
  std::map<Bytes, int> segments;  // populated when Unique
  std::size_t candidate_count = 0;

  bool unique() const { return tag == Tag::Unique; }
  // pid, outcome, path (dash-joined), segments (comma-joined), candidate_count
  Bytes csv_row(const Bytes& pid) const;
};

// Unique iff exactly one candidate path remains and every pruned segment
// set is a singleton. Throws InconsistentProvenanceError on an empty set.
RecoveryOutcome classify(const CandidateSet& pruned);

// Full RSU-side pipeline for one packet. Hop length is read from the
// packet's hop counter.
RecoveryOutcome recover(const ClbfPacket& pkt, const KeyStore& ks, const Bytes& source_id,
                        int r, int beta, uint32_t k1, uint32_t k2);

}  // namespace clbf
