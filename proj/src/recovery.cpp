#include "clbf/recovery.hpp"

#include <algorithm>
#include <stdexcept>

#include "clbf/embed.hpp"
#include "clbf/errors.hpp"

namespace clbf {

std::vector<DirectedEdge> edge_universe(const KeyStore& ks) {
  std::vector<DirectedEdge> edges;
  edges.reserve(ks.vehicles.size() * ks.vehicles.size());
  for (const auto& [rid, rcreds] : ks.vehicles) {
    for (const auto& [sid, screds] : ks.vehicles) {
      if (sid == rid) continue;
      edges.push_back({sid, rid, derive_edge_id(rcreds, rid, sid)});
    }
    edges.push_back({rid, ks.rsu_id, derive_edge_id(rcreds, rid, ks.rsu_id)});
  }
  return edges;
}

std::vector<DirectedEdge> recover_edges(const BloomFilter& bf1, const KeyStore& ks,
                                        const Bytes& pid, uint32_t k1) {
  std::vector<DirectedEdge> hits;
  for (DirectedEdge& e : edge_universe(ks))
    if (query_edge(bf1, e.eid, pid, k1)) hits.push_back(std::move(e));
  return hits;
}

namespace {

void dfs_paths(const std::map<Bytes, std::vector<const DirectedEdge*>>& adj, const Bytes& rsu,
               int h, Path& walk, std::set<Bytes>& visited, std::vector<Path>& out) {
  const Bytes& here = walk.back();
  if (int(walk.size()) - 1 == h) {
    if (here == rsu) out.push_back(walk);
    return;
  }
  auto it = adj.find(here);
  if (it == adj.end()) return;
  for (const DirectedEdge* e : it->second) {
    if (visited.count(e->to)) continue;
    visited.insert(e->to);
    walk.push_back(e->to);
    dfs_paths(adj, rsu, h, walk, visited, out);
    walk.pop_back();
    visited.erase(e->to);
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const std::vector<DirectedEdge>& edges, const Bytes& source_id,
                                  const Bytes& rsu_id, int h) {
  if (h < 1) throw std::invalid_argument("hop length must be at least 1");
  std::map<Bytes, std::vector<const DirectedEdge*>> adj;
  for (const DirectedEdge& e : edges) adj[e.from].push_back(&e);

  std::vector<Path> out;
  Path walk{source_id};
  std::set<Bytes> visited{source_id};
  dfs_paths(adj, rsu_id, h, walk, visited, out);
  return out;
}

std::map<Bytes, std::set<int>> recover_segments(const BloomFilter& bf2,
                                                const std::vector<Bytes>& path_nodes,
                                                const KeyStore& ks, int r, const Bytes& pid,
                                                uint32_t k2) {
  if (path_nodes.empty()) throw std::invalid_argument("path nodes must be nonempty");
  std::map<Bytes, std::set<int>> out;
  for (const Bytes& node : path_nodes) {
    const NodeCredentials& creds = ks.credentials_of(node);
    std::set<int>& segs = out[node];
    for (int seg = 1; seg <= r; ++seg)
      if (query_segment(bf2, creds, seg, pid, k2)) segs.insert(seg);
  }
  return out;
}

namespace {

constexpr uint64_t kCountCap = uint64_t(1) << 62;

inline uint64_t sat_add(uint64_t a, uint64_t b) {
  const uint64_t s = a + b;
  return (s < a || s > kCountCap) ? kCountCap : s;
}

// Assignment search over one candidate path via forward/backward dynamic
// programming on the canonical orientation (position 1 = RSU-adjacent
// node, anchored at the RSU's segment). Returns the saturating number of
// satisfying assignments and shrinks `sets` to the union over survivors.
uint64_t prune_candidate(const Path& path, int beta, int r, int rsu_segment,
                         std::map<Bytes, std::set<int>>& sets) {
  const int L = int(path.size()) - 1;  // embedding nodes
  std::vector<const std::set<int>*> level(L);
  for (int t = 0; t < L; ++t) {
    auto it = sets.find(path[size_t(L) - 1 - t]);  // canonical order: reversed path
    if (it == sets.end() || it->second.empty()) return 0;
    level[t] = &it->second;
  }

  // forward[t][v]: prefix assignments reaching value v at position t.
  std::vector<std::vector<uint64_t>> forward(L, std::vector<uint64_t>(r + 1, 0));
  for (int v : *level[0])
    if (v >= rsu_segment && v <= rsu_segment + beta) forward[0][v] = 1;
  for (int t = 1; t < L; ++t)
    for (int v : *level[t])
      for (int u = std::max(1, v - beta); u <= v; ++u)
        forward[t][v] = sat_add(forward[t][v], forward[t - 1][u]);

  std::vector<std::vector<uint64_t>> backward(L, std::vector<uint64_t>(r + 1, 0));
  for (int v : *level[L - 1]) backward[L - 1][v] = 1;
  for (int t = L - 2; t >= 0; --t)
    for (int v : *level[t])
      for (int w = v; w <= std::min(r, v + beta); ++w)
        backward[t][v] = sat_add(backward[t][v], backward[t + 1][w]);

  uint64_t total = 0;
  for (int v = 1; v <= r; ++v) total = sat_add(total, forward[L - 1][v]);
  if (total == 0) return 0;

  for (int t = 0; t < L; ++t) {
    std::set<int> survivors;
    for (int v : *level[t])
      if (forward[t][v] && backward[t][v]) survivors.insert(v);
    sets[path[size_t(L) - 1 - t]] = std::move(survivors);
  }
  return total;
}

}  // namespace

CandidateSet prune(const CandidateSet& in, int beta, int r, int rsu_segment) {
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  CandidateSet out;
  for (const CandidateSet::Candidate& cand : in.candidates) {
    if (cand.path.size() < 2) throw std::invalid_argument("candidate path needs source and RSU");
    CandidateSet::Candidate kept = cand;
    kept.assignment_count = prune_candidate(cand.path, beta, r, rsu_segment, kept.segments);
    if (kept.assignment_count > 0) out.candidates.push_back(std::move(kept));
  }
  if (out.candidates.empty())
    throw InconsistentProvenanceError(
        "no constraint-satisfying assignment survives pruning (tampering or loss)");
  return out;
}

RecoveryOutcome classify(const CandidateSet& pruned) {
  if (pruned.candidates.empty())
    throw InconsistentProvenanceError("empty candidate set");
  RecoveryOutcome out;
  out.candidate_count = pruned.candidates.size();

  bool unique = pruned.candidates.size() == 1;
  if (unique) {
    const CandidateSet::Candidate& c = pruned.candidates.front();
    for (const auto& [node, segs] : c.segments)
      if (segs.size() != 1) unique = false;
    if (unique) {
      out.tag = RecoveryOutcome::Tag::Unique;
      out.path = c.path;
      for (const auto& [node, segs] : c.segments) out.segments[node] = *segs.begin();
      return out;
    }
  }
  out.tag = RecoveryOutcome::Tag::FalsePositive;
  return out;
}

Bytes RecoveryOutcome::csv_row(const Bytes& pid) const {
  Bytes row = to_hex(pid);
  row += unique() ? ",unique," : ",false_positive,";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) row += '-';
    row += path[i];
  }
  row += ",\"";
  bool first = true;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {  // embedding nodes only
    auto it = segments.find(path[i]);
    if (it == segments.end()) continue;
    if (!first) row += ',';
    first = false;
    row += std::to_string(it->second);
  }
  row += "\",";
  row += std::to_string(candidate_count);
  return row;
}

RecoveryOutcome recover(const ClbfPacket& pkt, const KeyStore& ks, const Bytes& source_id,
                        int r, int beta, uint32_t k1, uint32_t k2) {
  const int h = int(pkt.hop_counter);
  if (h < 1) throw InconsistentProvenanceError("packet carries no hops");

  const std::vector<DirectedEdge> edges = recover_edges(pkt.bf1, ks, pkt.pid, k1);
  const std::vector<Path> paths = enumerate_paths(edges, source_id, ks.rsu_id, h);
  if (paths.empty())
    throw InconsistentProvenanceError("no h-hop candidate path recovered from BF1");

  CandidateSet cands;
  for (const Path& p : paths) {
    CandidateSet::Candidate c;
    c.path = p;
    const std::vector<Bytes> embedding_nodes(p.begin(), p.end() - 1);
    c.segments = recover_segments(pkt.bf2, embedding_nodes, ks, r, pkt.pid, k2);
    cands.candidates.push_back(std::move(c));
  }
  return classify(prune(cands, beta, r));
}

}  // namespace clbf
