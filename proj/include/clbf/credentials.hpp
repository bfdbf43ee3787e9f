#pragma once

#include <map>

#include "clbf/bits.hpp"

namespace clbf {

// Per-node identity and the secret pre-shared with the RSU.
struct NodeCredentials {
  Bytes node_id;
  Bytes key;
};

// Keyed, asymmetric edge identifier. The value is derived at one node
// (`derived_at`) about a neighbour, under the deriving node's key, so
// EID(i,j) != EID(j,i) except with negligible probability.
struct EdgeId {
  Bytes value;       // 8 bytes
  Bytes derived_at;  // node whose key produced the value
  Bytes subject;     // the neighbour named in the derivation

  bool operator==(const EdgeId& o) const { return value == o.value; }
};

// EID = PRF_K(self_id || neighbor_id). Reproducible by the RSU, which
// holds every node's key. Throws std::invalid_argument on a self-loop or
// when self_id does not match the credentials.
EdgeId derive_edge_id(const NodeCredentials& creds, const Bytes& self_id,
                      const Bytes& neighbor_id);

// RSU-side key material: credentials for every vehicle plus the RSU id.
struct KeyStore {
  std::map<Bytes, NodeCredentials> vehicles;
  Bytes rsu_id;

  const NodeCredentials& credentials_of(const Bytes& node_id) const;
};

}  // namespace clbf
