#include "clbf/credentials.hpp"

#include <stdexcept>

#include "clbf/hashing.hpp"

namespace clbf {

EdgeId derive_edge_id(const NodeCredentials& creds, const Bytes& self_id,
                      const Bytes& neighbor_id) {
  if (self_id != creds.node_id)
    throw std::invalid_argument("edge id must be derived under the deriving node's own key");
  if (self_id == neighbor_id) throw std::invalid_argument("edge id for a self-loop");

  KeyedIndexer ix(kTagEdgeId, derive_sip_key(creds.key));
  ix.add_field(self_id);
  ix.add_field(neighbor_id);
  const uint64_t d = ix.digest(1);

  Bytes value(8, '\0');
  for (int i = 0; i < 8; ++i) value[i] = char((d >> (8 * (7 - i))) & 0xFF);
  return EdgeId{std::move(value), self_id, neighbor_id};
}

const NodeCredentials& KeyStore::credentials_of(const Bytes& node_id) const {
  auto it = vehicles.find(node_id);
  if (it == vehicles.end()) throw std::invalid_argument("unknown node id in key store");
  return it->second;
}

}  // namespace clbf
