#include "clbf/hashing.hpp"

#include <stdexcept>

namespace clbf {

namespace {

const SipKey kIndexKey = {'c', 'l', 'b', 'f', '/', 'i', 'n', 'd',
                          'e', 'x', '/', 'v', '1', 0, 0, 0};
const SipKey kKdfLo = {'c', 'l', 'b', 'f', '/', 'k', 'd', 'f',
                       '/', 'l', 'o', '/', 'v', '1', 0, 0};
const SipKey kKdfHi = {'c', 'l', 'b', 'f', '/', 'k', 'd', 'f',
                       '/', 'h', 'i', '/', 'v', '1', 0, 0};

}  // namespace

KeyedIndexer::KeyedIndexer(std::string_view domain_tag, const SipKey& key) : key_(key) {
  buf_.reserve(96);
  buf_.append(domain_tag);
  buf_.push_back('\0');
}

void KeyedIndexer::add_field(std::string_view field) {
  if (field.size() > 0xFFFF) throw std::invalid_argument("field too long");
  buf_.push_back(char(field.size() & 0xFF));
  buf_.push_back(char((field.size() >> 8) & 0xFF));
  buf_.append(field);
}

uint64_t KeyedIndexer::digest(uint32_t l) const {
  buf_.resize(buf_.size() + 4);
  char* p = buf_.data() + buf_.size() - 4;
  p[0] = char(l & 0xFF);
  p[1] = char((l >> 8) & 0xFF);
  p[2] = char((l >> 16) & 0xFF);
  p[3] = char((l >> 24) & 0xFF);
  const uint64_t d = siphash24(buf_, key_);
  buf_.resize(buf_.size() - 4);
  return d;
}

const SipKey& KeyedIndexer::index_key() { return kIndexKey; }

std::vector<uint32_t> hash_indices(std::string_view domain_tag, std::string_view material,
                                   uint32_t k, uint32_t m) {
  return hash_indices(domain_tag, {material}, k, m);
}

std::vector<uint32_t> hash_indices(std::string_view domain_tag,
                                   std::initializer_list<std::string_view> fields, uint32_t k,
                                   uint32_t m) {
  if (k < 1 || m < 1) throw std::invalid_argument("hash_indices requires k >= 1 and m >= 1");
  KeyedIndexer ix(domain_tag);
  for (auto f : fields) ix.add_field(f);
  std::vector<uint32_t> out;
  out.reserve(k);
  for (uint32_t l = 1; l <= k; ++l) out.push_back(ix.index(l, m));
  return out;
}

SipKey derive_sip_key(const Bytes& secret) {
  SipKey key{};
  if (secret.size() == key.size()) {
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = uint8_t(secret[i]);
    return key;
  }
  const uint64_t lo = siphash24(secret, kKdfLo);
  const uint64_t hi = siphash24(secret, kKdfHi);
  for (int i = 0; i < 8; ++i) {
    key[i] = uint8_t(lo >> (8 * i));
    key[8 + i] = uint8_t(hi >> (8 * i));
  }
  return key;
}

}  // namespace clbf
