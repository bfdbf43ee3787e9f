#include "clbf/bloom.hpp"

#include <stdexcept>
#include <string>

namespace clbf {

BloomFilter::BloomFilter(uint32_t m) : m_(m), bits_(m) {
  if (m < 1) throw std::invalid_argument("Bloom filter size must be positive");
}

void BloomFilter::set_index(uint32_t idx) {
  if (idx < 1 || idx > m_) throw std::out_of_range("Bloom filter index out of range");
  bits_.set(idx - 1);
}

bool BloomFilter::test_index(uint32_t idx) const {
  if (idx < 1 || idx > m_) throw std::out_of_range("Bloom filter index out of range");
  return bits_.get(idx - 1);
}

BloomFilter BloomFilter::from_bits(const BitVec& bits) {
  BloomFilter bf(uint32_t(bits.size()));
  bf.bits_ = bits;
  return bf;
}

bool query(const BloomFilter& bf, std::span<const uint32_t> indices) {
  for (uint32_t idx : indices)
    if (!bf.test_index(idx)) return false;
  return true;
}

bool query(const BloomFilter& bf, const std::vector<uint32_t>& indices) {
  return query(bf, std::span<const uint32_t>(indices));
}

}  // namespace clbf
