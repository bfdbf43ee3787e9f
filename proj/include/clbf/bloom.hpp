#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clbf/bits.hpp"

namespace clbf {

// Fixed-size bit array with 1-based indices. Bits only ever transition
// 0 -> 1 through embedding.
class BloomFilter {
 public:
  explicit BloomFilter(uint32_t m);

  uint32_t size_bits() const { return m_; }

  void set_index(uint32_t idx);        // idx in [1, m]
  bool test_index(uint32_t idx) const; // idx in [1, m]

  std::size_t popcount() const { return bits_.popcount(); }
  bool all_set() const { return popcount() == m_; }

  const BitVec& bits() const { return bits_; }
  static BloomFilter from_bits(const BitVec& bits);

  bool operator==(const BloomFilter& o) const = default;

 private:
  uint32_t m_;
  BitVec bits_;
};

// True iff every listed index is set. Throws std::out_of_range when an
// index falls outside [1, m].
bool query(const BloomFilter& bf, std::span<const uint32_t> indices);
bool query(const BloomFilter& bf, const std::vector<uint32_t>& indices);

}  // namespace clbf
