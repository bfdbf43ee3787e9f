#include <random>
#include <set>
#include <vector>

#include "clbf/hashing.hpp"
#include "doctest.h"
#include "support/stats.hpp"

using namespace clbf;

TEST_SUITE_BEGIN("hashing");

TEST_CASE("siphash24 reference vectors") {
  // Key 00..0f over inputs 00 01 .. len-1 (SipHash paper appendix).
  SipKey key;
  for (int i = 0; i < 16; ++i) key[i] = uint8_t(i);
  auto msg = [](size_t len) {
    Bytes m;
    for (size_t i = 0; i < len; ++i) m.push_back(char(i));
    return m;
  };
  CHECK(siphash24(msg(0), key) == 0x726fdb47dd0e0e31ULL);
  CHECK(siphash24(msg(1), key) == 0x74f839c593dc67fdULL);
  CHECK(siphash24(msg(2), key) == 0x0d6c8009d9a94f5aULL);
  CHECK(siphash24(msg(3), key) == 0x85676696d7fb7e2dULL);
  CHECK(siphash24(msg(8), key) == 0x93f5f5799a932462ULL);
  CHECK(siphash24(msg(15), key) == 0xa129ca6149be45e5ULL);
}

TEST_CASE("hash_indices is deterministic and in range") {
  const auto a = hash_indices(kTagSegment, "material", 8, 100);
  const auto b = hash_indices(kTagSegment, "material", 8, 100);
  CHECK(a == b);
  CHECK(a.size() == 8);
  for (uint32_t idx : a) {
    CHECK(idx >= 1);
    CHECK(idx <= 100);
  }
  // Different tags or material give different index streams.
  CHECK(hash_indices(kTagEdge, "material", 8, 100) != a);
  CHECK(hash_indices(kTagSegment, "material2", 8, 100) != a);
}

TEST_CASE("single slot filter always maps to index 1") {
  CHECK(hash_indices(kTagSegment, "anything", 1, 1) == std::vector<uint32_t>{1});
}

TEST_CASE("field boundaries matter") {
  KeyedIndexer a(kTagEdgeId);
  a.add_field("ab");
  a.add_field("c");
  KeyedIndexer b(kTagEdgeId);
  b.add_field("a");
  b.add_field("bc");
  CHECK(a.digest(1) != b.digest(1));
}

TEST_CASE("index distribution is uniform (chi-square)") {
  const uint32_t m = 100;
  std::vector<double> observed(m, 0.0);
  std::mt19937_64 rng(7);
  const int calls = 20000, k = 5;  // 1e5 indices
  for (int i = 0; i < calls; ++i) {
    Bytes material(12, '\0');
    for (auto& c : material) c = char(rng() & 0xFF);
    for (uint32_t idx : hash_indices(kTagSegment, material, k, m)) observed[idx - 1] += 1.0;
  }
  const double n = double(calls) * k;
  std::vector<double> expected(m, n / m);
  const double p = teststats::chisq_pvalue(teststats::chisq_stat(observed, expected), m - 1);
  CHECK(p > 0.01);
}

TEST_CASE("derive_sip_key uses 16-byte secrets directly") {
  Bytes secret(16, '\x42');
  const SipKey k = derive_sip_key(secret);
  for (int i = 0; i < 16; ++i) CHECK(k[i] == 0x42);
  // Other lengths are compressed but stay deterministic.
  CHECK(derive_sip_key("short") == derive_sip_key("short"));
  CHECK(derive_sip_key("short") != derive_sip_key("short2"));
}

TEST_SUITE_END();
