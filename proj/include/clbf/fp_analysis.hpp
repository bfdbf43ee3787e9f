#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "clbf/bits.hpp"
#include "clbf/segment_model.hpp"

namespace clbf {

// Parameters of the location-filter analysis. L is the number of
// embedding nodes; the closed forms use L = h unless a caller overrides it.
struct FpParams {
  uint32_t m2;
  uint32_t k2;
  int r;
  int beta;
  int h;
  int L;

  FpParams(uint32_t m2_, uint32_t k2_, int r_, int beta_, int h_, int L_ = 0);
};

// Pr(alpha): probability that exactly alpha bits are lit after k2*L
// uniform index draws into an m2-bit filter. Zero outside
// [1, min(m2, k2*L)]. Evaluated with exact big-integer arithmetic for
// small draw counts and a log-domain Stirling recurrence beyond that.
double pr_alpha(uint32_t alpha, uint32_t m2, uint32_t k2, int L);

// Pr(alpha) for every alpha in [0, min(m2, k2*L)] (index = alpha).
std::vector<double> alpha_distribution(uint32_t m2, uint32_t k2, int L);

// p1 = (alpha/m2)^k2 and p2 = 1 - p1.
std::pair<double, double> collision_probs(uint32_t alpha, uint32_t m2, uint32_t k2);

// Exact count of single-substitution alternatives of a valid sequence:
// positions are scanned with a three-point window (implicit RSU anchor on
// the left), counting the admissible values each position could take.
uint32_t c_x1(const SegmentSequence& seq, int beta, int r);

// Brute force over every (position, value) substitution, validated with
// validate_sequence. Ground truth for c_x1.
uint32_t c_x1_oracle(const SegmentSequence& seq, int beta, int r);

// Lower bound on C_{x,j} for j >= 2: sum_{l=1}^{C_{x,1}} C(L(r-1)-l, j-1).
double c_xj_lower(uint32_t c_x1_value, int L, int r, int j);
double log_c_xj_lower(uint32_t c_x1_value, int L, int r, int j);

// The extra-recovery count table: one row per sequence in P_beta, columns
// j in [1, L(r-1)]. Column 1 is exact; columns j >= 2 use the lower bound.
class CTable {
 public:
  CTable(int L, int beta, int r, std::vector<SegmentSequence> sequences,
         std::vector<uint32_t> c1);

  int L() const { return L_; }
  int beta() const { return beta_; }
  int r() const { return r_; }
  std::size_t rows() const { return sequences_.size(); }
  int false_pairs() const { return L_ * (r_ - 1); }  // |F|

  const SegmentSequence& sequence(std::size_t row) const { return sequences_[row]; }
  uint32_t c_x1_of(std::size_t row) const { return c1_[row]; }
  double entry(std::size_t row, int j) const;  // C_{x,j}

  double column_sum(int j) const;      // C_j
  double log_column_sum(int j) const;  // ln C_j, -inf when C_j = 0

  Bytes to_csv() const;

 private:
  int L_, beta_, r_;
  std::vector<SegmentSequence> sequences_;
  std::vector<uint32_t> c1_;
  std::vector<double> log_col_;  // index j-1
};

inline constexpr uint64_t kDefaultSequenceCap = 1u << 21;

// Enumerates P_beta and fills the table. Throws ResourceLimitError when
// |P_beta| exceeds the cap.
CTable build_c_table(int L, int beta, int r, uint64_t cap = kDefaultSequenceCap);

// Theorem closed form, conditioned on alpha lit bits:
//   (1/|P_beta|) sum_j p1^j p2^(|F|-j) C_j,
// clamped to [0,1]. A lower bound by construction of the C_j.
double conditional_fp(uint32_t alpha, const FpParams& params, const CTable& table);

// Averaged objective: sum_alpha Pr(alpha) * conditional_fp(alpha).
double expected_fp(const FpParams& params, const CTable& table);

struct OptimizeResult {
  uint32_t k2_star = 1;
  double objective = 0.0;
  std::vector<std::pair<uint32_t, double>> curve;  // (k2, expected_fp)
};

// Full scan over k2 in [1, m2]; ties break toward smaller k2. When
// `descent` is set, a +-1 hill descent from the standard seed point is
// used instead of the scan (may return a local minimum).
OptimizeResult optimize_k2(uint32_t m2, int L, int beta, int r, bool descent = false,
                           uint64_t cap = kDefaultSequenceCap);

// Standard sizing rule for the edge filter: round(m1/n * ln 2) in [1, m1].
uint32_t optimal_k1(uint32_t m1, uint32_t edge_count);

// Number of times an analysis probability needed clamping into [0,1].
uint64_t fp_clamp_count();
void reset_fp_clamp_count();

}  // namespace clbf
