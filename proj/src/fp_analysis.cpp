#include "clbf/fp_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "clbf/errors.hpp"

namespace clbf {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exact evaluation of the alternating occupancy sum stays affordable up to
// this many index draws; larger draw counts switch to the log-domain
// surjection recurrence.
constexpr uint32_t kExactMaxDraws = 300;

std::atomic<uint64_t> g_clamp_count{0};

double clamp_probability(double v) {
  if (v > 1.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    return 1.0;
  }
  if (v < 0.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return v;
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

double log_of(const cpp_int& x) {
  const std::size_t b = boost::multiprecision::msb(x);
  if (b <= 62) return std::log(x.convert_to<double>());
  const cpp_int top = x >> (b - 62);
  return std::log(top.convert_to<double>()) + double(b - 62) * std::numbers::ln2;
}

double ratio_to_double(const cpp_int& num, const cpp_int& den) {
  if (num == 0) return 0.0;
  return std::exp(log_of(num) - log_of(den));
}

cpp_int binom_exact(uint32_t n, uint32_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  cpp_int v = 1;
  for (uint32_t i = 1; i <= k; ++i) {
    v *= (n - k + i);
    v /= i;
  }
  return v;
}

// C(n, k) as a double: exact product for anything that fits, +inf on
// overflow.
double binom_d(uint64_t n, uint64_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double v = 1.0;
  for (uint64_t i = 1; i <= k; ++i) {
    v *= double(n - k + i) / double(i);
    if (std::isinf(v)) return v;
  }
  return v;
}

double log_binom(uint64_t n, uint64_t k) {
  if (k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
         std::lgamma(double(n - k) + 1);
}

// ln of the number of draw sequences of length n covering exactly a
// specific cells: surj(n, a) = a * (surj(n-1, a) + surj(n-1, a-1)).
class SurjectionLogTable {
 public:
  SurjectionLogTable(uint32_t n_max, uint32_t a_max)
      : a_max_(a_max), rows_(n_max + 1, std::vector<double>(a_max + 1, kNegInf)) {
    rows_[0][0] = 0.0;
    for (uint32_t n = 1; n <= n_max; ++n) {
      const std::vector<double>& prev = rows_[n - 1];
      std::vector<double>& cur = rows_[n];
      const uint32_t hi = std::min(n, a_max);
      for (uint32_t a = 1; a <= hi; ++a)
        cur[a] = std::log(double(a)) + log_add(prev[a], prev[a - 1]);
    }
  }

  double ln_surj(uint32_t n, uint32_t a) const {
    if (a > a_max_ || a > n) return kNegInf;
    return rows_[n][a];
  }

 private:
  uint32_t a_max_;
  std::vector<std::vector<double>> rows_;
};

void check_alpha_params(uint32_t m2, uint32_t k2, int L) {
  if (m2 < 1) throw std::invalid_argument("m2 must be positive");
  if (k2 < 1 || k2 > m2) throw std::invalid_argument("k2 must satisfy 1 <= k2 <= m2");
  if (L < 1) throw std::invalid_argument("L must be positive");
}

std::vector<double> alpha_distribution_exact(uint32_t m2, uint32_t draws) {
  const uint32_t a_max = std::min(m2, draws);
  std::vector<cpp_int> pow_cache(a_max + 1);
  for (uint32_t t = 0; t <= a_max; ++t)
    pow_cache[t] = boost::multiprecision::pow(cpp_int(t), draws);
  const cpp_int den = boost::multiprecision::pow(cpp_int(m2), draws);

  std::vector<double> pr(a_max + 1, 0.0);
  for (uint32_t alpha = 1; alpha <= a_max; ++alpha) {
    cpp_int sum = 0;
    for (uint32_t gamma = 0; gamma <= alpha; ++gamma) {
      const cpp_int term = binom_exact(alpha, gamma) * pow_cache[alpha - gamma];
      if (gamma & 1)
        sum -= term;
      else
        sum += term;
    }
    pr[alpha] = ratio_to_double(binom_exact(m2, alpha) * sum, den);
  }
  return pr;
}

std::vector<double> alpha_distribution_log(uint32_t m2, uint32_t draws,
                                           const SurjectionLogTable* shared) {
  const uint32_t a_max = std::min(m2, draws);
  const SurjectionLogTable local =
      shared ? SurjectionLogTable(0, 0) : SurjectionLogTable(draws, a_max);
  const SurjectionLogTable& table = shared ? *shared : local;

  const double ln_m2_draws = double(draws) * std::log(double(m2));
  std::vector<double> pr(a_max + 1, 0.0);
  double ln_fact = 0.0;  // ln(alpha!)
  for (uint32_t alpha = 1; alpha <= a_max; ++alpha) {
    ln_fact += std::log(double(alpha));
    const double ln_pr =
        log_binom(m2, alpha) + ln_fact + table.ln_surj(draws, alpha) - ln_m2_draws;
    pr[alpha] = std::exp(ln_pr);
  }
  return pr;
}

std::vector<double> alpha_distribution_impl(uint32_t m2, uint32_t k2, int L,
                                            const SurjectionLogTable* shared) {
  check_alpha_params(m2, k2, L);
  const uint64_t draws64 = uint64_t(k2) * uint64_t(L);
  if (draws64 > 0xFFFFFFFFull) throw std::invalid_argument("k2*L too large");
  const uint32_t draws = uint32_t(draws64);
  if (draws <= kExactMaxDraws && !shared) return alpha_distribution_exact(m2, draws);
  return alpha_distribution_log(m2, draws, shared);
}

}  // namespace

FpParams::FpParams(uint32_t m2_, uint32_t k2_, int r_, int beta_, int h_, int L_)
    : m2(m2_), k2(k2_), r(r_), beta(beta_), h(h_), L(L_ ? L_ : h_) {
  check_alpha_params(m2, k2, L);
  if (r < 1) throw std::invalid_argument("r must be positive");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  if (h < 1) throw std::invalid_argument("h must be positive");
}

double pr_alpha(uint32_t alpha, uint32_t m2, uint32_t k2, int L) {
  check_alpha_params(m2, k2, L);
  const uint64_t draws = uint64_t(k2) * uint64_t(L);
  if (alpha < 1 || alpha > std::min<uint64_t>(m2, draws)) return 0.0;
  return alpha_distribution_impl(m2, k2, L, nullptr)[alpha];
}

std::vector<double> alpha_distribution(uint32_t m2, uint32_t k2, int L) {
  return alpha_distribution_impl(m2, k2, L, nullptr);
}

std::pair<double, double> collision_probs(uint32_t alpha, uint32_t m2, uint32_t k2) {
  if (m2 < 1) throw std::invalid_argument("m2 must be positive");
  if (alpha > m2) throw std::invalid_argument("alpha cannot exceed m2");
  const double p1 = std::pow(double(alpha) / double(m2), double(k2));
  return {p1, 1.0 - p1};
}

uint32_t c_x1(const SegmentSequence& seq, int beta, int r) {
  if (!validate_sequence(seq, beta, r))
    throw std::invalid_argument("c_x1 requires a valid sequence");
  const int L = int(seq.size());
  uint32_t count = 0;
  for (int t = 0; t < L; ++t) {
    const int left = (t == 0) ? 1 : seq[t - 1];
    int lo, hi;
    if (t + 1 < L) {
      lo = std::max(left, seq[t + 1] - beta);
      hi = std::min(left + beta, seq[t + 1]);
    } else {
      lo = left;
      hi = std::min(left + beta, r);
    }
    count += uint32_t(hi - lo);  // interval size minus the current value
  }
  return count;
}

uint32_t c_x1_oracle(const SegmentSequence& seq, int beta, int r) {
  if (!validate_sequence(seq, beta, r))
    throw std::invalid_argument("c_x1_oracle requires a valid sequence");
  uint32_t count = 0;
  SegmentSequence probe = seq;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    for (int v = 1; v <= r; ++v) {
      if (v == seq[t]) continue;
      probe.values[t] = v;
      if (validate_sequence(probe, beta, r)) ++count;
    }
    probe.values[t] = seq[t];
  }
  return count;
}

double c_xj_lower(uint32_t c_x1_value, int L, int r, int j) {
  if (j < 2) throw std::invalid_argument("the C_{x,j} bound applies to j >= 2");
  if (L < 1 || r < 2) throw std::invalid_argument("need L >= 1 and r >= 2");
  const uint64_t F = uint64_t(L) * uint64_t(r - 1);
  double sum = 0.0;
  for (uint32_t l = 1; l <= c_x1_value; ++l) sum += binom_d(F - l, uint32_t(j) - 1);
  return sum;
}

double log_c_xj_lower(uint32_t c_x1_value, int L, int r, int j) {
  if (j < 2) throw std::invalid_argument("the C_{x,j} bound applies to j >= 2");
  const uint64_t F = uint64_t(L) * uint64_t(r - 1);
  double acc = kNegInf;
  for (uint32_t l = 1; l <= c_x1_value; ++l) acc = log_add(acc, log_binom(F - l, uint32_t(j) - 1));
  return acc;
}

CTable::CTable(int L, int beta, int r, std::vector<SegmentSequence> sequences,
               std::vector<uint32_t> c1)
    : L_(L), beta_(beta), r_(r), sequences_(std::move(sequences)), c1_(std::move(c1)) {
  if (sequences_.size() != c1_.size()) throw std::invalid_argument("row size mismatch");
  const int F = false_pairs();

  // n_ge[l] = number of rows with C_{x,1} >= l; the column sums only
  // depend on this profile:  C_j = sum_l n_ge[l] * C(|F|-l, j-1).
  uint32_t c1_max = 0;
  for (uint32_t c : c1_) c1_max = std::max(c1_max, c);
  std::vector<uint64_t> n_ge(c1_max + 1, 0);
  for (uint32_t c : c1_)
    for (uint32_t l = 1; l <= c; ++l) ++n_ge[l];

  log_col_.assign(F, kNegInf);
  for (int j = 1; j <= F; ++j) {
    double acc = kNegInf;
    for (uint32_t l = 1; l <= c1_max; ++l) {
      if (!n_ge[l]) continue;
      acc = log_add(acc, std::log(double(n_ge[l])) + log_binom(uint64_t(F) - l, uint64_t(j) - 1));
    }
    log_col_[j - 1] = acc;
  }
}

double CTable::entry(std::size_t row, int j) const {
  if (j < 1 || j > false_pairs()) throw std::invalid_argument("column outside [1, |F|]");
  if (j == 1) return double(c1_[row]);
  return c_xj_lower(c1_[row], L_, r_, j);
}

double CTable::column_sum(int j) const { return std::exp(log_column_sum(j)); }

double CTable::log_column_sum(int j) const {
  if (j < 1 || j > false_pairs()) throw std::invalid_argument("column outside [1, |F|]");
  return log_col_[j - 1];
}

Bytes CTable::to_csv() const {
  std::ostringstream os;
  os << "sequence";
  for (int j = 1; j <= false_pairs(); ++j) os << ",j" << j;
  os << "\n";
  char buf[32];
  for (std::size_t row = 0; row < rows(); ++row) {
    os << '"';
    for (std::size_t i = 0; i < sequences_[row].size(); ++i) {
      if (i) os << ',';
      os << sequences_[row][i];
    }
    os << '"';
    for (int j = 1; j <= false_pairs(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", entry(row, j));
      os << ',' << buf;
    }
    os << "\n";
  }
  os << "\"total\"";
  for (int j = 1; j <= false_pairs(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", column_sum(j));
    os << ',' << buf;
  }
  os << "\n";
  return os.str();
}

CTable build_c_table(int L, int beta, int r, uint64_t cap) {
  if (r < 2) throw std::invalid_argument("the extra-recovery table needs r >= 2");
  if (cap && count_valid_sequences(L, beta, r) > cap)
    throw ResourceLimitError("|P_beta| exceeds the table cap; reduce L or beta");
  std::vector<SegmentSequence> seqs = enumerate_valid_sequences(L, beta, r, cap);
  std::vector<uint32_t> c1;
  c1.reserve(seqs.size());
  for (const SegmentSequence& s : seqs) c1.push_back(c_x1(s, beta, r));
  return CTable(L, beta, r, std::move(seqs), std::move(c1));
}

double conditional_fp(uint32_t alpha, const FpParams& params, const CTable& table) {
  if (params.L != table.L() || params.beta != table.beta() || params.r != table.r())
    throw std::invalid_argument("table was built for different (L, beta, r)");
  const auto [p1, p2] = collision_probs(std::min(alpha, params.m2), params.m2, params.k2);
  const int F = table.false_pairs();
  const double ln_rows = std::log(double(table.rows()));

  if (p1 <= 0.0) return 0.0;
  if (p2 <= 0.0) return clamp_probability(std::exp(table.log_column_sum(F) - ln_rows));

  const double lp1 = std::log(p1);
  const double lp2 = std::log1p(-p1);
  double acc = kNegInf;
  for (int j = 1; j <= F; ++j) {
    const double lc = table.log_column_sum(j);
    if (lc == kNegInf) continue;
    acc = log_add(acc, double(j) * lp1 + double(F - j) * lp2 + lc);
  }
  if (acc == kNegInf) return 0.0;
  return clamp_probability(std::exp(acc - ln_rows));
}

namespace {

double expected_fp_impl(const FpParams& params, const CTable& table,
                        const SurjectionLogTable* shared) {
  const std::vector<double> pr =
      alpha_distribution_impl(params.m2, params.k2, params.L, shared);
  double total = 0.0;
  for (uint32_t alpha = 1; alpha < pr.size(); ++alpha) {
    if (pr[alpha] == 0.0) continue;
    total += pr[alpha] * conditional_fp(alpha, params, table);
  }
  return clamp_probability(total);
}

}  // namespace

double expected_fp(const FpParams& params, const CTable& table) {
  return expected_fp_impl(params, table, nullptr);
}

OptimizeResult optimize_k2(uint32_t m2, int L, int beta, int r, bool descent, uint64_t cap) {
  if (m2 < 1) throw std::invalid_argument("m2 must be positive");
  const CTable table = build_c_table(L, beta, r, cap);

  const uint64_t max_draws = uint64_t(m2) * uint64_t(L);
  std::unique_ptr<SurjectionLogTable> shared;
  if (max_draws > kExactMaxDraws)
    shared = std::make_unique<SurjectionLogTable>(uint32_t(max_draws),
                                                  uint32_t(std::min<uint64_t>(m2, max_draws)));

  auto objective = [&](uint32_t k2) {
    const FpParams p(m2, k2, r, beta, 1, L);
    const uint64_t draws = uint64_t(k2) * uint64_t(L);
    return expected_fp_impl(p, table, draws > kExactMaxDraws ? shared.get() : nullptr);
  };

  OptimizeResult res;
  if (!descent) {
    res.objective = std::numeric_limits<double>::infinity();
    for (uint32_t k2 = 1; k2 <= m2; ++k2) {
      const double v = objective(k2);
      res.curve.emplace_back(k2, v);
      if (v < res.objective) {
        res.objective = v;
        res.k2_star = k2;
      }
    }
    return res;
  }

  // +-1 hill descent from the standard single-filter seed point.
  std::map<uint32_t, double> seen;
  auto eval = [&](uint32_t k2) {
    auto it = seen.find(k2);
    if (it != seen.end()) return it->second;
    const double v = objective(k2);
    seen.emplace(k2, v);
    return v;
  };
  uint32_t k2 = std::clamp<uint32_t>(
      uint32_t(std::lround(double(m2) / double(L) * std::numbers::ln2)), 1, m2);
  double best = eval(k2);
  for (;;) {
    uint32_t next = k2;
    if (k2 > 1 && eval(k2 - 1) < best) next = k2 - 1;
    if (k2 < m2 && eval(k2 + 1) < eval(next)) next = k2 + 1;
    if (next == k2) break;
    k2 = next;
    best = eval(k2);
  }
  res.k2_star = k2;
  res.objective = best;
  for (const auto& [kk, vv] : seen) res.curve.emplace_back(kk, vv);
  return res;
}

uint32_t optimal_k1(uint32_t m1, uint32_t edge_count) {
  if (m1 < 1 || edge_count < 1)
    throw std::invalid_argument("optimal_k1 needs m1 >= 1 and edge_count >= 1");
  const long k = std::lround(double(m1) / double(edge_count) * std::numbers::ln2);
  return uint32_t(std::clamp<long>(k, 1, long(m1)));
}

uint64_t fp_clamp_count() { return g_clamp_count.load(std::memory_order_relaxed); }
void reset_fp_clamp_count() { g_clamp_count.store(0, std::memory_order_relaxed); }

}  // namespace clbf
