#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "clbf/bits.hpp"
#include "clbf/compress.hpp"
#include "clbf/credentials.hpp"
#include "clbf/segment_model.hpp"

namespace clbf {

inline constexpr uint64_t kDefaultMasterSeed = 0x5eed0c1bf0000001ULL;

// Deterministic per-trial stream derived from the master seed; trials can
// run in any order or thread without changing results.
std::mt19937_64 trial_rng(uint64_t master_seed, uint64_t stream_id);

// Worker count for trial-parallel loops: CLBF_THREADS when set, otherwise
// the hardware concurrency.
unsigned default_thread_count();

// 95% Wilson score interval for a binomial proportion.
struct BinomialCi {
  double lo;
  double hi;
  double half_width() const { return (hi - lo) / 2; }
};
BinomialCi wilson_interval(uint64_t successes, uint64_t trials, double z = 1.959963984540054);

struct ScenarioConfig {
  int N;
  int h;
  int r;
  int beta;
  double segment_length_m = 100.0;
  uint32_t m1;
  uint32_t m2;
  uint32_t k1;
  uint32_t k2;
  uint64_t trials = 100000;
  uint64_t master_seed = kDefaultMasterSeed;

  enum class Placement { kUniformValid, kFixed };
  Placement placement = Placement::kUniformValid;
  std::vector<int> fixed_segments;  // canonical orientation, used with kFixed

  Bytes payload;

  void validate() const;
};

struct SimReport {
  uint64_t trials = 0;
  uint64_t fp_count = 0;
  uint64_t inconsistent_count = 0;
  double fp_rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double avg_packet_bits = 0.0;
  double avg_provenance_bits = 0.0;
  double avg_sparsity = 0.0;
  double delay_units = 0.0;
  uint64_t master_seed = 0;

  double ci_half_width() const { return (ci_hi - ci_lo) / 2; }
};

// Uniform draw from P_beta without materializing it (suffix-count
// sampling).
class SequenceSampler {
 public:
  SequenceSampler(int L, int beta, int r);
  SegmentSequence sample(std::mt19937_64& rng) const;

 private:
  int L_, beta_, r_;
  std::vector<std::vector<double>> ways_;  // ways_[t][v]
};

SegmentSequence draw_spatial_map(int L, int beta, int r, std::mt19937_64& rng);

// End-to-end Monte Carlo of the embed -> recover -> classify pipeline;
// fp_rate estimates the probability of a FalsePositive outcome.
SimReport simulate_fp_rate(const ScenarioConfig& cfg);

// Per-node appending of a 16-byte encrypted location blob (7-byte
// plaintext padded by the block primitive).
SimReport gps_baseline(int h, std::size_t payload_bytes);

// Per-hop decompress -> embed segment -> compress pipeline over BF2.
// A disengaged codec reports the uncompressed filter size.
SimReport simulate_compressed_flow(const ScenarioConfig& cfg,
                                   std::optional<CompressionScheme> codec);

struct DictTimingConfig {
  double tau_b;   // broadcast interval, seconds
  double tau_t;   // transmission + propagation delay
  double tau_d;   // parse/cache delay
  double lambda_p;  // packets per second
  enum class Arrival { kUniform, kPoisson };
  Arrival arrival_model = Arrival::kUniform;
  uint64_t trials = 100000;
  uint64_t master_seed = kDefaultMasterSeed;

  void validate() const;
};

struct PfailReport {
  uint64_t trials = 0;
  uint64_t failures = 0;
  double p_fail = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// Monte-Carlo estimate of Pr(tau_l + tau_t + tau_d > tau_a).
PfailReport dict_pfail(const DictTimingConfig& cfg);

struct JammerTopology {
  int r;
  int beta = 1;
  std::vector<int> occupied_segments;  // empty means every segment holds nodes
};

struct JammerVerdict {
  enum class Kind { kNone, kBeyond, kExact };
  Kind kind = Kind::kNone;
  int last_reachable_left = 0;   // highest segment the A1-side RSU still reaches
  int last_reachable_right = 0;  // dual mode: lowest segment the far RSU reaches
  int jammed_segment = 0;        // dual mode, when pinpointed

  Bytes describe() const;  // "none", "beyond A7", "A8"
};

// Deterministic segment-level reachability after disabling the jammed
// segment. jammed_segment = 0 means no jammer; segment 1 (the RSU's) is a
// rejected configuration.
JammerVerdict jammer_scenario(const JammerTopology& topology, int jammed_segment, bool dual_rsu);

}  // namespace clbf
