#include "clbf/netsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "clbf/embed.hpp"
#include "clbf/errors.hpp"
#include "clbf/packet.hpp"
#include "clbf/recovery.hpp"

namespace clbf {

namespace {

// Abstract cost units so delay reports are machine independent: one unit
// per derived hash index; a block-cipher call on the GPS baseline costs
// kKeyedPrimitiveCost; codecs cost one unit per processed bit.
constexpr double kKeyedPrimitiveCost = 32.0;

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Bytes random_key(std::mt19937_64& rng) {
  Bytes key(16, '\0');
  for (int i = 0; i < 16; ++i) key[i] = char(rng() & 0xFF);
  return key;
}

// Vehicles v001..v(N-1) with keys drawn from a dedicated setup stream, so
// the key material is a pure function of the master seed.
KeyStore build_keystore(int n_nodes, uint64_t master_seed) {
  KeyStore ks;
  ks.rsu_id = "rsu";
  std::mt19937_64 rng = trial_rng(master_seed, 0xC0FFEE);
  for (int i = 1; i < n_nodes; ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "v%03d", i);
    ks.vehicles[name] = NodeCredentials{name, random_key(rng)};
  }
  return ks;
}

std::vector<Bytes> vehicle_ids(const KeyStore& ks) {
  std::vector<Bytes> ids;
  ids.reserve(ks.vehicles.size());
  for (const auto& [id, creds] : ks.vehicles) ids.push_back(id);
  return ids;
}

template <typename TrialFn>
void run_trials(uint64_t trials, TrialFn&& fn) {
  const unsigned threads =
      std::max(1u, std::min<unsigned>(default_thread_count(), unsigned(std::min<uint64_t>(trials, 256))));
  if (threads <= 1) {
    for (uint64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (uint64_t t = w; t < trials; t += threads) fn(t);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

std::mt19937_64 trial_rng(uint64_t master_seed, uint64_t stream_id) {
  return std::mt19937_64(splitmix64(master_seed ^ splitmix64(stream_id)));
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CLBF_THREADS")) {
    const long n = std::atol(env);
    if (n >= 1) return unsigned(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

BinomialCi wilson_interval(uint64_t successes, uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void ScenarioConfig::validate() const {
  if (N < 2) throw std::invalid_argument("need at least one vehicle and the RSU");
  if (h < 1 || h > N - 1) throw std::invalid_argument("hop length must satisfy 1 <= h <= N-1");
  if (r < 1) throw std::invalid_argument("segment count must be positive");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  if (!(segment_length_m > 0)) throw std::invalid_argument("segment length must be positive");
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("filter sizes must be positive");
  if (k1 < 1 || k1 > m1) throw std::invalid_argument("k1 must satisfy 1 <= k1 <= m1");
  if (k2 < 1 || k2 > m2) throw std::invalid_argument("k2 must satisfy 1 <= k2 <= m2");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (placement == Placement::kFixed) {
    if (int(fixed_segments.size()) != h)
      throw std::invalid_argument("fixed placement needs one segment per embedding node");
    if (!validate_sequence(SegmentSequence(fixed_segments), beta, r))
      throw std::invalid_argument("fixed placement violates the sequence constraints");
  }
}

SequenceSampler::SequenceSampler(int L, int beta, int r) : L_(L), beta_(beta), r_(r) {
  if (L < 1) throw std::invalid_argument("sequence length must be positive");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  ways_.assign(L, std::vector<double>(r + 2, 0.0));
  for (int v = 1; v <= r; ++v) ways_[L - 1][v] = 1.0;
  for (int t = L - 2; t >= 0; --t)
    for (int v = 1; v <= r; ++v) {
      double acc = 0.0;
      for (int w = v; w <= std::min(r, v + beta); ++w) acc += ways_[t + 1][w];
      ways_[t][v] = acc;
    }
}

SegmentSequence SequenceSampler::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<int> values;
  values.reserve(L_);
  int prev = 1;  // RSU anchor segment
  for (int t = 0; t < L_; ++t) {
    const int lo = prev;
    const int hi = std::min(r_, prev + beta_);
    double total = 0.0;
    for (int v = lo; v <= hi; ++v) total += ways_[t][v];
    double target = uni(rng) * total;
    int chosen = hi;
    for (int v = lo; v <= hi; ++v) {
      target -= ways_[t][v];
      if (target <= 0.0) {
        chosen = v;
        break;
      }
    }
    values.push_back(chosen);
    prev = chosen;
  }
  return SegmentSequence(std::move(values));
}

SegmentSequence draw_spatial_map(int L, int beta, int r, std::mt19937_64& rng) {
  return SequenceSampler(L, beta, r).sample(rng);
}

SimReport simulate_fp_rate(const ScenarioConfig& cfg) {
  cfg.validate();
  const KeyStore ks = build_keystore(cfg.N, cfg.master_seed);
  const std::vector<Bytes> vehicles = vehicle_ids(ks);
  const int L = cfg.h;
  const SequenceSampler sampler(L, cfg.beta, cfg.r);

  // Path node j (0 = source) sits at canonical position L-1-j.
  std::vector<Bytes> path(vehicles.begin(), vehicles.begin() + cfg.h);
  const Bytes source = path.front();

  std::atomic<uint64_t> fp_count{0}, inconsistent{0}, popcount_sum{0};

  run_trials(cfg.trials, [&](uint64_t t) {
    std::mt19937_64 rng = trial_rng(cfg.master_seed, t + 1);
    SegmentSequence seq = cfg.placement == ScenarioConfig::Placement::kFixed
                              ? SegmentSequence(cfg.fixed_segments)
                              : sampler.sample(rng);

    ClbfPacket pkt(make_pid(splitmix64(cfg.master_seed) ^ t), cfg.m1, cfg.m2, cfg.payload);
    for (int j = 0; j < cfg.h; ++j) {
      const std::optional<Bytes> prev =
          j == 0 ? std::nullopt : std::optional<Bytes>(path[j - 1]);
      forward_step(pkt, ks.credentials_of(path[j]), prev, seq[size_t(L) - 1 - j], cfg.k1,
                   cfg.k2);
    }
    embed_rsu_edge(pkt, ks.credentials_of(path.back()), ks.rsu_id, cfg.k1);

    popcount_sum.fetch_add(pkt.bf2.popcount(), std::memory_order_relaxed);
    try {
      const RecoveryOutcome outcome = recover(pkt, ks, source, cfg.r, cfg.beta, cfg.k1, cfg.k2);
      if (!outcome.unique()) fp_count.fetch_add(1, std::memory_order_relaxed);
    } catch (const InconsistentProvenanceError&) {
      inconsistent.fetch_add(1, std::memory_order_relaxed);
    }
  });

  SimReport rep;
  rep.trials = cfg.trials;
  rep.fp_count = fp_count.load();
  rep.inconsistent_count = inconsistent.load();
  rep.fp_rate = double(rep.fp_count) / double(cfg.trials);
  const BinomialCi ci = wilson_interval(rep.fp_count, cfg.trials);
  rep.ci_lo = ci.lo;
  rep.ci_hi = ci.hi;
  rep.avg_provenance_bits = double(cfg.m1 + cfg.m2);
  rep.avg_packet_bits =
      8.0 * double(ClbfPacket(make_pid(0), cfg.m1, cfg.m2, cfg.payload).serialize().size());
  rep.avg_sparsity = double(popcount_sum.load()) / (double(cfg.trials) * cfg.m2);
  rep.delay_units = double(cfg.h) * (double(cfg.k1) + double(cfg.k2));
  rep.master_seed = cfg.master_seed;
  return rep;
}

SimReport gps_baseline(int h, std::size_t payload_bytes) {
  if (h < 1) throw std::invalid_argument("hop length must be positive");
  SimReport rep;
  rep.trials = 0;
  // After node t appends its 16-byte blob the provenance is 16t bytes;
  // averaging over the h hop states gives 16(h+1)/2 bytes.
  rep.avg_provenance_bits = 8.0 * 16.0 * double(h + 1) / 2.0;
  rep.avg_packet_bits = 8.0 * double(payload_bytes) + rep.avg_provenance_bits;
  rep.delay_units = double(h) * kKeyedPrimitiveCost;
  rep.master_seed = 0;
  return rep;
}

SimReport simulate_compressed_flow(const ScenarioConfig& cfg,
                                   std::optional<CompressionScheme> codec) {
  cfg.validate();
  const KeyStore ks = build_keystore(cfg.N, cfg.master_seed);
  const std::vector<Bytes> vehicles = vehicle_ids(ks);
  const int L = cfg.h;
  const SequenceSampler sampler(L, cfg.beta, cfg.r);
  std::vector<Bytes> path(vehicles.begin(), vehicles.begin() + cfg.h);

  std::atomic<uint64_t> popcount_sum{0};
  std::atomic<uint64_t> compressed_bits_sum{0};
  std::atomic<uint64_t> codec_bit_ops{0};

  run_trials(cfg.trials, [&](uint64_t t) {
    std::mt19937_64 rng = trial_rng(cfg.master_seed, t + 1);
    SegmentSequence seq = cfg.placement == ScenarioConfig::Placement::kFixed
                              ? SegmentSequence(cfg.fixed_segments)
                              : sampler.sample(rng);

    ClbfPacket pkt(make_pid(splitmix64(cfg.master_seed) ^ t), cfg.m1, cfg.m2, cfg.payload);
    uint64_t pops = 0, cbits = 0, ops = 0;
    for (int j = 0; j < cfg.h; ++j) {
      if (codec && j > 0) {
        // Receive side: decompress the provenance before embedding.
        ops += cfg.m2;
      }
      embed_segment(pkt, ks.credentials_of(path[j]), seq[size_t(L) - 1 - j], cfg.k2);
      ++pkt.hop_counter;
      pops += pkt.bf2.popcount();
      if (codec) {
        const CompressedBits c = compress(pkt.bf2.bits(), *codec);
        const BitVec back = decompress(c);
        if (!(back == pkt.bf2.bits()))
          throw DecodeError("codec roundtrip failed inside compressed flow");
        cbits += c.size_bits();
        ops += cfg.m2;
      } else {
        cbits += cfg.m2;
      }
    }
    popcount_sum.fetch_add(pops, std::memory_order_relaxed);
    compressed_bits_sum.fetch_add(cbits, std::memory_order_relaxed);
    codec_bit_ops.fetch_add(ops, std::memory_order_relaxed);
  });

  SimReport rep;
  rep.trials = cfg.trials;
  rep.master_seed = cfg.master_seed;
  rep.avg_sparsity = double(popcount_sum.load()) / (double(cfg.trials) * cfg.h * cfg.m2);
  rep.avg_provenance_bits = double(compressed_bits_sum.load()) / (double(cfg.trials) * cfg.h);
  rep.avg_packet_bits = rep.avg_provenance_bits + 8.0 * double(cfg.payload.size());
  rep.delay_units = double(cfg.h) * double(cfg.k2) +
                    double(codec_bit_ops.load()) / double(cfg.trials);
  return rep;
}

void DictTimingConfig::validate() const {
  if (!(tau_b > 0)) throw std::invalid_argument("broadcast interval must be positive");
  if (tau_t < 0 || tau_d < 0) throw std::invalid_argument("delays cannot be negative");
  if (!(lambda_p > 0)) throw std::invalid_argument("packet rate must be positive");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
}

PfailReport dict_pfail(const DictTimingConfig& cfg) {
  cfg.validate();
  std::atomic<uint64_t> failures{0};
  const double tau_p = 1.0 / cfg.lambda_p;

  run_trials(cfg.trials, [&](uint64_t t) {
    std::mt19937_64 rng = trial_rng(cfg.master_seed, t + 1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double tau_l = uni(rng) * cfg.tau_b;
    double tau_a;
    if (cfg.arrival_model == DictTimingConfig::Arrival::kUniform) {
      tau_a = uni(rng) * tau_p;
    } else {
      tau_a = -std::log1p(-uni(rng)) * tau_p;  // Exp(lambda_p)
    }
    if (tau_l + cfg.tau_t + cfg.tau_d > tau_a) failures.fetch_add(1, std::memory_order_relaxed);
  });

  PfailReport rep;
  rep.trials = cfg.trials;
  rep.failures = failures.load();
  rep.p_fail = double(rep.failures) / double(cfg.trials);
  const BinomialCi ci = wilson_interval(rep.failures, cfg.trials);
  rep.ci_lo = ci.lo;
  rep.ci_hi = ci.hi;
  return rep;
}

Bytes JammerVerdict::describe() const {
  switch (kind) {
    case Kind::kNone:
      return "none";
    case Kind::kBeyond:
      return "beyond A" + std::to_string(last_reachable_left);
    case Kind::kExact:
      return "A" + std::to_string(jammed_segment);
  }
  return "none";
}

JammerVerdict jammer_scenario(const JammerTopology& topology, int jammed_segment,
                              bool dual_rsu) {
  const int r = topology.r;
  if (r < 2) throw std::invalid_argument("need at least two segments");
  if (topology.beta < 1 || topology.beta > r)
    throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  if (jammed_segment == 1 || (dual_rsu && jammed_segment == r))
    throw std::invalid_argument("jammer in an RSU segment is a rejected configuration");
  if (jammed_segment < 0 || jammed_segment > r)
    throw std::invalid_argument("jammed segment outside [1, r]");

  std::vector<bool> occupied(r + 1, topology.occupied_segments.empty());
  for (int s : topology.occupied_segments) {
    if (s < 1 || s > r) throw std::invalid_argument("occupied segment outside [1, r]");
    occupied[s] = true;
  }

  auto usable = [&](int s) { return occupied[s] && s != jammed_segment; };

  // Highest segment reachable from the A1-side RSU through usable relays.
  int left = 1;
  for (int s = 2; s <= r; ++s) {
    if (s - left > topology.beta) break;
    if (usable(s)) left = s;
  }

  JammerVerdict verdict;
  verdict.last_reachable_left = left;
  if (jammed_segment == 0 || left == r) {
    verdict.kind = JammerVerdict::Kind::kNone;
    return verdict;
  }
  if (!dual_rsu) {
    verdict.kind = JammerVerdict::Kind::kBeyond;
    return verdict;
  }

  int right = r;
  for (int s = r - 1; s >= 1; --s) {
    if (right - s > topology.beta) break;
    if (usable(s)) right = s;
  }
  verdict.last_reachable_right = right;
  if (right - left == 2) {
    verdict.kind = JammerVerdict::Kind::kExact;
    verdict.jammed_segment = left + 1;
  } else {
    verdict.kind = JammerVerdict::Kind::kBeyond;
  }
  return verdict;
}

}  // namespace clbf
