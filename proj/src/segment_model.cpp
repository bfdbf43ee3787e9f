#include "clbf/segment_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "clbf/errors.hpp"

namespace clbf {

SegmentSpace::SegmentSpace(int r_, double segment_length_m_, int beta_)
    : r(r_), segment_length_m(segment_length_m_), beta(beta_) {
  if (r < 1) throw std::invalid_argument("segment count must be positive");
  if (!(segment_length_m > 0)) throw std::invalid_argument("segment length must be positive");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
}

SegmentDictionary::SegmentDictionary(std::vector<Interval> intervals, int version)
    : intervals_(std::move(intervals)), version_(version) {
  if (intervals_.empty()) throw std::invalid_argument("dictionary needs at least one segment");
  double expect_lo = 0.0;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const Interval& iv = intervals_[i];
    if (iv.index != int(i) + 1) throw std::invalid_argument("segment indices must be 1..r in order");
    if (iv.lo != expect_lo) throw std::invalid_argument("intervals must be contiguous from 0");
    if (!(iv.hi > iv.lo)) throw std::invalid_argument("interval must be non-empty");
    expect_lo = iv.hi;
  }
}

SegmentDictionary SegmentDictionary::uniform(const SegmentSpace& space, int version) {
  std::vector<Interval> ivs;
  ivs.reserve(space.r);
  for (int i = 1; i <= space.r; ++i)
    ivs.push_back({i, (i - 1) * space.segment_length_m, i * space.segment_length_m});
  return SegmentDictionary(std::move(ivs), version);
}

int SegmentDictionary::segment_of(double position_m) const {
  if (!(position_m >= 0.0) || position_m >= coverage_length_m())
    throw OutOfCoverageError("position outside coverage area [0, L)");
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), position_m,
                             [](double p, const Interval& iv) { return p < iv.hi; });
  return it->index;
}

Bytes SegmentDictionary::serialize() const {
  std::ostringstream os;
  const double seg_len = intervals_.front().hi - intervals_.front().lo;
  char buf[64];
  std::snprintf(buf, sizeof buf, "r=%d seg_len=%.17g\n", r(), seg_len);
  os << buf;
  for (const Interval& iv : intervals_) {
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", iv.index, iv.lo, iv.hi);
    os << buf;
  }
  return os.str();
}

SegmentDictionary SegmentDictionary::parse(const Bytes& text, int version) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw DecodeError("empty dictionary");
  int r = 0;
  double seg_len = 0;
  if (std::sscanf(header.c_str(), "r=%d seg_len=%lg", &r, &seg_len) != 2 || r < 1)
    throw DecodeError("bad dictionary header");
  std::vector<Interval> ivs;
  ivs.reserve(r);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Interval iv{};
    if (std::sscanf(line.c_str(), "%d %lg %lg", &iv.index, &iv.lo, &iv.hi) != 3)
      throw DecodeError("bad dictionary line: " + line);
    ivs.push_back(iv);
  }
  if (int(ivs.size()) != r) throw DecodeError("dictionary row count does not match header");
  return SegmentDictionary(std::move(ivs), version);
}

int segment_of(double position_m, const SegmentDictionary& dict) {
  return dict.segment_of(position_m);
}

int SpatialMap::segment_of(const Bytes& node_id) const {
  auto it = assignment.find(node_id);
  if (it == assignment.end()) throw std::invalid_argument("node has no segment assignment");
  return it->second;
}

std::ostream& operator<<(std::ostream& os, const SegmentSequence& seq) {
  os << '(';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) os << ',';
    os << seq[i];
  }
  return os << ')';
}

bool validate_sequence(const SegmentSequence& seq, int beta, int r) {
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  if (seq.size() == 0) throw std::invalid_argument("sequence must be nonempty");
  for (int v : seq.values)
    if (v < 1 || v > r) throw std::invalid_argument("sequence entry outside [1, r]");
  if (seq[0] > 1 + beta) return false;  // step from the RSU's segment
  for (std::size_t t = 1; t < seq.size(); ++t) {
    const int d = seq[t] - seq[t - 1];
    if (d < 0 || d > beta) return false;
  }
  return true;
}

namespace {

void walk_sequences(std::vector<int>& prefix, int remaining, int beta, int r, uint64_t cap,
                    std::vector<SegmentSequence>& out) {
  if (remaining == 0) {
    if (cap && out.size() >= cap)
      throw ResourceLimitError("valid-sequence enumeration exceeded cap; reduce L or beta");
    out.emplace_back(prefix);
    return;
  }
  const int from = prefix.empty() ? 1 : prefix.back();
  const int hi = std::min(r, from + beta);
  for (int v = from; v <= hi; ++v) {
    prefix.push_back(v);
    walk_sequences(prefix, remaining - 1, beta, r, cap, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<SegmentSequence> enumerate_valid_sequences(int L, int beta, int r, uint64_t cap) {
  if (L < 1) throw std::invalid_argument("sequence length must be positive");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  std::vector<SegmentSequence> out;
  std::vector<int> prefix;
  prefix.reserve(L);
  walk_sequences(prefix, L, beta, r, cap, out);
  return out;
}

uint64_t count_valid_sequences(int L, int beta, int r) {
  if (L < 1) throw std::invalid_argument("sequence length must be positive");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  // counts[v] = number of valid prefixes of the current length ending at v.
  std::vector<uint64_t> counts(r + 2, 0);
  for (int v = 1; v <= std::min(r, 1 + beta); ++v) counts[v] = 1;
  for (int t = 2; t <= L; ++t) {
    std::vector<uint64_t> next(r + 2, 0);
    for (int v = 1; v <= r; ++v) {
      if (!counts[v]) continue;
      for (int w = v; w <= std::min(r, v + beta); ++w) {
        const uint64_t sum = next[w] + counts[v];
        if (sum < next[w]) throw ResourceLimitError("sequence count overflows 64 bits");
        next[w] = sum;
      }
    }
    counts.swap(next);
  }
  uint64_t total = 0;
  for (int v = 1; v <= r; ++v) {
    const uint64_t sum = total + counts[v];
    if (sum < total) throw ResourceLimitError("sequence count overflows 64 bits");
    total = sum;
  }
  return total;
}

PrivacyBits privacy_bits(uint64_t gps_cells, int r, int beta, int hop_gap) {
  if (r < 1 || gps_cells < uint64_t(r))
    throw std::invalid_argument("GPS cell count must be at least the segment count");
  if (beta < 1 || beta > r) throw std::invalid_argument("beta must satisfy 1 <= beta <= r");
  if (hop_gap < 1) throw std::invalid_argument("hop gap must be at least 1");
  const double cells_per_segment = double(gps_cells) / double(r);
  return PrivacyBits{
      std::log2(double(r)),
      std::log2(cells_per_segment),
      std::log2(2.0 * beta * cells_per_segment),
      std::log2(double(hop_gap) * beta * cells_per_segment),
  };
}

}  // namespace clbf
