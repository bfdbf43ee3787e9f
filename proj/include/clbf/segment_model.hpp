#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "clbf/bits.hpp"

namespace clbf {

// The r-segment partition of the RSU coverage area. Segment 1 holds the
// RSU; beta is the maximum number of adjacent segments one transmission
// can span.
struct SegmentSpace {
  int r;
  double segment_length_m;
  int beta;
  int rsu_segment = 1;

  SegmentSpace(int r_, double segment_length_m_, int beta_);

  double coverage_length_m() const { return r * segment_length_m; }
};

// Position-to-segment boundary table broadcast by the RSU.
//
// Text form: header `r=<int> seg_len=<float>` followed by r lines
// `idx lo hi` with contiguous half-open intervals covering [0, L).
class SegmentDictionary {
 public:
  struct Interval {
    int index;
    double lo;
    double hi;
  };

  SegmentDictionary(std::vector<Interval> intervals, int version);
  static SegmentDictionary uniform(const SegmentSpace& space, int version = 1);

  int segment_of(double position_m) const;  // throws OutOfCoverageError
  int r() const { return int(intervals_.size()); }
  int version() const { return version_; }
  double coverage_length_m() const { return intervals_.back().hi; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  Bytes serialize() const;
  static SegmentDictionary parse(const Bytes& text, int version = 1);

 private:
  std::vector<Interval> intervals_;
  int version_;
};

int segment_of(double position_m, const SegmentDictionary& dict);

// Node -> segment assignment g, held constant while one packet is in
// flight.
struct SpatialMap {
  std::map<Bytes, int> assignment;
  int epoch = 0;

  int segment_of(const Bytes& node_id) const;
};

// Segments of the embedding nodes in canonical orientation: entry 1 is
// the RSU-adjacent node, the last entry is the source. Validity means
// entry 1 lies within beta of the RSU's segment 1 (the beta-ary tree root,
// which is not stored), consecutive entries are non-decreasing with steps
// of at most beta, and every entry is in [1, r].
struct SegmentSequence {
  std::vector<int> values;

  SegmentSequence() = default;
  SegmentSequence(std::initializer_list<int> v) : values(v) {}
  explicit SegmentSequence(std::vector<int> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }
  bool operator==(const SegmentSequence& o) const = default;
  auto operator<=>(const SegmentSequence& o) const { return values <=> o.values; }
};

std::ostream& operator<<(std::ostream& os, const SegmentSequence& seq);

// Throws std::invalid_argument when an entry is outside [1, r] or the
// sequence is empty; otherwise reports whether it satisfies the sequence
// invariants above.
bool validate_sequence(const SegmentSequence& seq, int beta, int r);

// The set P_beta of valid sequences of length L, in lexicographic order.
// Generated with a depth-first walk, O(L) working memory per sequence.
std::vector<SegmentSequence> enumerate_valid_sequences(int L, int beta, int r,
                                                       uint64_t cap = 0);

// |P_beta| without materializing the set.
uint64_t count_valid_sequences(int L, int beta, int r);

// Residual-uncertainty accounting, all values in bits.
struct PrivacyBits {
  double rsu_resolved;          // log2(r)
  double rsu_residual;          // log2(M / r)
  double eavesdropper_adjacent; // log2(2 beta M / r)
  double forwarder;             // log2(hop_gap * beta * M / r)
};

PrivacyBits privacy_bits(uint64_t gps_cells, int r, int beta, int hop_gap);

}  // namespace clbf
