#pragma once

#include <stdexcept>
#include <string>

namespace clbf {

// Position lies outside the dictionary's coverage interval [0, L).
class OutOfCoverageError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Recovery produced no constraint-satisfying candidate; signals packet
// loss or a tampered filter rather than a programming error.
class InconsistentProvenanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed serialized input (wire packet, compressed body, dictionary).
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A guard tripped before an enumeration could exhaust memory or time.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clbf
