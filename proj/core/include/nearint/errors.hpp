#pragma once

#include <stdexcept>
#include <string>

namespace nearint {

// Input outside an operation's mathematical domain (bad delta, dimension
// mismatch, non-finite value, mixed arithmetic modes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of a construction does not hold for the given
// inputs (delta too large, X below the threshold, insufficient curve depth).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested object would exceed a configured size limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A result that a proven lemma guarantees turned out false, or a numerical
// routine failed. Always indicates a bug or a numerical breakdown.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nearint
