#pragma once

#include <stdexcept>
#include <string>

namespace talbot {

// Argument outside the mathematical domain of a function (|x| > 1, theta < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Index combination that does not name an object (|k| > n, mismatched dimensions).
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A grid or quadrature rule too coarse for the requested computation.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (empty jump list, degenerate polygon, bad config).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace talbot
