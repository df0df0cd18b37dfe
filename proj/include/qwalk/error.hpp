#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Invalid input: bad graph, bad node label, malformed file, out-of-range parameter.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
