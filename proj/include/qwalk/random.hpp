#pragma once

#include <cstdint>

namespace qwalk {

/// Counter-based generator: draw i for key k is a pure function of (k, i),
/// so streams are reproducible across platforms and evaluation orders.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in the open interval (0, 1), 53-bit resolution.
  double uniform(std::uint64_t counter) const;
  /// Standard normal via Box-Muller on draws (2i, 2i+1).
  double normal(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

}  // namespace qwalk
