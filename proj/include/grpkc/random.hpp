#pragma once

#include <cstdint>
#include <random>

#include "grpkc/error.hpp"

namespace grpkc {

/// Seeded stream with a platform-independent uniform draw. The standard
/// distributions are implementation-defined, so rejection sampling over
/// mt19937_64 output is used instead.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi], lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw ParameterError("empty sampling range");
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + x % range;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace grpkc
