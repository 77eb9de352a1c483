#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "cofix/metric.hpp"

namespace cofix {

/// Seeded generator with platform-independent draws. std::uniform_*_distribution
/// is implementation-defined, which would break bit-exact reproducibility of
/// generated instances across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound).
  std::size_t index(std::size_t bound) {
    __extension__ using u128 = unsigned __int128;
    const auto wide = static_cast<u128>(engine_()) * bound;
    return static_cast<std::size_t>(wide >> 64);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(index(static_cast<std::size_t>(hi - lo + 1)));
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Vector in_box(const Box& box) {
    Vector v(box.lower.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform(box.lower[i], box.upper[i]);
    return v;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace cofix
