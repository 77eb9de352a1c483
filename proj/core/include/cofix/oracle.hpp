#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cofix/contraction.hpp"
#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"

namespace cofix {

/// Exact sets by exhaustive scan of a finite universe. Everything here is
/// independent of the solver and reduction code paths it is used to check.
struct OracleResult {
  Arity arity = Arity::Two;
  std::vector<std::string> map_names;                  // "S", "T", then "f", "g"
  std::vector<std::vector<std::size_t>> fixed_points;  // per map, same order as map_names
  std::vector<std::size_t> common_fixed_points;        // fixed by every map of the arity
  /// arity 2: Sx = Tx; arity 3: Sx = Tx = fx; arity 4: Sx = fx
  std::vector<std::size_t> coincidence_points;
  /// arity 4 only: Tx = gx
  std::vector<std::size_t> partner_coincidence_points;
  /// Common values at the coincidence points, sorted and unique. For arity 4,
  /// values y = Sx = fx that are also y = Tv = gv for some v.
  std::vector<std::size_t> points_of_coincidence;
  std::optional<ViolationReport> condition;  // exhaustive check when coefficients are given
};

/// { x : map(x) = x }. Finite spaces only.
std::vector<std::size_t> enumerate_fixed_points(const MetricSpace& space, const Mapping& map);

/// Intersection of the fixed-point sets; needs at least two maps.
std::vector<std::size_t> enumerate_common_fixed_points(const MetricSpace& space, std::span<const Mapping> maps);

OracleResult enumerate_coincidence(const MetricSpace& space, const MappingSet& maps,
                                   const std::optional<Coefficients>& coefficients = {});

}  // namespace cofix
