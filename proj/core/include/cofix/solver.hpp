#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cofix/contraction.hpp"
#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"

namespace cofix {

/// Iterates x1 = S x0, x2 = T x1, x3 = S x2, ...; `produced_by[n]` records
/// which map produced x_n ('S' for odd n, 'T' for even n > 0, '-' for x0).
struct IterationTrace {
  std::vector<Point> iterates;
  std::vector<double> steps;  // steps[n] = d(x_n, x_{n+1})
  std::vector<char> produced_by;
};

enum class SolveStatus { Converged, MaxIterations, RateViolated };

std::string_view to_string(SolveStatus status) noexcept;

struct SolveReport {
  IterationTrace trace;
  double rate_k = 0.0;
  Point limit;  // z: the last iterate
  double residual_S = 0.0;  // d(z, Sz)
  double residual_T = 0.0;  // d(z, Tz)
  std::vector<double> apriori_bounds;  // k^n d0 / (1-k) for every recorded iterate
  SolveStatus status = SolveStatus::MaxIterations;
  std::optional<std::size_t> violation_step;  // first n with d_{n} > k d_{n-1} + tol
  double tolerance = 0.0;
  double stop_threshold = 0.0;  // a-posteriori step threshold tol (1-k) / max(k, tol)

  std::size_t iterations() const noexcept { return trace.steps.size(); }
  bool converged() const noexcept { return status == SolveStatus::Converged; }
};

struct SolveOptions {
  std::size_t max_iters = 10000;
  std::optional<double> tol;  // default: flavor tolerance
};

/// max{(alpha+gamma+delta)/(1-beta-delta), (beta+gamma+delta)/(1-alpha-delta)}.
/// Validates `c` first; the result lies in [0, 1).
double rate_constant(const Coefficients& c);

/// k^n d0 / (1 - k): bound on d(x_n, z) for the alternating iteration.
/// Throws Error{Domain} unless 0 <= k < 1 and d0 >= 0.
double apriori_error_bound(double k, double d0, std::size_t n);

/// Alternating S/T iteration from x0.
///
/// Stops with Converged once a step d_n falls under the a-posteriori threshold
/// and z = x_{n+1} has d(z,Sz), d(z,Tz) <= tol. Every step is checked against
/// d_n <= k d_{n-1} + tol; the first failure stops with RateViolated. On finite
/// spaces a revisited (point, parity) state that is not a common fixed point
/// also stops with RateViolated. The condition itself is not re-verified here.
SolveReport picard_solve(const MetricSpace& space, const Mapping& S, const Mapping& T, const Point& x0,
                         const Coefficients& c, const SolveOptions& options = {});

struct UniquenessVerdict {
  bool equal = true;
  double distance = 0.0;
  double contraction_bound = 0.0;  // (gamma + 2 delta) d(z1, z2): the bound the condition imposes
  bool hypothesis_violated() const noexcept { return !equal; }
};

/// With Sz1 = z1 and Tz2 = z2 every fixed-point term of the condition vanishes
/// at (z1, z2) and it reduces to d(z1,z2) <= (gamma + 2 delta) d(z1,z2), which
/// forces z1 = z2. An unequal verdict therefore certifies that the hypotheses
/// fail. Throws Error{PreconditionFailure} if z1 or z2 is not a fixed point
/// (residual above tol).
UniquenessVerdict uniqueness_check(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                   const Coefficients& c, const Point& z1, const Point& z2,
                                   std::optional<double> tol = {});

}  // namespace cofix
