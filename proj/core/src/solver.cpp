#include "cofix/solver.hpp"

#include <algorithm>
#include <cmath>

#include "cofix/error.hpp"

namespace cofix {

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::RateViolated: return "RateViolated";
  }
  return "Unknown";
}

double rate_constant(const Coefficients& c) {
  validate_coefficients(c);
  const double first = (c.alpha + c.gamma + c.delta) / (1.0 - c.beta - c.delta);
  const double second = (c.beta + c.gamma + c.delta) / (1.0 - c.alpha - c.delta);
  return std::max(first, second);
}

double apriori_error_bound(double k, double d0, std::size_t n) {
  if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::Domain, "rate constant must lie in [0, 1)");
  if (!(d0 >= 0.0)) throw Error(ErrorKind::Domain, "initial step must be nonnegative");
  if (k == 0.0) return n == 0 ? d0 : 0.0;
  return std::pow(k, static_cast<double>(n)) * d0 / (1.0 - k);
}

SolveReport picard_solve(const MetricSpace& space, const Mapping& S, const Mapping& T, const Point& x0,
                         const Coefficients& c, const SolveOptions& options) {
  S.require_on(space, "S");
  T.require_on(space, "T");
  space.require(x0);

  SolveReport report;
  report.rate_k = rate_constant(c);
  report.tolerance = options.tol.value_or(default_tolerance(space));
  const double k = report.rate_k;
  const double tol = report.tolerance;
  report.stop_threshold = tol * (1.0 - k) / std::max(k, tol);

  auto& trace = report.trace;
  trace.iterates.push_back(x0);
  trace.produced_by.push_back('-');

  // (index, parity of the next map) states already seen on a finite universe
  std::vector<bool> seen(space.is_finite() ? 2 * space.size() : 0, false);
  if (space.is_finite()) seen[2 * x0.index()] = true;

  bool stopped = false;
  for (std::size_t n = 0; n < options.max_iters; ++n) {
    const bool use_S = n % 2 == 0;
    const Point& x = trace.iterates.back();
    Point next = use_S ? S(x) : T(x);
    const double step = distance(space, x, next);
    trace.iterates.push_back(next);
    trace.steps.push_back(step);
    trace.produced_by.push_back(use_S ? 'S' : 'T');

    if (n >= 1 && step > k * trace.steps[n - 1] + tol) {
      report.status = SolveStatus::RateViolated;
      report.violation_step = n;
      stopped = true;
      break;
    }
    if (step <= report.stop_threshold) {
      const double rS = distance(space, next, S(next));
      const double rT = distance(space, next, T(next));
      if (rS <= tol && rT <= tol) {
        report.status = SolveStatus::Converged;
        stopped = true;
        break;
      }
    }
    if (space.is_finite()) {
      const std::size_t state = 2 * next.index() + (use_S ? 1 : 0);
      if (seen[state]) {
        report.status = SolveStatus::RateViolated;
        report.violation_step = n;
        stopped = true;
        break;
      }
      seen[state] = true;
    }
  }
  if (!stopped) report.status = SolveStatus::MaxIterations;

  report.limit = trace.iterates.back();
  report.residual_S = distance(space, report.limit, S(report.limit));
  report.residual_T = distance(space, report.limit, T(report.limit));

  const double d0 = trace.steps.empty() ? 0.0 : trace.steps.front();
  report.apriori_bounds.reserve(trace.iterates.size());
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    report.apriori_bounds.push_back(apriori_error_bound(k, d0, n));
  }
  return report;
}

UniquenessVerdict uniqueness_check(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                   const Coefficients& c, const Point& z1, const Point& z2,
                                   std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(space));
  const double r1 = distance(space, z1, S(z1));
  const double r2 = distance(space, z2, T(z2));
  if (r1 > t) {
    throw Error(ErrorKind::PreconditionFailure, "z1 = " + z1.str() + " is not a fixed point of S (residual " +
                                                    std::to_string(r1) + ")");
  }
  if (r2 > t) {
    throw Error(ErrorKind::PreconditionFailure, "z2 = " + z2.str() + " is not a fixed point of T (residual " +
                                                    std::to_string(r2) + ")");
  }
  UniquenessVerdict v;
  v.distance = distance(space, z1, z2);
  v.contraction_bound = (c.gamma + 2.0 * c.delta) * v.distance;
  if (space.is_finite()) {
    v.equal = z1.index() == z2.index();
  } else {
    const double scale = std::max({1.0, z1.vector().norm(), z2.vector().norm()});
    v.equal = v.distance <= t * scale;
  }
  return v;
}

}  // namespace cofix
