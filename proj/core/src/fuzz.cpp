#include "cofix/fuzz.hpp"

#include <sstream>

#include "cofix/error.hpp"
#include "cofix/oracle.hpp"
#include "cofix/random.hpp"
#include "cofix/reduction.hpp"
#include "cofix/solver.hpp"

namespace cofix {

std::size_t fuzz_universe_size(std::uint64_t seed, std::size_t n_min, std::size_t n_max) {
  if (n_min == 0 || n_max < n_min) throw Error(ErrorKind::Domain, "fuzz needs 1 <= n_min <= n_max");
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return n_min + rng.index(n_max - n_min + 1);
}

namespace {

struct TraceCheck {
  std::size_t steps = 0;
  std::size_t ratio_violations = 0;
  std::size_t bound_violations = 0;
};

TraceCheck check_trace(const MetricSpace& space, const SolveReport& r, const Point& limit, const FuzzConfig& cfg) {
  TraceCheck out;
  const auto& steps = r.trace.steps;
  for (std::size_t n = 0; n + 1 < steps.size(); ++n) {
    ++out.steps;
    if (steps[n + 1] > r.rate_k * steps[n] + cfg.step_slack) ++out.ratio_violations;
  }
  const double d0 = steps.empty() ? 0.0 : steps.front();
  for (std::size_t n = 0; n < r.trace.iterates.size(); ++n) {
    const double bound = apriori_error_bound(r.rate_k, d0, n);
    if (distance(space, r.trace.iterates[n], limit) > bound + cfg.bound_slack) ++out.bound_violations;
  }
  return out;
}

}  // namespace

FuzzSummary run_fuzz(const FuzzConfig& config) {
  FuzzSummary summary;
  for (std::size_t i = 0; i < config.count; ++i) {
    InstanceRecipe recipe = config.base;
    recipe.seed = config.seed + i;
    recipe.n = fuzz_universe_size(recipe.seed, config.n_min, config.n_max);
    if (config.alternate_metric) {
      recipe.metric = i % 2 == 0 ? MetricMode::EuclideanEmbedding : MetricMode::RepairedTable;
    }

    Instance inst = generate_instance(recipe);
    ++summary.generated;
    if (!inst.hypotheses_verified) continue;
    ++summary.verified;

    const OracleResult oracle = enumerate_coincidence(inst.space, inst.maps);
    if (oracle.common_fixed_points.size() != 1) {
      summary.disagreements.push_back({recipe.seed, inst,
                                       "oracle found " + std::to_string(oracle.common_fixed_points.size()) +
                                           " common fixed points on a verified instance"});
      continue;
    }
    const Point expected = Point::at(oracle.common_fixed_points.front());

    std::ostringstream problems;
    for (std::size_t x0 = 0; x0 < inst.space.size(); ++x0) {
      ++summary.solves;
      const Point start = Point::at(x0);
      try {
        Point got;
        TraceCheck tc;
        switch (inst.maps.arity) {
          case Arity::Two: {
            const SolveReport r = picard_solve(inst.space, inst.maps.S, inst.maps.T, start, inst.coefficients);
            if (!r.converged()) throw Error(ErrorKind::NotConverged, std::string(to_string(r.status)));
            got = r.limit;
            tc = check_trace(inst.space, r, expected, config);
            break;
          }
          case Arity::Three:
          case Arity::Four: {
            const CoincidenceReport r =
                inst.maps.arity == Arity::Three
                    ? solve_three(inst.space, inst.maps.S, inst.maps.T, inst.maps.get_f(), inst.coefficients, start)
                    : solve_four(inst.space, inst.maps.S, inst.maps.T, inst.maps.get_f(), inst.maps.get_g(),
                                 inst.coefficients, start);
            if (!r.common_fixed_point) throw Error(ErrorKind::PreconditionFailure, "no common fixed point lifted");
            got = *r.common_fixed_point;
            tc = check_trace(r.witness->image_space, r.induced_solve, r.witness->to_local(expected), config);
            break;
          }
        }
        summary.steps_checked += tc.steps;
        summary.step_ratio_violations += tc.ratio_violations;
        summary.bound_violations += tc.bound_violations;
        if (tc.ratio_violations || tc.bound_violations) {
          problems << "x0=" << x0 << ": " << tc.ratio_violations << " step-ratio and " << tc.bound_violations
                   << " bound violations; ";
        }
        if (got == expected) {
          ++summary.agreements;
        } else {
          problems << "x0=" << x0 << ": solver returned " << got.str() << ", oracle " << expected.str() << "; ";
        }
      } catch (const Error& e) {
        problems << "x0=" << x0 << ": " << to_string(e.kind()) << (e.stage().empty() ? "" : " at " + e.stage())
                 << ": " << e.what() << "; ";
      }
    }
    if (!problems.str().empty()) summary.disagreements.push_back({recipe.seed, std::move(inst), problems.str()});
  }
  return summary;
}

}  // namespace cofix
