#include "cofix/synthesis.hpp"

#include <algorithm>
#include <limits>

#include "cofix/error.hpp"
#include "cofix/simplex.hpp"

namespace cofix {

const Coefficients& SynthesisResult::require() const {
  if (!coefficients) {
    throw Error(ErrorKind::Infeasible, "no admissible coefficients; most binding pair (" + binding_x.str() + ", " +
                                           binding_y.str() + ") with deficit " + std::to_string(binding_deficit));
  }
  return *coefficients;
}

namespace {

constexpr double kLWeight = 1e-4;   // objective weight on L relative to the coefficient weight
constexpr double kRowCushion = 1e-12;

}  // namespace

SynthesisResult synthesize_coefficients(const MetricSpace& space, const MappingSet& maps, const PairSource& source,
                                        const SynthesisOptions& options) {
  if (!(options.margin > 0.0 && options.margin < 1.0)) {
    throw Error(ErrorKind::Domain, "synthesis margin must lie in (0, 1)");
  }
  maps.require_on(space);
  const double budget = 1.0 - options.margin;
  const auto pairs = materialize_pairs(space, source);

  SynthesisResult result;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  double worst_deficit = -std::numeric_limits<double>::infinity();

  for (const auto& [x, y] : pairs) {
    const ConditionTerms t = condition_terms(space, maps, x, y);
    const auto& phi = t.features;
    const double reach = budget * std::max({phi[0], phi[1], phi[2], phi[3] / 2.0}) + options.max_L * phi[4];
    const double deficit = t.lhs - reach;
    if (deficit > worst_deficit) {
      worst_deficit = deficit;
      result.binding_x = x;
      result.binding_y = y;
    }
    if (t.lhs <= 0.0) continue;
    A.push_back({-phi[0], -phi[1], -phi[2], -phi[3], -phi[4]});
    b.push_back(-(t.lhs + kRowCushion));
  }
  result.binding_deficit = pairs.empty() ? 0.0 : worst_deficit;
  result.rows = A.size();

  A.push_back({1.0, 1.0, 1.0, 2.0, 0.0});
  b.push_back(budget);
  A.push_back({0.0, 0.0, 0.0, 0.0, 1.0});
  b.push_back(options.max_L);

  const auto solution = lp::maximize(A, b, {-1.0, -1.0, -1.0, -2.0, -kLWeight});
  if (solution.status != lp::Status::Optimal) return result;

  std::array<double, 5> raw{};
  for (std::size_t i = 0; i < 5; ++i) raw[i] = std::max(0.0, solution.x[i]);
  const Coefficients tight = Coefficients::from_array(raw);

  Coefficients spread = tight;
  if (tight.weight() > 0.0 && tight.weight() < budget) {
    const double scale = 0.5 * (tight.weight() + budget) / tight.weight();
    auto a = tight.as_array();
    for (double& v : a) v *= scale;
    spread = Coefficients::from_array(a);
  }

  for (const Coefficients& candidate : {spread, tight}) {
    try {
      validate_coefficients(candidate);
    } catch (const Error&) {
      continue;
    }
    if (candidate.weight() > budget + 1e-12) continue;
    ViolationReport check = check_condition(space, maps, candidate, source, options.tolerance);
    if (check.satisfied) {
      result.coefficients = candidate;
      result.verification = std::move(check);
      return result;
    }
  }
  return result;
}

}  // namespace cofix
