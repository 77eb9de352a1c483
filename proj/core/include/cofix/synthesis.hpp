#pragma once

#include <optional>

#include "cofix/contraction.hpp"

namespace cofix {

struct SynthesisOptions {
  double margin = 0.05;     // reserve: alpha + beta + gamma + 2 delta <= 1 - margin
  double max_L = 1.0e4;     // keeps the linear program bounded
  std::optional<double> tolerance;  // re-verification slack (default: flavor tolerance)
};

/// Outcome of coefficient synthesis. On success `coefficients` passes
/// validate_coefficients and the condition re-verifies on every pair of the
/// source (`verification`). On failure `binding_x/binding_y` is the pair whose
/// inequality is furthest from satisfiable.
struct SynthesisResult {
  std::optional<Coefficients> coefficients;
  std::optional<ViolationReport> verification;
  Point binding_x;
  Point binding_y;
  double binding_deficit = 0.0;  // LHS minus the largest RHS any admissible tuple reaches
  std::size_t rows = 0;          // nontrivial inequalities in the linear program

  bool feasible() const noexcept { return coefficients.has_value(); }
  /// The coefficients, or Error{Infeasible} naming the binding pair.
  const Coefficients& require() const;
};

/// Finds (alpha, beta, gamma, delta, L) making the condition of `maps.arity`
/// hold on every pair of `source`. The right-hand side is linear in the
/// coefficients, so this is a linear feasibility problem: one row per pair plus
/// the weight bound. Among feasible tuples the smallest weight is taken and
/// then scaled halfway towards 1 - margin, which widens the slack at every pair
/// with a positive right-hand side.
SynthesisResult synthesize_coefficients(const MetricSpace& space, const MappingSet& maps, const PairSource& source,
                                        const SynthesisOptions& options = {});

}  // namespace cofix
