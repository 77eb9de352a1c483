#pragma once

#include <vector>

namespace cofix::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense two-phase simplex with Bland-style tie-breaking:
///   maximize c'x  subject to  A x <= b,  x >= 0.
/// Intended for a handful of variables and a few thousand rows.
Solution maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

}  // namespace cofix::lp
