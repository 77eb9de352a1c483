#pragma once

// Reference computations written from the definitions, sharing no code with
// the library beyond its data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cofix/contraction.hpp"
#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"

namespace brute {

using Table = std::vector<std::vector<double>>;

inline Table abs_table(const std::vector<double>& labels) {
  Table t(labels.size(), std::vector<double>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) t[i][j] = std::abs(labels[i] - labels[j]);
  return t;
}

inline cofix::MetricSpace space(const Table& t) { return cofix::MetricSpace::finite(t); }

using Map = std::vector<std::size_t>;

// lhs and rhs of the condition with the anchors written out by hand
struct Sides {
  double lhs;
  double rhs;
};

inline Sides sides(const Table& d, const Map& S, const Map& T, const Map& fx_side, const Map& gy_side,
                   const cofix::Coefficients& c, std::size_t x, std::size_t y) {
  const std::size_t sx = S[x], ty = T[y], u = fx_side[x], w = gy_side[y];
  const double a = d[u][sx], b = d[w][ty], g = d[u][w], e1 = d[w][sx], e2 = d[u][ty];
  const double m = std::min(std::min(a, b), std::min(e1, e2));
  return {d[sx][ty], c.alpha * a + c.beta * b + c.gamma * g + c.delta * (e1 + e2) + c.L * m};
}

inline Map identity(std::size_t n) {
  Map m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

inline Map constant(std::size_t n, std::size_t v) { return Map(n, v); }

// max over all pairs of lhs - rhs
inline double worst_margin(const Table& d, const Map& S, const Map& T, const Map& f, const Map& g,
                           const cofix::Coefficients& c) {
  double worst = -1e300;
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t y = 0; y < d.size(); ++y) {
      const Sides s = sides(d, S, T, f, g, c, x, y);
      worst = std::max(worst, s.lhs - s.rhs);
    }
  return worst;
}

inline std::vector<std::size_t> common_fixed(const std::vector<Map>& maps) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < maps.front().size(); ++x) {
    bool all = true;
    for (const auto& m : maps) all = all && m[x] == x;
    if (all) out.push_back(x);
  }
  return out;
}

inline std::vector<std::size_t> image(const Map& f) {
  std::vector<std::size_t> out(f.begin(), f.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace brute
