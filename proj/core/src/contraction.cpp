#include "cofix/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cofix/error.hpp"
#include "cofix/random.hpp"

namespace cofix {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

constexpr std::size_t kDefaultInclusionSamples = 1000;
constexpr double kDefaultBox = 10.0;

Box resolve_box(const MetricSpace& space, const PairSource& source) {
  if (source.box) {
    if (source.box->dimension() != space.dimension()) {
      throw Error(ErrorKind::Domain, "sampling box dimension does not match the space");
    }
    return *source.box;
  }
  return Box::cube(space.dimension(), -kDefaultBox, kDefaultBox);
}

const char* condition_name(Arity arity) {
  switch (arity) {
    case Arity::Two: return "condition_two";
    case Arity::Three: return "condition_three";
    case Arity::Four: return "condition_four";
  }
  return "condition";
}

}  // namespace

Coefficients validate_coefficients(const Coefficients& c) {
  const std::pair<const char*, double> unit[] = {
      {"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma}, {"delta", c.delta}};
  for (const auto& [name, v] : unit) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw Error(ErrorKind::BoundViolation, std::string(name) + " = " + fmt(v) + " violates 0 <= " + name + " < 1");
    }
  }
  if (!(c.L >= 0.0) || !std::isfinite(c.L)) {
    throw Error(ErrorKind::BoundViolation, "L = " + fmt(c.L) + " violates L >= 0");
  }
  if (!(c.weight() < 1.0)) {
    throw Error(ErrorKind::BoundViolation,
                "alpha + beta + gamma + 2 delta = " + fmt(c.weight()) + " violates alpha + beta + gamma + 2 delta < 1");
  }
  return c;
}

double ConditionTerms::rhs(const Coefficients& c) const noexcept {
  return c.alpha * features[0] + c.beta * features[1] + c.gamma * features[2] + c.delta * features[3] +
         c.L * features[4];
}

namespace {

// u is the x-side anchor (x, fx), w the y-side anchor (y, fy, gy).
ConditionTerms terms_at(const MetricSpace& space, const Point& Sx, const Point& Ty, const Point& u,
                        const Point& w) {
  ConditionTerms t;
  t.lhs = distance(space, Sx, Ty);
  const double uSx = distance(space, u, Sx);
  const double wTy = distance(space, w, Ty);
  const double wSx = distance(space, w, Sx);
  const double uTy = distance(space, u, Ty);
  t.features = {uSx, wTy, distance(space, u, w), wSx + uTy, std::min({uSx, wTy, wSx, uTy})};
  return t;
}

}  // namespace

ConditionTerms condition_terms(const MetricSpace& space, const MappingSet& maps, const Point& x, const Point& y) {
  space.require(x);
  space.require(y);
  const Point Sx = maps.S(x);
  const Point Ty = maps.T(y);
  switch (maps.arity) {
    case Arity::Two: return terms_at(space, Sx, Ty, x, y);
    case Arity::Three: {
      const auto& f = maps.get_f();
      return terms_at(space, Sx, Ty, f(x), f(y));
    }
    case Arity::Four: return terms_at(space, Sx, Ty, maps.get_f()(x), maps.get_g()(y));
  }
  return {};
}

double rhs_two(const Coefficients& c, const MetricSpace& space, const Mapping& S, const Mapping& T, const Point& x,
               const Point& y) {
  return condition_terms(space, MappingSet::two(S, T), x, y).rhs(c);
}

double rhs_three(const Coefficients& c, const MetricSpace& space, const Mapping& S, const Mapping& T,
                 const Mapping& f, const Point& x, const Point& y) {
  return condition_terms(space, MappingSet::three(S, T, f), x, y).rhs(c);
}

double rhs_four(const Coefficients& c, const MetricSpace& space, const Mapping& S, const Mapping& T,
                const Mapping& f, const Mapping& g, const Point& x, const Point& y) {
  return condition_terms(space, MappingSet::four(S, T, f, g), x, y).rhs(c);
}

std::vector<std::pair<Point, Point>> materialize_pairs(const MetricSpace& space, const PairSource& source) {
  std::vector<std::pair<Point, Point>> pairs;
  if (source.is_exhaustive()) {
    if (!space.is_finite()) {
      throw Error(ErrorKind::ExhaustiveOnInfinite, "exhaustive pair source requested on a Euclidean space");
    }
    const std::size_t n = space.size();
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(Point::at(i), Point::at(j));
    }
    return pairs;
  }
  Rng rng(source.seed);
  pairs.reserve(source.samples);
  if (space.is_finite()) {
    for (std::size_t s = 0; s < source.samples; ++s) {
      const std::size_t i = rng.index(space.size());
      const std::size_t j = rng.index(space.size());
      pairs.emplace_back(Point::at(i), Point::at(j));
    }
  } else {
    const Box box = resolve_box(space, source);
    for (std::size_t s = 0; s < source.samples; ++s) {
      Point x = Point::coords(rng.in_box(box));
      Point y = Point::coords(rng.in_box(box));
      pairs.emplace_back(std::move(x), std::move(y));
    }
  }
  return pairs;
}

ViolationReport check_condition(const MetricSpace& space, const MappingSet& maps, const Coefficients& c,
                                const PairSource& source, std::optional<double> tolerance) {
  maps.require_on(space);
  ViolationReport report;
  report.condition = condition_name(maps.arity);
  report.source = source;
  if (!source.is_exhaustive() && !space.is_finite() && !report.source.box) {
    report.source.box = resolve_box(space, source);
  }
  report.tolerance = tolerance.value_or(default_tolerance(space));

  const auto pairs = materialize_pairs(space, source);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const ConditionTerms t = condition_terms(space, maps, x, y);
    const double rhs = t.rhs(c);
    const double margin = t.lhs - rhs;
    const bool smaller_pair =
        x < report.worst_x || (x == report.worst_x && y < report.worst_y);
    const bool better = margin > worst || (margin == worst && smaller_pair);
    if (better) {
      worst = margin;
      report.worst_x = x;
      report.worst_y = y;
      report.worst_lhs = t.lhs;
      report.worst_rhs = rhs;
    }
  }
  report.pairs_checked = pairs.size();
  report.worst_margin = pairs.empty() ? 0.0 : worst;
  report.satisfied = report.worst_margin <= report.tolerance;
  return report;
}

ViolationReport check_condition_two(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                    const Coefficients& c, const PairSource& source,
                                    std::optional<double> tolerance) {
  return check_condition(space, MappingSet::two(S, T), c, source, tolerance);
}

ViolationReport check_condition_three(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                      const Mapping& f, const Coefficients& c, const PairSource& source,
                                      std::optional<double> tolerance) {
  return check_condition(space, MappingSet::three(S, T, f), c, source, tolerance);
}

ViolationReport check_condition_four(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                     const Mapping& f, const Mapping& g, const Coefficients& c,
                                     const PairSource& source, std::optional<double> tolerance) {
  return check_condition(space, MappingSet::four(S, T, f, g), c, source, tolerance);
}

bool InclusionReport::holds() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

const InclusionCheck* InclusionReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.holds) return &c;
  }
  return nullptr;
}

std::vector<bool> image_mask(const MetricSpace& space, const Mapping& map) {
  std::vector<bool> mask(space.size(), false);
  for (std::size_t v : map.images()) mask.at(v) = true;
  return mask;
}

bool in_affine_image(const MetricSpace& space, const Mapping& f, const Vector& y) {
  const auto& a = f.affine();
  const Vector rhs = y - a.offset;
  const Vector z = a.linear.completeOrthogonalDecomposition().solve(rhs);
  return (a.linear * z - rhs).norm() <= space.point_tolerance() * (1.0 + y.norm());
}

namespace {

// Every image of `source` (over the universe) lies in the image of `target`.
InclusionCheck finite_inclusion(const MetricSpace& space, std::string relation,
                                std::initializer_list<const Mapping*> sources, const Mapping& target) {
  InclusionCheck check;
  check.relation = std::move(relation);
  const auto mask = image_mask(space, target);
  for (std::size_t x = 0; x < space.size() && check.holds; ++x) {
    for (const Mapping* m : sources) {
      const std::size_t v = (*m)(x);
      if (!mask[v]) {
        check.holds = false;
        check.argument = Point::at(x);
        check.value = Point::at(v);
        check.detail = "image " + std::to_string(v) + " of " + std::to_string(x) + " is not in the image of the target";
        break;
      }
    }
  }
  return check;
}

InclusionCheck affine_inclusion(const MetricSpace& space, std::string relation,
                                std::initializer_list<const Mapping*> sources, const Mapping& target,
                                const std::vector<Vector>& samples) {
  InclusionCheck check;
  check.relation = std::move(relation);
  for (const auto& x : samples) {
    for (const Mapping* m : sources) {
      const Vector v = m->affine()(x);
      if (!in_affine_image(space, target, v)) {
        check.holds = false;
        check.argument = Point::coords(x);
        check.value = Point::coords(v);
        check.detail = "sampled image is not in the affine image of the target";
        return check;
      }
    }
  }
  return check;
}

InclusionCheck merge_equal(std::string relation, InclusionCheck forward, InclusionCheck backward) {
  InclusionCheck out = forward.holds ? std::move(backward) : std::move(forward);
  out.relation = std::move(relation);
  return out;
}

}  // namespace

InclusionReport check_range_inclusions(const MetricSpace& space, const MappingSet& maps, const PairSource& sampling) {
  maps.require_on(space);
  InclusionReport report;
  if (maps.arity == Arity::Two) return report;
  const Mapping& S = maps.S;
  const Mapping& T = maps.T;
  const Mapping& f = maps.get_f();

  if (space.is_finite()) {
    if (maps.arity == Arity::Three) {
      report.checks.push_back(finite_inclusion(space, "SX|TX subset fX", {&S, &T}, f));
    } else {
      const Mapping& g = maps.get_g();
      report.checks.push_back(finite_inclusion(space, "SX subset fX", {&S}, f));
      report.checks.push_back(finite_inclusion(space, "TX subset fX", {&T}, f));
      report.checks.push_back(
          merge_equal("fX = gX", finite_inclusion(space, "", {&f}, g), finite_inclusion(space, "", {&g}, f)));
    }
    return report;
  }

  report.sampled = true;
  PairSource src = sampling;
  if (src.is_exhaustive() || src.samples == 0) src = PairSource::sampled(kDefaultInclusionSamples, sampling.seed, sampling.box);
  Rng rng(src.seed);
  const Box box = resolve_box(space, src);
  std::vector<Vector> samples;
  samples.reserve(src.samples);
  for (std::size_t i = 0; i < src.samples; ++i) samples.push_back(rng.in_box(box));

  if (maps.arity == Arity::Three) {
    report.checks.push_back(affine_inclusion(space, "SX|TX subset fX", {&S, &T}, f, samples));
  } else {
    const Mapping& g = maps.get_g();
    report.checks.push_back(affine_inclusion(space, "SX subset fX", {&S}, f, samples));
    report.checks.push_back(affine_inclusion(space, "TX subset fX", {&T}, f, samples));
    report.checks.push_back(merge_equal("fX = gX", affine_inclusion(space, "", {&f}, g, samples),
                                        affine_inclusion(space, "", {&g}, f, samples)));
  }
  return report;
}

}  // namespace cofix
