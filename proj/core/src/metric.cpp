#include "cofix/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cofix/error.hpp"
#include "cofix/random.hpp"

namespace cofix {

std::string_view to_string(Flavor flavor) noexcept {
  return flavor == Flavor::FiniteExplicit ? "finite_explicit" : "euclidean_affine";
}

Point Point::coords(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return Point(std::move(out));
}

std::size_t Point::index() const {
  if (const auto* i = std::get_if<std::size_t>(&rep_)) return *i;
  throw Error(ErrorKind::Domain, "point is a coordinate vector, not an index");
}

const Vector& Point::vector() const {
  if (const auto* v = std::get_if<Vector>(&rep_)) return *v;
  throw Error(ErrorKind::Domain, "point is an index, not a coordinate vector");
}

bool operator==(const Point& a, const Point& b) {
  if (a.is_index() != b.is_index()) return false;
  if (a.is_index()) return a.index() == b.index();
  const auto& u = a.vector();
  const auto& v = b.vector();
  return u.size() == v.size() && (u.array() == v.array()).all();
}

bool operator<(const Point& a, const Point& b) {
  if (a.is_index() != b.is_index()) return a.is_index();
  if (a.is_index()) return a.index() < b.index();
  const auto& u = a.vector();
  const auto& v = b.vector();
  return std::lexicographical_compare(u.data(), u.data() + u.size(), v.data(), v.data() + v.size());
}

std::string Point::str() const {
  std::ostringstream os;
  if (is_index()) {
    os << index();
  } else {
    os.precision(17);
    os << '(';
    const auto& v = vector();
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ')';
  }
  return os.str();
}

Box Box::cube(std::size_t dimension, double lo, double hi) {
  const auto m = static_cast<Eigen::Index>(dimension);
  return Box{Vector::Constant(m, lo), Vector::Constant(m, hi)};
}

MetricSpace MetricSpace::finite(std::size_t n, std::vector<double> table) {
  if (n == 0) throw Error(ErrorKind::Domain, "finite metric space needs at least one point");
  if (table.size() != n * n) {
    throw Error(ErrorKind::Domain, "distance table has " + std::to_string(table.size()) +
                                       " entries, expected " + std::to_string(n * n));
  }
  for (double v : table) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "distance table contains a non-finite entry");
  }
  MetricSpace s;
  s.flavor_ = Flavor::FiniteExplicit;
  s.size_ = n;
  s.complete_ = true;
  s.table_ = std::move(table);
  return s;
}

MetricSpace MetricSpace::finite(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorKind::Domain, "distance table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return finite(n, std::move(flat));
}

MetricSpace MetricSpace::euclidean(std::size_t dimension, bool complete) {
  if (dimension == 0) throw Error(ErrorKind::Domain, "Euclidean space needs dimension >= 1");
  MetricSpace s;
  s.flavor_ = Flavor::EuclideanAffine;
  s.size_ = dimension;
  s.complete_ = complete;
  return s;
}

MetricSpace MetricSpace::with_point_tolerance(double tol) const {
  MetricSpace s = *this;
  s.point_tolerance_ = tol;
  return s;
}

bool MetricSpace::contains(const Point& p) const noexcept {
  if (is_finite()) return p.is_index() && p.index() < size_;
  return !p.is_index() && static_cast<std::size_t>(p.vector().size()) == size_;
}

void MetricSpace::require(const Point& p) const {
  if (!contains(p)) {
    throw Error(ErrorKind::Domain, "point " + p.str() + " is not in the " +
                                       std::string(to_string(flavor_)) + " space of size " +
                                       std::to_string(size_));
  }
}

bool MetricSpace::same(const Point& a, const Point& b) const {
  if (is_finite()) return a.index() == b.index();
  return distance(*this, a, b) <= point_tolerance_;
}

MetricSpace MetricSpace::subspace(std::span<const std::size_t> indices) const {
  if (!is_finite()) throw Error(ErrorKind::Domain, "subspace() needs a finite space");
  const std::size_t k = indices.size();
  std::vector<double> t(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (indices[a] >= size_ || indices[b] >= size_) throw Error(ErrorKind::Domain, "subspace index out of range");
      t[a * k + b] = table(indices[a], indices[b]);
    }
  }
  return finite(k, std::move(t));
}

std::vector<Point> MetricSpace::points() const {
  if (!is_finite()) throw Error(ErrorKind::Domain, "points() needs a finite space");
  std::vector<Point> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(Point::at(i));
  return out;
}

double distance(const MetricSpace& space, const Point& a, const Point& b) {
  space.require(a);
  space.require(b);
  if (space.is_finite()) return space.table(a.index(), b.index());
  return (a.vector() - b.vector()).norm();
}

double default_tolerance(const MetricSpace& space) noexcept {
  return space.is_finite() ? 1e-12 : 1e-9;
}

bool AxiomReport::passed() const noexcept {
  return std::all_of(axioms.begin(), axioms.end(), [](const auto& a) { return a.passed; });
}

const AxiomResult& AxiomReport::operator[](std::string_view name) const {
  for (const auto& a : axioms) {
    if (a.axiom == name) return a;
  }
  throw Error(ErrorKind::Domain, "no axiom named " + std::string(name));
}

namespace {

AxiomResult named(std::string axiom) {
  AxiomResult r;
  r.axiom = std::move(axiom);
  return r;
}

void record(AxiomResult& r, double magnitude, std::vector<std::size_t> witness) {
  // keeps the largest violation; ties go to the first (lexicographically smallest) witness
  if (r.passed || magnitude > r.magnitude) {
    r.passed = false;
    r.magnitude = magnitude;
    r.witness = std::move(witness);
  }
}

AxiomReport verify_finite(const MetricSpace& space, double tol) {
  const std::size_t n = space.size();
  AxiomResult identity = named("identity"), symmetry = named("symmetry"), positivity = named("positivity"),
              triangle = named("triangle");

  for (std::size_t i = 0; i < n; ++i) {
    const double dii = std::abs(space.table(i, i));
    if (dii > tol) record(identity, dii, {i, i});
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dij = space.table(i, j);
      const double asym = std::abs(dij - space.table(j, i));
      if (asym > tol) record(symmetry, asym, {i, j});
      // strictly positive, exact comparison
      if (!(dij > 0.0)) record(positivity, -dij, {i, j});
    }
  }

  std::size_t checked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = space.table(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        ++checked;
        const double excess = space.table(i, k) - (dij + space.table(j, k));
        if (excess > tol) record(triangle, excess, {i, j, k});
      }
    }
  }

  AxiomReport report;
  report.axioms = {identity, symmetry, positivity, triangle};
  report.checked = checked;
  for (auto& a : report.axioms) {
    for (auto w : a.witness) a.witness_points.push_back(Point::at(w));
  }
  return report;
}

AxiomReport verify_euclidean(const MetricSpace& space, double tol, const AxiomSampling& sampling) {
  Rng rng(sampling.seed);
  const Box box = Box::cube(space.dimension(), -sampling.box, sampling.box);
  AxiomResult identity = named("identity"), symmetry = named("symmetry"), positivity = named("positivity"),
              triangle = named("triangle");
  auto fail = [](AxiomResult& r, double mag, std::vector<Point> pts) {
    if (r.passed || mag > r.magnitude) {
      r.passed = false;
      r.magnitude = mag;
      r.witness_points = std::move(pts);
    }
  };
  for (std::size_t s = 0; s < sampling.samples; ++s) {
    const Point a = Point::coords(rng.in_box(box));
    const Point b = Point::coords(rng.in_box(box));
    const Point c = Point::coords(rng.in_box(box));
    const double daa = distance(space, a, a);
    if (daa > tol) fail(identity, daa, {a, a});
    const double dab = distance(space, a, b);
    const double asym = std::abs(dab - distance(space, b, a));
    if (asym > tol) fail(symmetry, asym, {a, b});
    if (!(a == b) && !(dab > 0.0)) fail(positivity, -dab, {a, b});
    const double excess = distance(space, a, c) - (dab + distance(space, b, c));
    if (excess > tol + 1e-12 * (1.0 + dab)) fail(triangle, excess, {a, b, c});
  }
  AxiomReport report;
  report.axioms = {identity, symmetry, positivity, triangle};
  report.checked = sampling.samples;
  report.sampled = true;
  return report;
}

}  // namespace

AxiomReport verify_metric_axioms(const MetricSpace& space, double tolerance, const AxiomSampling& sampling) {
  return space.is_finite() ? verify_finite(space, tolerance) : verify_euclidean(space, tolerance, sampling);
}

}  // namespace cofix
