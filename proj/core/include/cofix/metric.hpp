#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace cofix {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Flavor { FiniteExplicit, EuclideanAffine };

std::string_view to_string(Flavor flavor) noexcept;

/// An element of a metric space: an index into a finite universe, or a
/// coordinate vector in R^m.
class Point {
public:
  Point() : rep_(std::size_t{0}) {}
  static Point at(std::size_t index) { return Point(index); }
  static Point coords(Vector v) { return Point(std::move(v)); }
  static Point coords(std::initializer_list<double> v);

  bool is_index() const noexcept { return std::holds_alternative<std::size_t>(rep_); }
  std::size_t index() const;
  const Vector& vector() const;

  /// Exact structural equality (same index, or bitwise-equal coordinates).
  friend bool operator==(const Point& a, const Point& b);
  /// Lexicographic order; indices sort before vectors.
  friend bool operator<(const Point& a, const Point& b);

  std::string str() const;

private:
  explicit Point(std::size_t i) : rep_(i) {}
  explicit Point(Vector v) : rep_(std::move(v)) {}
  std::variant<std::size_t, Vector> rep_;
};

/// Axis-aligned box used to sample Euclidean points.
struct Box {
  Vector lower;
  Vector upper;

  static Box cube(std::size_t dimension, double lo, double hi);
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(lower.size()); }
};

class MetricSpace {
public:
  /// Finite universe {0..n-1} with a row-major n*n distance table. The table
  /// is stored as given; use verify_metric_axioms to check it.
  static MetricSpace finite(std::size_t n, std::vector<double> table);
  static MetricSpace finite(const std::vector<std::vector<double>>& rows);
  /// R^m with the Euclidean norm. `complete` is a declared assumption.
  static MetricSpace euclidean(std::size_t dimension, bool complete = true);

  Flavor flavor() const noexcept { return flavor_; }
  bool is_finite() const noexcept { return flavor_ == Flavor::FiniteExplicit; }
  /// Universe size (finite) or ambient dimension (Euclidean).
  std::size_t size() const noexcept { return size_; }
  std::size_t dimension() const noexcept { return size_; }
  bool complete() const noexcept { return complete_; }

  /// Tolerance used for every "x = y" decision between coordinate points.
  double point_tolerance() const noexcept { return point_tolerance_; }
  MetricSpace with_point_tolerance(double tol) const;

  /// Raw table entry, no bounds checking beyond the debug assert.
  double table(std::size_t i, std::size_t j) const noexcept { return table_[i * size_ + j]; }
  const std::vector<double>& table() const noexcept { return table_; }

  bool contains(const Point& p) const noexcept;
  /// Throws Error{Domain} if `p` does not belong to the space.
  void require(const Point& p) const;

  /// Equality within point_tolerance for Euclidean points; exact for indices.
  bool same(const Point& a, const Point& b) const;

  /// Finite subspace on the listed indices, renumbered 0..k-1 in list order.
  MetricSpace subspace(std::span<const std::size_t> indices) const;

  std::vector<Point> points() const;  // finite only

private:
  MetricSpace() = default;

  Flavor flavor_ = Flavor::FiniteExplicit;
  std::size_t size_ = 0;
  bool complete_ = true;
  double point_tolerance_ = 1e-9;
  std::vector<double> table_;
};

/// d(a, b). Table lookup on finite spaces, Euclidean norm otherwise.
double distance(const MetricSpace& space, const Point& a, const Point& b);

/// Default slack for condition checks and solver tolerances on each flavor.
double default_tolerance(const MetricSpace& space) noexcept;

struct AxiomResult {
  std::string axiom;  // "identity", "symmetry", "positivity", "triangle"
  bool passed = true;
  std::vector<std::size_t> witness;  // violating pair or triple (finite)
  std::vector<Point> witness_points;
  double magnitude = 0.0;            // size of the violation
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;
  std::size_t checked = 0;  // pairs/triples examined for the triangle axiom
  bool sampled = false;

  bool passed() const noexcept;
  const AxiomResult& operator[](std::string_view name) const;
};

struct AxiomSampling {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double box = 10.0;  // cube [-box, box]^m
};

/// Exhaustive over all pairs and triples on finite spaces; sampled triples on
/// Euclidean spaces (always passes up to rounding, kept as a self-test).
AxiomReport verify_metric_axioms(const MetricSpace& space, double tolerance = 0.0,
                                 const AxiomSampling& sampling = {});

}  // namespace cofix
