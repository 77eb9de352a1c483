#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cofix/metric.hpp"

namespace cofix {

/// x -> linear * x + offset on R^m.
struct AffineMap {
  Matrix linear;
  Vector offset;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(offset.size()); }
  Vector operator()(const Vector& x) const { return linear * x + offset; }
};

/// A total self-map of a metric space: an index table on a finite universe or
/// an affine transform on R^m.
class Mapping {
public:
  static Mapping table(std::vector<std::size_t> images);
  static Mapping affine(Matrix linear, Vector offset);
  static Mapping identity(const MetricSpace& space);
  static Mapping constant(std::size_t n, std::size_t value);

  bool is_table() const noexcept { return std::holds_alternative<std::vector<std::size_t>>(rep_); }
  const std::vector<std::size_t>& images() const;
  const AffineMap& affine() const;

  Point operator()(const Point& x) const;
  std::size_t operator()(std::size_t x) const { return images()[x]; }

  /// Throws Error{Domain} unless the map is total on `space` and lands in it.
  void require_on(const MetricSpace& space, std::string_view name = "mapping") const;

  /// Composition (*this) o inner.
  Mapping after(const Mapping& inner) const;

  friend bool operator==(const Mapping& a, const Mapping& b);

private:
  explicit Mapping(std::vector<std::size_t> t) : rep_(std::move(t)) {}
  explicit Mapping(AffineMap a) : rep_(std::move(a)) {}
  std::variant<std::vector<std::size_t>, AffineMap> rep_;
};

enum class Arity { Two = 2, Three = 3, Four = 4 };

/// S, T and, for arity three/four, f and g.
struct MappingSet {
  Mapping S;
  Mapping T;
  std::optional<Mapping> f;
  std::optional<Mapping> g;
  Arity arity = Arity::Two;

  static MappingSet two(Mapping S, Mapping T);
  static MappingSet three(Mapping S, Mapping T, Mapping f);
  static MappingSet four(Mapping S, Mapping T, Mapping f, Mapping g);

  /// Arity-driven presence checks plus totality of every map on `space`.
  void require_on(const MetricSpace& space) const;

  const Mapping& get_f() const;
  const Mapping& get_g() const;
};

}  // namespace cofix
