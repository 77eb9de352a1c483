#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"

namespace cofix {

/// (alpha, beta, gamma, delta, L) of the Berinde-type contractive condition
///
///   d(Sx,Ty) <= alpha d(u,Sx) + beta d(w,Ty) + gamma d(u,w)
///               + delta [d(w,Sx) + d(u,Ty)]
///               + L min{d(u,Sx), d(w,Ty), d(w,Sx), d(u,Ty)}
///
/// where (u, w) = (x, y) for two maps, (fx, fy) for three, (fx, gy) for four.
struct Coefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double L = 0.0;

  /// alpha + beta + gamma + 2 delta
  double weight() const noexcept { return alpha + beta + gamma + 2.0 * delta; }
  std::array<double, 5> as_array() const noexcept { return {alpha, beta, gamma, delta, L}; }
  static Coefficients from_array(const std::array<double, 5>& a) { return {a[0], a[1], a[2], a[3], a[4]}; }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

/// Returns `c` unchanged or throws Error{BoundViolation} naming the first
/// failed inequality.
Coefficients validate_coefficients(const Coefficients& c);

/// Left-hand side and the five right-hand-side distance terms at one pair.
/// The condition is linear in the coefficients: rhs = sum c_i * features_i.
struct ConditionTerms {
  double lhs = 0.0;
  std::array<double, 5> features{};  // d(u,Sx), d(w,Ty), d(u,w), d(w,Sx)+d(u,Ty), min{...}

  double rhs(const Coefficients& c) const noexcept;
  double margin(const Coefficients& c) const noexcept { return lhs - rhs(c); }
};

/// Terms of the condition selected by `maps.arity` at the pair (x, y).
ConditionTerms condition_terms(const MetricSpace& space, const MappingSet& maps, const Point& x, const Point& y);

double rhs_two(const Coefficients& c, const MetricSpace& space, const Mapping& S, const Mapping& T,
               const Point& x, const Point& y);
double rhs_three(const Coefficients& c, const MetricSpace& space, const Mapping& S, const Mapping& T,
                 const Mapping& f, const Point& x, const Point& y);
double rhs_four(const Coefficients& c, const MetricSpace& space, const Mapping& S, const Mapping& T,
                const Mapping& f, const Mapping& g, const Point& x, const Point& y);

/// Where the (x, y) pairs of a condition check come from.
struct PairSource {
  enum class Kind { Exhaustive, Sampled };

  Kind kind = Kind::Exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<Box> box;  // Euclidean sampling region; ignored on finite spaces

  static PairSource exhaustive() { return {}; }
  static PairSource sampled(std::size_t samples, std::uint64_t seed, std::optional<Box> box = {}) {
    return {Kind::Sampled, samples, seed, std::move(box)};
  }

  bool is_exhaustive() const noexcept { return kind == Kind::Exhaustive; }
};

/// Enumerates the pairs of `source` (all n^2 ordered pairs, or seeded samples).
/// Throws Error{ExhaustiveOnInfinite} for exhaustive sources on R^m.
std::vector<std::pair<Point, Point>> materialize_pairs(const MetricSpace& space, const PairSource& source);

struct ViolationReport {
  std::string condition;  // "condition_two", "condition_three", "condition_four"
  bool satisfied = true;
  Point worst_x;
  Point worst_y;
  double worst_margin = 0.0;  // max over pairs of LHS - RHS
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  std::size_t pairs_checked = 0;
  PairSource source;
  double tolerance = 0.0;
};

/// Checks the condition selected by `maps.arity` over the pair source, with
/// `tolerance` (default: flavor tolerance) added to the right-hand side. The
/// worst pair maximizes LHS - RHS; ties go to the lexicographically smallest pair.
ViolationReport check_condition(const MetricSpace& space, const MappingSet& maps, const Coefficients& c,
                                const PairSource& source, std::optional<double> tolerance = {});

ViolationReport check_condition_two(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                    const Coefficients& c, const PairSource& source,
                                    std::optional<double> tolerance = {});
ViolationReport check_condition_three(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                      const Mapping& f, const Coefficients& c, const PairSource& source,
                                      std::optional<double> tolerance = {});
ViolationReport check_condition_four(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                     const Mapping& f, const Mapping& g, const Coefficients& c,
                                     const PairSource& source, std::optional<double> tolerance = {});

struct InclusionCheck {
  std::string relation;           // e.g. "SX|TX subset fX", "fX = gX"
  bool holds = true;
  std::optional<Point> argument;  // x whose image escapes
  std::optional<Point> value;     // the escaping image
  std::string detail;
};

struct InclusionReport {
  std::vector<InclusionCheck> checks;
  bool sampled = false;

  bool holds() const noexcept;
  const InclusionCheck* first_failure() const noexcept;
};

/// Image-inclusion hypotheses for arity three (SX u TX in fX) and four
/// (SX in fX, TX in fX, fX = gX). Exact on finite spaces; on R^m the images of
/// sampled points are tested for membership in the affine image of f (and g).
/// Arity two yields an empty (holding) report.
InclusionReport check_range_inclusions(const MetricSpace& space, const MappingSet& maps,
                                       const PairSource& sampling = {});

/// Exact image of a table mapping, as a membership mask over the universe.
std::vector<bool> image_mask(const MetricSpace& space, const Mapping& map);

/// Whether `y` lies in the affine image of `f` (within the space's point tolerance).
bool in_affine_image(const MetricSpace& space, const Mapping& f, const Vector& y);

}  // namespace cofix
