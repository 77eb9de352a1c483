#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cofix/contraction.hpp"
#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"
#include "cofix/solver.hpp"

namespace cofix {

/// A subset E of a finite universe on which f is one-to-one with f(E) = f(X).
/// The preimage chosen for each image value is the smallest index.
struct Restriction {
  std::vector<std::size_t> subset;  // E, ascending
  std::vector<std::size_t> image;   // f(E), in the order of E
  std::vector<std::optional<std::size_t>> section;  // section[y] = chosen preimage of y in E
};

/// Finite spaces only; throws Error{Domain} on R^m (where the section comes
/// from inverting an injective affine f instead).
Restriction injective_restriction(const MetricSpace& space, const Mapping& f);

/// The pair of maps induced on the image fE (fE1 for four maps) together with
/// everything needed to translate between the image and the original space.
///
/// On a finite universe the image is a subspace renumbered 0..k-1 in the
/// order of `image`; on R^m the image is the whole space and the sections are
/// affine inverses of f and g.
struct ReductionWitness {
  Arity arity = Arity::Three;
  MetricSpace image_space = MetricSpace::euclidean(1);
  std::vector<std::size_t> image;  // finite: global index of each image-space point
  std::optional<Restriction> restriction_f;  // E (E1)
  std::optional<Restriction> restriction_g;  // E2
  std::optional<Mapping> inverse_f;          // R^m only
  std::optional<Mapping> inverse_g;
  Mapping first = Mapping::table({});   // g(fx) = Sx, or A(fx) = Sx
  Mapping second = Mapping::table({});  // h(fx) = Tx, or B(gx) = Tx

  Point to_global(const Point& local) const;
  /// Throws Error{Domain} if `global` is not in the image.
  Point to_local(const Point& global) const;
  /// Chosen preimage under f (in E / E1) of an image point, in global terms.
  Point section_f(const Point& y) const;
  /// Chosen preimage under g (in E2); four maps only.
  Point section_g(const Point& y) const;
};

/// g(fx) = Sx and h(fx) = Tx on fE. Throws Error{RangeInclusionFailure}
/// naming the escaping value when SX u TX is not inside fX.
ReductionWitness induce_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                              const Restriction& E);
/// Same, building E (finite) or the affine inverse of f (R^m) internally.
/// Throws Error{SectionUnavailable} for a non-invertible affine f.
ReductionWitness induce_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f);

/// A(fx) = Sx via E1 and B(gx) = Tx via E2, both on fE1 = gE2. Throws
/// Error{ImageMismatch} when fX != gX and Error{RangeInclusionFailure} when
/// SX or TX leaves fX.
ReductionWitness induce_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                             const Mapping& g, const Restriction& E1, const Restriction& E2);
ReductionWitness induce_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                             const Mapping& g);

struct Coincidence {
  Point x;      // coincidence point
  Point value;  // point of coincidence, Tx = fx
};

/// Solutions of the coincidence equations. On R^m the solution set is an
/// affine subspace: `points` holds one particular solution and `directions` a
/// basis of its direction space (empty when the solution is isolated).
struct CoincidenceSet {
  std::vector<Coincidence> points;
  std::vector<Vector> directions;

  bool empty() const noexcept { return points.empty(); }
  std::size_t solution_dimension() const noexcept { return directions.size(); }
};

/// x with Tx = fx.
CoincidenceSet coincidence_points(const MetricSpace& space, const Mapping& T, const Mapping& f);
/// x with Sx = Tx = fx.
CoincidenceSet coincidence_points(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f);

struct WeakCompatibility {
  bool compatible = true;
  std::optional<Point> witness;  // coincidence point where T f x != f T x
  std::size_t coincidences = 0;
};

/// T(f(x)) = f(T(x)) at every coincidence point x (vacuous if there is none).
WeakCompatibility is_weakly_compatible(const MetricSpace& space, const Mapping& T, const Mapping& f);

/// For v the point of coincidence of a weakly compatible pair, w = Tv equals
/// fv and v. Returns w or throws Error{LiftMismatch}.
Point lift_to_common_fixed_point(const MetricSpace& space, const Mapping& T, const Mapping& f, const Point& v);

struct StageEntry {
  std::string stage;
  bool ok = true;
  std::string detail;
};

struct CoincidenceReport {
  Arity arity = Arity::Three;
  std::vector<StageEntry> stages;
  std::optional<ReductionWitness> witness;
  SolveReport induced_solve;  // trace in image-space coordinates
  Point coincidence_point;    // z: Sz = fz (and Tz = fz for three maps)
  std::optional<Point> partner_point;  // v: gv = fz = Tv (four maps)
  Point point_of_coincidence;          // fz
  std::vector<Coincidence> coincidences;  // all coincidences found by the uniqueness scan
  std::optional<WeakCompatibility> compatibility_first;   // (S, f)
  std::optional<WeakCompatibility> compatibility_second;  // (T, f) or (T, g)
  std::optional<Point> common_fixed_point;
  bool coincidence_only = false;  // no lifting requested, or weak compatibility failed
};

struct PipelineOptions {
  SolveOptions solve;
  /// When set, the contractive condition is checked over this source as the
  /// first stage; otherwise it is the caller's precondition.
  std::optional<PairSource> condition_source;
};

/// Three maps: restrict, induce (g, h), iterate on fE, pull back, check the
/// point of coincidence is unique, then lift through weak compatibility of
/// (S,f) and (T,f). Errors carry the stage that raised them. If weak
/// compatibility fails the report is returned coincidence-only.
CoincidenceReport solve_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                              const Coefficients& c, const Point& x0, const PipelineOptions& options = {});
/// Four maps, lifting through (S,f) and (T,g); the two lifts must agree.
CoincidenceReport solve_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                             const Mapping& g, const Coefficients& c, const Point& x0,
                             const PipelineOptions& options = {});

/// Pipeline prefixes that stop at the unique point of coincidence.
CoincidenceReport solve_three_coincidence(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                          const Mapping& f, const Coefficients& c, const Point& x0,
                                          const PipelineOptions& options = {});
CoincidenceReport solve_four_coincidence(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                         const Mapping& f, const Mapping& g, const Coefficients& c,
                                         const Point& x0, const PipelineOptions& options = {});

}  // namespace cofix
