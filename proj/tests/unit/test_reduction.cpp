#include <doctest.h>

#include <set>

#include "brute.hpp"
#include "cofix/error.hpp"
#include "cofix/generator.hpp"
#include "cofix/oracle.hpp"
#include "cofix/reduction.hpp"
#include "cofix/solver.hpp"

using namespace cofix;

namespace {

MetricSpace line3() { return brute::space(brute::abs_table({0, 1, 2})); }

Mapping scale(double a) { return Mapping::affine(Matrix::Constant(1, 1, a), Vector::Zero(1)); }

template <typename F>
ErrorKind thrown(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("nothing thrown");
  return ErrorKind::Schema;
}

template <typename F>
std::string thrown_stage(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.stage();
  }
  return "(none)";
}

// the f = [0,0,1] instance used all over
const Mapping f001 = Mapping::table({0, 0, 1});
const Mapping zero3 = Mapping::constant(3, 0);
const Coefficients half{0, 0, 0.5, 0, 0};

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("injective restriction examples") {
  const MetricSpace s = line3();
  const Restriction id = injective_restriction(s, Mapping::identity(s));
  CHECK(id.subset == std::vector<std::size_t>{0, 1, 2});

  const Restriction c = injective_restriction(s, zero3);
  CHECK(c.subset == std::vector<std::size_t>{0});
  CHECK(c.image == std::vector<std::size_t>{0});

  const Restriction r = injective_restriction(s, f001);
  CHECK(r.subset == std::vector<std::size_t>{0, 2});
  CHECK(r.image == std::vector<std::size_t>{0, 1});
  REQUIRE(r.section.size() == 3);
  CHECK(r.section[0] == 0u);
  CHECK(r.section[1] == 2u);
  CHECK_FALSE(r.section[2].has_value());

  CHECK(thrown([] { injective_restriction(MetricSpace::euclidean(1), scale(2)); }) == ErrorKind::Domain);
}

TEST_CASE("restriction correctness over every map on four points") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 2, 3}));
  std::size_t maps = 0;
  for (std::size_t code = 0; code < 256; ++code) {
    brute::Map f(4);
    for (std::size_t i = 0, c = code; i < 4; ++i, c /= 4) f[i] = c % 4;
    const Restriction r = injective_restriction(s, Mapping::table(f));
    const auto fx = brute::image(f);
    CHECK(r.subset.size() == fx.size());
    std::set<std::size_t> seen;
    for (std::size_t k = 0; k < r.subset.size(); ++k) {
      const std::size_t x = r.subset[k];
      CHECK(r.image[k] == f[x]);
      CHECK(seen.insert(f[x]).second);
      // smallest preimage
      for (std::size_t y = 0; y < x; ++y) CHECK(f[y] != f[x]);
    }
    CHECK(std::vector<std::size_t>(seen.begin(), seen.end()) == fx);
    ++maps;
  }
  CHECK(maps == 256);
}

TEST_CASE("induce_three examples") {
  const MetricSpace s = line3();
  const Mapping S = Mapping::table({1, 2, 2});
  const Mapping T = Mapping::table({0, 0, 1});
  const ReductionWitness id = induce_three(s, S, T, Mapping::identity(s));
  CHECK(id.image == std::vector<std::size_t>{0, 1, 2});
  CHECK(id.first.images() == S.images());
  CHECK(id.second.images() == T.images());

  const ReductionWitness w = induce_three(s, zero3, zero3, f001);
  CHECK(w.image == std::vector<std::size_t>{0, 1});
  CHECK(w.image_space.size() == 2);
  CHECK(w.image_space.table(0, 1) == 1.0);
  CHECK(w.first.images() == std::vector<std::size_t>{0, 0});
  CHECK(w.second.images() == std::vector<std::size_t>{0, 0});
  CHECK(w.to_global(Point::at(1)) == Point::at(1));
  CHECK(w.section_f(Point::at(1)) == Point::at(2));
  CHECK(thrown([&] { w.to_local(Point::at(2)); }) == ErrorKind::Domain);

  const MetricSpace two = brute::space(brute::abs_table({0, 1}));
  try {
    induce_three(two, Mapping::identity(two), Mapping::identity(two), Mapping::constant(2, 0));
    FAIL("range inclusion accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RangeInclusionFailure);
    CHECK(std::string(e.what()).find('1') != std::string::npos);
  }
}

TEST_CASE("induce_four examples") {
  const MetricSpace s = line3();
  const Mapping id = Mapping::identity(s);
  const Mapping S = Mapping::table({1, 2, 2});
  const Mapping T = Mapping::table({0, 0, 1});
  const ReductionWitness w = induce_four(s, S, T, id, id);
  CHECK(w.first.images() == S.images());
  CHECK(w.second.images() == T.images());

  const ReductionWitness z = induce_four(s, zero3, zero3, id, id);
  CHECK(z.first.images() == std::vector<std::size_t>{0, 0, 0});
  CHECK(z.second.images() == std::vector<std::size_t>{0, 0, 0});

  // f = g reproduces the three-map construction
  const ReductionWitness a = induce_four(s, zero3, zero3, f001, f001);
  const ReductionWitness b = induce_three(s, zero3, zero3, f001);
  CHECK(a.image == b.image);
  CHECK(a.first.images() == b.first.images());
  CHECK(a.second.images() == b.second.images());

  const MetricSpace two = brute::space(brute::abs_table({0, 1}));
  const Mapping z2 = Mapping::constant(2, 0);
  CHECK(thrown([&] { induce_four(two, z2, z2, z2, Mapping::identity(two)); }) == ErrorKind::ImageMismatch);
  CHECK(thrown([&] { induce_four(s, Mapping::table({2, 2, 2}), zero3, f001, f001); }) ==
        ErrorKind::RangeInclusionFailure);
}

TEST_CASE("affine reduction through the inverse of f") {
  const MetricSpace line = MetricSpace::euclidean(1);
  const ReductionWitness w = induce_three(line, scale(1.0 / 3.0), scale(0.25), scale(2.0));
  REQUIRE(w.inverse_f.has_value());
  // g(2x) = x/3 so g(y) = y/6
  CHECK(w.first(Point::coords({6.0})).vector()[0] == doctest::Approx(1.0));
  CHECK(w.second(Point::coords({8.0})).vector()[0] == doctest::Approx(1.0));
  CHECK(w.section_f(Point::coords({3.0})).vector()[0] == doctest::Approx(1.5));
  CHECK(thrown([&] { induce_three(line, scale(0.5), scale(0.5), scale(0.0)); }) == ErrorKind::SectionUnavailable);
}

TEST_CASE("commuting square on generated instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 2 + seed % 12;
    rec.arity = seed % 2 ? Arity::Three : Arity::Four;
    rec.distinct_g = seed % 4 == 0;
    rec.f_kind = FKind::NonInjective;
    const Instance inst = generate_instance(rec);
    const auto& S = inst.maps.S;
    const auto& T = inst.maps.T;
    const auto& f = inst.maps.get_f();
    if (inst.maps.arity == Arity::Three) {
      const Restriction E = injective_restriction(inst.space, f);
      const ReductionWitness w = induce_three(inst.space, S, T, f, E);
      for (std::size_t x : E.subset) {
        CHECK(w.to_global(w.first(w.to_local(Point::at(f(x))))) == Point::at(S(x)));
        CHECK(w.to_global(w.second(w.to_local(Point::at(f(x))))) == Point::at(T(x)));
      }
    } else {
      const auto& g = inst.maps.get_g();
      const Restriction E1 = injective_restriction(inst.space, f);
      const Restriction E2 = injective_restriction(inst.space, g);
      const ReductionWitness w = induce_four(inst.space, S, T, f, g, E1, E2);
      for (std::size_t x : E1.subset) CHECK(w.to_global(w.first(w.to_local(Point::at(f(x))))) == Point::at(S(x)));
      for (std::size_t x : E2.subset) CHECK(w.to_global(w.second(w.to_local(Point::at(g(x))))) == Point::at(T(x)));
    }
  }
}

TEST_CASE("fixed points of the induced pair are the points of coincidence") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 2 + seed % 15;
    rec.arity = Arity::Three;
    rec.f_kind = seed % 3 ? FKind::NonInjective : FKind::Permutation;
    const Instance inst = generate_instance(rec);
    REQUIRE(inst.hypotheses_verified);
    const ReductionWitness w = induce_three(inst.space, inst.maps.S, inst.maps.T, inst.maps.get_f());
    std::vector<std::size_t> fixed;
    for (std::size_t y = 0; y < w.image.size(); ++y) {
      if (w.first(y) == y && w.second(y) == y) fixed.push_back(w.image[y]);
    }
    std::sort(fixed.begin(), fixed.end());
    const OracleResult o = enumerate_coincidence(inst.space, inst.maps);
    CHECK(fixed == o.points_of_coincidence);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("coincidence points") {
  const MetricSpace s = line3();
  const CoincidenceSet all = coincidence_points(s, f001, f001);
  CHECK(all.points.size() == 3);

  const CoincidenceSet c = coincidence_points(s, zero3, f001);
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[0].x == Point::at(0));
  CHECK(c.points[1].x == Point::at(1));
  for (const auto& p : c.points) CHECK(p.value == Point::at(0));

  const MetricSpace line = MetricSpace::euclidean(1);
  const CoincidenceSet h = coincidence_points(line, scale(0.5), scale(1.0));
  REQUIRE(h.points.size() == 1);
  CHECK(std::abs(h.points[0].x.vector()[0]) < 1e-12);
  CHECK(h.solution_dimension() == 0);

  // x/2 = x + 1 has the single solution -2
  const Mapping shifted = Mapping::affine(Matrix::Constant(1, 1, 1.0), Vector::Constant(1, 1.0));
  const CoincidenceSet sh = coincidence_points(line, scale(0.5), shifted);
  REQUIRE(sh.points.size() == 1);
  CHECK(sh.points[0].x.vector()[0] == doctest::Approx(-2.0));
  CHECK(sh.points[0].value.vector()[0] == doctest::Approx(-1.0));

  // x = x + 1 has none, x = x has a line of them
  CHECK(coincidence_points(line, scale(1.0), shifted).empty());
  CHECK(coincidence_points(line, scale(1.0), scale(1.0)).solution_dimension() == 1);
}

TEST_CASE("weak compatibility") {
  const MetricSpace s = line3();
  CHECK(is_weakly_compatible(s, f001, f001).compatible);

  const Mapping f = Mapping::table({0, 2, 2});
  const Mapping T = Mapping::table({0, 2, 0});
  const WeakCompatibility w = is_weakly_compatible(s, T, f);
  CHECK_FALSE(w.compatible);
  REQUIRE(w.witness.has_value());
  CHECK(*w.witness == Point::at(1));
  CHECK(w.coincidences == 2);

  const WeakCompatibility none = is_weakly_compatible(s, Mapping::table({1, 2, 0}), Mapping::identity(s));
  CHECK(none.compatible);
  CHECK(none.coincidences == 0);

  // affine: x/2 and 2x meet only at 0 and commute there
  const MetricSpace line = MetricSpace::euclidean(1);
  CHECK(is_weakly_compatible(line, scale(0.5), scale(2.0)).compatible);
  // x+1 and 2x meet at 1, T f 1 = 3, f T 1 = 4
  const Mapping plus1 = Mapping::affine(Matrix::Constant(1, 1, 1.0), Vector::Constant(1, 1.0));
  CHECK_FALSE(is_weakly_compatible(line, plus1, scale(2.0)).compatible);
}

TEST_CASE("lifting") {
  const MetricSpace s = line3();
  const Mapping id = Mapping::identity(s);
  for (std::size_t v = 0; v < 3; ++v) CHECK(lift_to_common_fixed_point(s, id, id, Point::at(v)) == Point::at(v));
  CHECK(lift_to_common_fixed_point(s, zero3, f001, Point::at(0)) == Point::at(0));

  const Mapping f = Mapping::table({0, 2, 2});
  const Mapping T = Mapping::table({0, 2, 0});
  CHECK(thrown([&] { lift_to_common_fixed_point(s, T, f, Point::at(2)); }) == ErrorKind::LiftMismatch);
  // Tv = fv but not v
  CHECK(thrown([&] { lift_to_common_fixed_point(s, zero3, Mapping::constant(3, 0), Point::at(1)); }) ==
        ErrorKind::LiftMismatch);
}

TEST_CASE("solve_three examples") {
  const MetricSpace s = line3();
  const CoincidenceReport r = solve_three(s, zero3, zero3, f001, half, Point::at(2));
  REQUIRE(r.common_fixed_point.has_value());
  CHECK(*r.common_fixed_point == Point::at(0));
  CHECK(r.point_of_coincidence == Point::at(0));
  CHECK(r.coincidence_point == Point::at(0));
  CHECK_FALSE(r.coincidence_only);
  for (const auto& st : r.stages) CHECK(st.ok);
  CHECK(r.stages.back().stage == "lift");

  // the oracle has the same single common fixed point
  const OracleResult o = enumerate_coincidence(s, MappingSet::three(zero3, zero3, f001));
  CHECK(o.common_fixed_points == std::vector<std::size_t>{0});

  const MetricSpace two = brute::space(brute::abs_table({0, 1}));
  const Mapping one = Mapping::constant(2, 1);
  const Mapping fz = Mapping::constant(2, 0);
  PipelineOptions opts;
  opts.condition_source = PairSource::exhaustive();
  CHECK(thrown_stage([&] { solve_three(two, one, one, fz, half, Point::at(0), opts); }) == "induce_three");
  CHECK(thrown([&] { solve_three(two, one, one, fz, half, Point::at(0), opts); }) ==
        ErrorKind::RangeInclusionFailure);
}

TEST_CASE("solve_four examples") {
  const MetricSpace s = line3();
  const Mapping id = Mapping::identity(s);
  const CoincidenceReport r = solve_four(s, zero3, zero3, id, id, half, Point::at(2));
  REQUIRE(r.common_fixed_point.has_value());
  CHECK(*r.common_fixed_point == Point::at(0));
  REQUIRE(r.partner_point.has_value());

  const CoincidenceReport q = solve_four(s, zero3, zero3, f001, f001, half, Point::at(1));
  REQUIRE(q.common_fixed_point.has_value());
  CHECK(*q.common_fixed_point == Point::at(0));

  const MetricSpace two = brute::space(brute::abs_table({0, 1}));
  const Mapping z2 = Mapping::constant(2, 0);
  CHECK(thrown([&] { solve_four(two, z2, z2, z2, Mapping::identity(two), half, Point::at(0)); }) ==
        ErrorKind::ImageMismatch);
  CHECK(thrown_stage([&] { solve_four(two, z2, z2, z2, Mapping::identity(two), half, Point::at(0)); }) ==
        "induce_four");
}

TEST_CASE("identity f and g degenerate to the two-map solve") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 2 + seed % 16;
    const Instance inst = generate_instance(rec);
    REQUIRE(inst.hypotheses_verified);
    const Mapping id = Mapping::identity(inst.space);
    for (std::size_t x0 = 0; x0 < inst.space.size(); x0 += 3) {
      const SolveReport p = picard_solve(inst.space, inst.maps.S, inst.maps.T, Point::at(x0), inst.coefficients);
      const CoincidenceReport a = solve_three(inst.space, inst.maps.S, inst.maps.T, id, inst.coefficients, Point::at(x0));
      const CoincidenceReport b =
          solve_four(inst.space, inst.maps.S, inst.maps.T, id, id, inst.coefficients, Point::at(x0));
      REQUIRE(p.converged());
      CHECK(*a.common_fixed_point == p.limit);
      CHECK(*b.common_fixed_point == p.limit);
      CHECK(a.induced_solve.trace.iterates == p.trace.iterates);
    }
  }

  const MetricSpace line = MetricSpace::euclidean(1);
  SolveOptions o;
  o.tol = 1e-12;
  o.max_iters = 200;
  const Coefficients c{0, 0, 0.5, 0, 0};
  const SolveReport p = picard_solve(line, scale(0.5), scale(0.5), Point::coords({3.0}), c, o);
  const CoincidenceReport a = solve_three(line, scale(0.5), scale(0.5), scale(1.0), c, Point::coords({3.0}), {o, {}});
  CHECK(a.common_fixed_point->vector()[0] == doctest::Approx(p.limit.vector()[0]).epsilon(1e-12));
  CHECK(std::abs(a.common_fixed_point->vector()[0]) < 1e-10);
}

TEST_CASE("coincidence-only variants") {
  const MetricSpace s = line3();
  const CoincidenceReport r = solve_three_coincidence(s, zero3, zero3, f001, half, Point::at(2));
  CHECK(r.coincidence_only);
  CHECK(r.point_of_coincidence == Point::at(0));
  CHECK_FALSE(r.common_fixed_point.has_value());
  CHECK(r.stages.back().stage == "uniqueness");
  CHECK(r.point_of_coincidence == *solve_three(s, zero3, zero3, f001, half, Point::at(2)).common_fixed_point);

  const Mapping id = Mapping::identity(s);
  const CoincidenceReport q = solve_four_coincidence(s, zero3, zero3, id, id, half, Point::at(1));
  CHECK(q.point_of_coincidence == Point::at(0));
  CHECK(q.coincidence_only);

  // Sx = Tx = fx only at x = 1, value 2; (T,f) fails to commute there
  const Mapping S = Mapping::constant(3, 2);
  const Mapping T = Mapping::table({0, 2, 0});
  const Mapping f = Mapping::table({0, 2, 2});
  const CoincidenceReport nc = solve_three_coincidence(s, S, T, f, half, Point::at(0));
  CHECK(nc.point_of_coincidence == Point::at(2));
  CHECK(nc.coincidence_point == Point::at(1));
  const CoincidenceReport full = solve_three(s, S, T, f, half, Point::at(0));
  CHECK(full.coincidence_only);
  CHECK_FALSE(full.common_fixed_point.has_value());
  REQUIRE(full.compatibility_second.has_value());
  CHECK_FALSE(full.compatibility_second->compatible);
  CHECK(full.point_of_coincidence == Point::at(2));
  CHECK(full.stages.back().stage == "weak_compatibility");
  CHECK_FALSE(full.stages.back().ok);
}

TEST_CASE("lift agreement and oracle agreement on generated four-map instances") {
  for (std::uint64_t seed = 400; seed < 440; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 2 + seed % 14;
    rec.arity = Arity::Four;
    rec.distinct_g = seed % 2 == 0;
    const Instance inst = generate_instance(rec);
    REQUIRE(inst.hypotheses_verified);
    const OracleResult o = enumerate_coincidence(inst.space, inst.maps);
    REQUIRE(o.common_fixed_points.size() == 1);
    const CoincidenceReport r = solve_four(inst.space, inst.maps.S, inst.maps.T, inst.maps.get_f(),
                                           inst.maps.get_g(), inst.coefficients, Point::at(seed % rec.n));
    REQUIRE(r.common_fixed_point.has_value());
    CHECK(*r.common_fixed_point == Point::at(o.common_fixed_points.front()));
  }
}

}
