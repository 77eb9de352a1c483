#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "cofix/error.hpp"
#include "cofix/generator.hpp"
#include "cofix/oracle.hpp"
#include "cofix/solver.hpp"
#include "cofix/synthesis.hpp"

using namespace cofix;

TEST_SUITE("solver") {

TEST_CASE("rate constant") {
  CHECK(rate_constant({0, 0, 0, 0, 3}) == 0.0);
  CHECK(rate_constant({0.1, 0.1, 0.2, 0.1, 0}) == doctest::Approx(0.5));
  CHECK(rate_constant({0.3, 0, 0, 0, 0}) == doctest::Approx(0.3));
  CHECK(rate_constant({0, 0, 0.5, 0, 0}) == 0.5);
  CHECK_THROWS_AS(rate_constant({0.5, 0.5, 0, 0, 0}), Error);
  // always inside [0,1) for admissible tuples on a grid of the region
  const int N = 12;
  for (int a = 0; a < N; ++a)
    for (int b = 0; a + b < N; ++b)
      for (int g = 0; a + b + g < N; ++g)
        for (int e = 0; a + b + g + 2 * e < N; ++e) {
          const double k = rate_constant({a / double(N), b / double(N), g / double(N), e / double(N), 0});
          CHECK(k >= 0.0);
          CHECK(k < 1.0);
        }
}

TEST_CASE("a-priori bound") {
  CHECK(apriori_error_bound(0.0, 5.0, 1) == 0.0);
  CHECK(apriori_error_bound(0.0, 5.0, 7) == 0.0);
  CHECK(apriori_error_bound(0.5, 2.0, 3) == doctest::Approx(0.5));
  CHECK(apriori_error_bound(0.5, 2.0, 0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(apriori_error_bound(1.0, 1.0, 1), Error);
  CHECK_THROWS_AS(apriori_error_bound(-0.1, 1.0, 1), Error);
  CHECK_THROWS_AS(apriori_error_bound(0.5, -1.0, 1), Error);
}

TEST_CASE("halving map on {0,1,3,7} from 7") {
  const std::vector<double> labels{0, 1, 3, 7};
  const MetricSpace s = brute::space(brute::abs_table(labels));
  const Mapping half = Mapping::table({0, 0, 1, 2});
  const SolveReport r = picard_solve(s, half, half, Point::at(3), {0, 0, 0.5, 0, 0});
  REQUIRE(r.converged());
  CHECK(r.rate_k == 0.5);
  CHECK(r.limit == Point::at(0));
  CHECK(r.residual_S == 0.0);
  CHECK(r.residual_T == 0.0);
  std::vector<double> seen;
  for (const auto& p : r.trace.iterates) seen.push_back(labels[p.index()]);
  CHECK(seen == std::vector<double>{7, 3, 1, 0, 0});
  CHECK(r.trace.steps == std::vector<double>{4, 2, 1, 0});
  CHECK(std::string(r.trace.produced_by.begin(), r.trace.produced_by.end()) == "-STST");
  for (std::size_t n = 0; n + 1 < r.trace.steps.size(); ++n) {
    if (r.trace.steps[n + 1] > 0) CHECK(r.trace.steps[n + 1] == 0.5 * r.trace.steps[n]);
  }
  // |x_n - 0| under the bound at every n
  for (std::size_t n = 0; n < r.trace.iterates.size(); ++n) {
    CHECK(seen[n] <= apriori_error_bound(0.5, 4.0, n));
    CHECK(r.apriori_bounds[n] == apriori_error_bound(0.5, 4.0, n));
  }
}

TEST_CASE("halving map on {0,1,2,4}: the runtime guard fires") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 2, 4}));
  const Mapping half = Mapping::table({0, 0, 1, 2});
  const SolveReport r = picard_solve(s, half, half, Point::at(3), {0, 0, 0.5, 0, 0});
  CHECK(r.status == SolveStatus::RateViolated);
  REQUIRE(r.violation_step.has_value());
  CHECK(*r.violation_step == 2);
  CHECK(r.trace.steps == std::vector<double>{2, 1, 1});
}

TEST_CASE("starting at the common fixed point") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 3, 7}));
  const Mapping half = Mapping::table({0, 0, 1, 2});
  const SolveReport r = picard_solve(s, half, half, Point::at(0), {0, 0, 0.5, 0, 0});
  CHECK(r.converged());
  CHECK(r.iterations() <= 2);
  for (const auto& p : r.trace.iterates) CHECK(p == Point::at(0));
  CHECK(r.residual_S == 0.0);
}

TEST_CASE("k = 0 stops after one unchanged round") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 2}));
  const Mapping zero = Mapping::constant(3, 0);
  const SolveReport r = picard_solve(s, zero, zero, Point::at(2), {});
  CHECK(r.rate_k == 0.0);
  CHECK(r.converged());
  CHECK(r.iterations() == 2);
  CHECK(r.limit == Point::at(0));
}

TEST_CASE("a 2-cycle is a rate violation, never convergence") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1}));
  const Mapping swap = Mapping::table({1, 0});
  const SolveReport r = picard_solve(s, swap, swap, Point::at(0), {0, 0, 0.9, 0, 0});
  CHECK(r.status == SolveStatus::RateViolated);
}

TEST_CASE("iteration cap") {
  const MetricSpace line = MetricSpace::euclidean(1);
  const Mapping half = Mapping::affine(Matrix::Constant(1, 1, 0.5), Vector::Zero(1));
  SolveOptions o;
  o.max_iters = 3;
  const SolveReport r = picard_solve(line, half, half, Point::coords({1.0}), {0, 0, 0.5, 0, 0}, o);
  CHECK(r.status == SolveStatus::MaxIterations);
  CHECK(r.iterations() == 3);
  CHECK(r.limit.vector()[0] == doctest::Approx(0.125));
}

TEST_CASE("x/3 and x/4 on the line") {
  const MetricSpace line = MetricSpace::euclidean(1);
  const Mapping S = Mapping::affine(Matrix::Constant(1, 1, 1.0 / 3.0), Vector::Zero(1));
  const Mapping T = Mapping::affine(Matrix::Constant(1, 1, 0.25), Vector::Zero(1));
  const auto src = PairSource::sampled(10000, 0, Box::cube(1, -10, 10));
  const SynthesisResult syn = synthesize_coefficients(line, MappingSet::two(S, T), src);
  REQUIRE(syn.feasible());
  SolveOptions o;
  o.max_iters = 200;
  o.tol = 1e-12;
  const SolveReport r = picard_solve(line, S, T, Point::coords({1.0}), *syn.coefficients, o);
  CHECK(r.converged());
  CHECK(std::abs(r.limit.vector()[0]) < 1e-10);
  CHECK(r.residual_S < 1e-10);
  CHECK(r.residual_T < 1e-10);
  CHECK(r.iterations() <= 200);
  // every recorded step respects the ratio
  for (std::size_t n = 0; n + 1 < r.trace.steps.size(); ++n) {
    CHECK(r.trace.steps[n + 1] <= r.rate_k * r.trace.steps[n] + 1e-12);
  }
}

TEST_CASE("uniqueness verdicts") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 3, 7}));
  const Mapping half = Mapping::table({0, 0, 1, 2});
  const Coefficients c{0, 0, 0.5, 0, 0};
  CHECK(uniqueness_check(s, half, half, c, Point::at(0), Point::at(0)).equal);

  const SolveReport a = picard_solve(s, half, half, Point::at(3), c);
  const SolveReport b = picard_solve(s, half, half, Point::at(1), c);
  REQUIRE(a.converged());
  REQUIRE(b.converged());
  CHECK(uniqueness_check(s, half, half, c, a.limit, b.limit).equal);

  const MetricSpace two = brute::space(brute::abs_table({0, 1}));
  const Mapping id = Mapping::identity(two);
  const UniquenessVerdict v = uniqueness_check(two, id, id, {0, 0, 0.9, 0, 0}, Point::at(0), Point::at(1));
  CHECK_FALSE(v.equal);
  CHECK(v.hypothesis_violated());
  CHECK(v.distance == 1.0);
  CHECK(v.contraction_bound == doctest::Approx(0.9));

  try {
    uniqueness_check(s, half, half, c, Point::at(2), Point::at(0));
    FAIL("accepted a non-fixed point");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionFailure);
  }
}

TEST_CASE("start-point independence and oracle agreement on generated instances") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 2 + seed % 20;
    rec.metric = seed % 2 ? MetricMode::RepairedTable : MetricMode::EuclideanEmbedding;
    rec.denominator = 2 + seed % 3;
    const Instance inst = generate_instance(rec);
    REQUIRE(inst.hypotheses_verified);
    const auto common = brute::common_fixed({inst.maps.S.images(), inst.maps.T.images()});
    REQUIRE(common.size() == 1);
    for (std::size_t x0 = 0; x0 < inst.space.size(); ++x0) {
      const SolveReport r = picard_solve(inst.space, inst.maps.S, inst.maps.T, Point::at(x0), inst.coefficients);
      REQUIRE(r.converged());
      CHECK(r.limit == Point::at(common.front()));
      const double d0 = r.trace.steps.front();
      for (std::size_t n = 0; n < r.trace.iterates.size(); ++n) {
        CHECK(distance(inst.space, r.trace.iterates[n], r.limit) <= apriori_error_bound(r.rate_k, d0, n) + 1e-9);
      }
    }
  }
}

}
