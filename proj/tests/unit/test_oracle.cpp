#include <doctest.h>

#include "brute.hpp"
#include "cofix/error.hpp"
#include "cofix/fuzz.hpp"
#include "cofix/generator.hpp"
#include "cofix/oracle.hpp"

using namespace cofix;

TEST_SUITE("oracle") {

TEST_CASE("fixed points") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 2, 4}));
  CHECK(enumerate_fixed_points(s, Mapping::identity(s)) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(enumerate_fixed_points(s, Mapping::constant(4, 0)) == std::vector<std::size_t>{0});
  CHECK(enumerate_fixed_points(s, Mapping::table({0, 0, 1, 2})) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(enumerate_fixed_points(MetricSpace::euclidean(1),
                                         Mapping::affine(Matrix::Identity(1, 1), Vector::Zero(1))),
                  Error);
}

TEST_CASE("common fixed points") {
  const MetricSpace two = brute::space(brute::abs_table({0, 1}));
  const std::vector<Mapping> zz{Mapping::constant(2, 0), Mapping::constant(2, 0)};
  CHECK(enumerate_common_fixed_points(two, zz) == std::vector<std::size_t>{0});
  const std::vector<Mapping> iz{Mapping::identity(two), Mapping::constant(2, 0)};
  CHECK(enumerate_common_fixed_points(two, iz) == std::vector<std::size_t>{0});
  const std::vector<Mapping> disjoint{Mapping::constant(2, 0), Mapping::constant(2, 1)};
  CHECK(enumerate_common_fixed_points(two, disjoint).empty());
  const std::vector<Mapping> one{Mapping::constant(2, 0)};
  CHECK_THROWS_AS(enumerate_common_fixed_points(two, one), Error);
}

TEST_CASE("coincidence enumeration") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 2}));
  const Mapping z = Mapping::constant(3, 0);
  const OracleResult r = enumerate_coincidence(s, MappingSet::three(z, z, Mapping::table({0, 0, 1})));
  CHECK(r.arity == Arity::Three);
  CHECK(r.coincidence_points == std::vector<std::size_t>{0, 1});
  CHECK(r.points_of_coincidence == std::vector<std::size_t>{0});
  CHECK(r.common_fixed_points == std::vector<std::size_t>{0});
  CHECK(r.map_names == std::vector<std::string>{"S", "T", "f"});
  CHECK_FALSE(r.condition.has_value());

  // f = identity, S = T: coincidences are the common fixed points
  const Mapping S = Mapping::table({0, 0, 2});
  const OracleResult same = enumerate_coincidence(s, MappingSet::three(S, S, Mapping::identity(s)));
  CHECK(same.coincidence_points == same.common_fixed_points);
  CHECK(same.coincidence_points == std::vector<std::size_t>{0, 2});

  // x + 1 mod n has no solutions
  for (std::size_t n = 2; n <= 9; ++n) {
    std::vector<double> labels;
    brute::Map shift(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(double(i));
      shift[i] = (i + 1) % n;
    }
    const MetricSpace sn = brute::space(brute::abs_table(labels));
    const Mapping T = Mapping::table(shift);
    const OracleResult e = enumerate_coincidence(sn, MappingSet::three(T, T, Mapping::identity(sn)));
    CHECK(e.coincidence_points.empty());
    CHECK(e.points_of_coincidence.empty());
    CHECK(e.common_fixed_points.empty());
  }
}

TEST_CASE("arity two and four layouts") {
  const MetricSpace s = brute::space(brute::abs_table({0, 1, 2}));
  const OracleResult two = enumerate_coincidence(s, MappingSet::two(Mapping::table({0, 2, 2}), Mapping::table({1, 2, 2})),
                                                 Coefficients{0, 0, 0.5, 0, 0});
  CHECK(two.coincidence_points == std::vector<std::size_t>{1, 2});
  CHECK(two.points_of_coincidence == std::vector<std::size_t>{2});
  CHECK(two.common_fixed_points == std::vector<std::size_t>{2});
  REQUIRE(two.condition.has_value());
  CHECK(two.condition->pairs_checked == 9);

  // Sx = fx at {0,1}, Tv = gv at {2}; shared value 0 only
  const Mapping S = Mapping::table({0, 0, 1});
  const Mapping f = Mapping::table({0, 0, 2});
  const Mapping T = Mapping::table({2, 1, 0});
  const Mapping g = Mapping::table({1, 2, 0});
  const OracleResult four = enumerate_coincidence(s, MappingSet::four(S, T, f, g));
  CHECK(four.map_names.size() == 4);
  CHECK(four.coincidence_points == std::vector<std::size_t>{0, 1});
  CHECK(four.partner_coincidence_points == std::vector<std::size_t>{2});
  CHECK(four.points_of_coincidence == std::vector<std::size_t>{0});
  CHECK(four.common_fixed_points.empty());
}

TEST_CASE("oracle sets match a direct scan") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 1 + seed % 9;
    rec.mapping = MappingMode::Random;
    rec.arity = Arity::Three;
    const Instance inst = generate_instance(rec);
    const brute::Map S = inst.maps.S.images(), T = inst.maps.T.images(), f = inst.maps.get_f().images();
    const OracleResult r = enumerate_coincidence(inst.space, inst.maps);
    std::vector<std::size_t> co, values;
    for (std::size_t x = 0; x < S.size(); ++x) {
      if (S[x] == T[x] && T[x] == f[x]) {
        co.push_back(x);
        values.push_back(f[x]);
      }
    }
    CHECK(r.coincidence_points == co);
    CHECK(r.points_of_coincidence == brute::image(values));
    CHECK(r.common_fixed_points == brute::common_fixed({S, T, f}));
  }
}

}

TEST_SUITE("generator") {

TEST_CASE("same recipe, same instance") {
  for (auto metric : {MetricMode::EuclideanEmbedding, MetricMode::RepairedTable}) {
    for (auto mapping : {MappingMode::ContractionToAnchor, MappingMode::Random}) {
      InstanceRecipe rec;
      rec.seed = 99;
      rec.n = 17;
      rec.metric = metric;
      rec.mapping = mapping;
      rec.arity = Arity::Four;
      rec.distinct_g = true;
      const Instance a = generate_instance(rec);
      const Instance b = generate_instance(rec);
      for (std::size_t i = 0; i < rec.n; ++i)
        for (std::size_t j = 0; j < rec.n; ++j) CHECK(a.space.table(i, j) == b.space.table(i, j));
      CHECK(a.maps.S.images() == b.maps.S.images());
      CHECK(a.maps.T.images() == b.maps.T.images());
      CHECK(a.maps.get_f().images() == b.maps.get_f().images());
      CHECK(a.maps.get_g().images() == b.maps.get_g().images());
      CHECK(a.anchor == b.anchor);
      CHECK(a.hypotheses_verified == b.hypotheses_verified);
    }
  }
  InstanceRecipe r1, r2;
  r2.seed = r1.seed + 1;
  CHECK(generate_instance(r1).space.table(0, 1) != generate_instance(r2).space.table(0, 1));
}

TEST_CASE("single point instance passes everything") {
  InstanceRecipe rec;
  rec.seed = 1;
  rec.n = 1;
  for (auto arity : {Arity::Two, Arity::Three, Arity::Four}) {
    rec.arity = arity;
    const Instance inst = generate_instance(rec);
    CHECK(inst.space.size() == 1);
    CHECK(inst.hypotheses_verified);
    CHECK(verify_hypotheses(inst.space, inst.maps, inst.coefficients).all());
  }
}

TEST_CASE("contraction instances with factor one half") {
  InstanceRecipe rec;
  rec.n = 8;
  rec.denominator = 2;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    rec.seed = seed;
    const Instance inst = generate_instance(rec);
    REQUIRE(inst.hypotheses_verified);
    CHECK(inst.coefficients.gamma == doctest::Approx(0.5));
    CHECK(inst.coefficients.alpha == 0.0);
    CHECK(inst.coefficients.beta == 0.0);
    CHECK(inst.coefficients.delta == 0.0);
    CHECK(inst.coefficients.L == 0.0);
    CHECK(check_condition(inst.space, inst.maps, inst.coefficients, PairSource::exhaustive()).satisfied);
    const auto d = [&] {
      brute::Table t(8, std::vector<double>(8));
      for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) t[i][j] = inst.space.table(i, j);
      return t;
    }();
    const auto id = brute::identity(8);
    CHECK(brute::worst_margin(d, inst.maps.S.images(), inst.maps.T.images(), id, id, inst.coefficients) <= 0.0);
    CHECK(brute::common_fixed({inst.maps.S.images(), inst.maps.T.images()}) ==
          std::vector<std::size_t>{inst.anchor});
  }
}

TEST_CASE("random mapping mode records its verdict") {
  std::size_t unverified = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 6;
    rec.mapping = MappingMode::Random;
    const Instance inst = generate_instance(rec);
    const bool ok = verify_hypotheses(inst.space, inst.maps, inst.coefficients).all();
    CHECK(inst.hypotheses_verified == ok);
    if (!inst.hypotheses_verified) {
      ++unverified;
      CHECK_FALSE(inst.notes.empty());
    }
  }
  CHECK(unverified > 0);
}

TEST_CASE("f kinds and distinct g") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    InstanceRecipe rec;
    rec.seed = seed;
    rec.n = 2 + seed % 10;
    rec.arity = Arity::Four;
    rec.distinct_g = true;
    rec.f_kind = FKind::NonInjective;
    const Instance inst = generate_instance(rec);
    REQUIRE(inst.hypotheses_verified);
    const auto& f = inst.maps.get_f().images();
    CHECK(brute::image(f).size() < f.size());
    CHECK(brute::image(f) == brute::image(inst.maps.get_g().images()));

    rec.f_kind = FKind::Permutation;
    const Instance p = generate_instance(rec);
    CHECK(brute::image(p.maps.get_f().images()).size() == rec.n);
    CHECK(p.maps.get_f()(p.anchor) == p.anchor);
  }
}

TEST_CASE("metric closure") {
  std::vector<double> t{0, 1, 5, 1, 0, 1, 5, 1, 0};
  metric_closure(t, 3);
  CHECK(t[2] == 2.0);
  CHECK(t[6] == 2.0);
  CHECK(verify_metric_axioms(MetricSpace::finite(3, t)).passed());
}

TEST_CASE("mode names round trip") {
  for (auto m : {MetricMode::EuclideanEmbedding, MetricMode::RepairedTable})
    CHECK(parse_metric_mode(to_string(m)) == m);
  for (auto m : {MappingMode::ContractionToAnchor, MappingMode::Random, MappingMode::Identity, MappingMode::Constant})
    CHECK(parse_mapping_mode(to_string(m)) == m);
  for (auto k : {FKind::Identity, FKind::Permutation, FKind::NonInjective}) CHECK(parse_f_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_metric_mode("hyperbolic"), Error);
}

}

TEST_SUITE("fuzz") {

TEST_CASE("small campaign agrees and is reproducible") {
  FuzzConfig cfg;
  cfg.count = 30;
  cfg.n_max = 20;
  const FuzzSummary a = run_fuzz(cfg);
  const FuzzSummary b = run_fuzz(cfg);
  CHECK(a.ok());
  CHECK(a.generated == 30);
  CHECK(a.verified == 30);
  CHECK(a.agreements == a.solves);
  CHECK(a.steps_checked > 0);
  CHECK(a.solves == b.solves);
  CHECK(a.steps_checked == b.steps_checked);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t n = fuzz_universe_size(s, 2, 64);
    CHECK(n >= 2);
    CHECK(n <= 64);
    CHECK(n == fuzz_universe_size(s, 2, 64));
  }
}

TEST_CASE("three and four map campaigns") {
  for (auto arity : {Arity::Three, Arity::Four}) {
    FuzzConfig cfg;
    cfg.count = 15;
    cfg.n_max = 16;
    cfg.base.arity = arity;
    cfg.base.distinct_g = arity == Arity::Four;
    const FuzzSummary s = run_fuzz(cfg);
    CHECK(s.ok());
    CHECK(s.verified == 15);
    CHECK(s.agreements == s.solves);
  }
}

}
