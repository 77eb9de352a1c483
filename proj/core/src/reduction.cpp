#include "cofix/reduction.hpp"

#include <algorithm>

#include "cofix/error.hpp"

namespace cofix {

Restriction injective_restriction(const MetricSpace& space, const Mapping& f) {
  if (!space.is_finite()) {
    throw Error(ErrorKind::Domain, "injective_restriction enumerates a finite universe; use an affine inverse on R^m");
  }
  f.require_on(space, "f");
  Restriction r;
  r.section.assign(space.size(), std::nullopt);
  for (std::size_t x = 0; x < space.size(); ++x) {
    const std::size_t y = f(x);
    if (r.section[y]) continue;
    r.section[y] = x;
    r.subset.push_back(x);
    r.image.push_back(y);
  }
  return r;
}

Point ReductionWitness::to_global(const Point& local) const {
  if (!image_space.is_finite()) return local;
  return Point::at(image.at(local.index()));
}

Point ReductionWitness::to_local(const Point& global) const {
  if (!image_space.is_finite()) return global;
  const auto it = std::find(image.begin(), image.end(), global.index());
  if (it == image.end()) throw Error(ErrorKind::Domain, "point " + global.str() + " is not in the image fE");
  return Point::at(static_cast<std::size_t>(it - image.begin()));
}

namespace {

Point section_of(const std::optional<Restriction>& r, const std::optional<Mapping>& inverse, const Point& y,
                 const char* name) {
  if (inverse) return (*inverse)(y);
  if (!r) throw Error(ErrorKind::Domain, std::string("witness has no section for ") + name);
  const std::size_t i = y.index();
  if (i >= r->section.size() || !r->section[i]) {
    throw Error(ErrorKind::Domain, "point " + y.str() + " has no preimage under " + name);
  }
  return Point::at(*r->section[i]);
}

}  // namespace

Point ReductionWitness::section_f(const Point& y) const { return section_of(restriction_f, inverse_f, y, "f"); }
Point ReductionWitness::section_g(const Point& y) const { return section_of(restriction_g, inverse_g, y, "g"); }

namespace {

Mapping affine_inverse(const MetricSpace& space, const Mapping& f, const char* name) {
  const auto& a = f.affine();
  Eigen::FullPivLU<Matrix> lu(a.linear);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::SectionUnavailable,
                std::string(name) + " has a singular linear part; the R^m pipeline needs an injective affine " + name);
  }
  (void)space;
  const Matrix inv = lu.inverse();
  return Mapping::affine(inv, -inv * a.offset);
}

void require_in_image(const MetricSpace& space, const Mapping& map, const char* map_name,
                      const std::vector<std::optional<std::size_t>>& section, const char* target) {
  for (std::size_t x = 0; x < space.size(); ++x) {
    const std::size_t v = map(x);
    if (!section[v]) {
      throw Error(ErrorKind::RangeInclusionFailure, std::string(map_name) + "(" + std::to_string(x) + ") = " +
                                                        std::to_string(v) + " is not in " + target + "X");
    }
  }
}

std::vector<std::optional<std::size_t>> local_index(const std::vector<std::size_t>& image, std::size_t n) {
  std::vector<std::optional<std::size_t>> out(n);
  for (std::size_t i = 0; i < image.size(); ++i) out[image[i]] = i;
  return out;
}

}  // namespace

ReductionWitness induce_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                              const Restriction& E) {
  S.require_on(space, "S");
  T.require_on(space, "T");
  f.require_on(space, "f");
  require_in_image(space, S, "S", E.section, "f");
  require_in_image(space, T, "T", E.section, "f");

  const auto local = local_index(E.image, space.size());
  std::vector<std::size_t> g(E.subset.size()), h(E.subset.size());
  for (std::size_t i = 0; i < E.subset.size(); ++i) {
    const std::size_t x = E.subset[i];
    g[i] = *local[S(x)];
    h[i] = *local[T(x)];
  }

  ReductionWitness w;
  w.arity = Arity::Three;
  w.image_space = space.subspace(E.image);
  w.image = E.image;
  w.restriction_f = E;
  w.first = Mapping::table(std::move(g));
  w.second = Mapping::table(std::move(h));
  return w;
}

ReductionWitness induce_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f) {
  if (space.is_finite()) return induce_three(space, S, T, f, injective_restriction(space, f));
  S.require_on(space, "S");
  T.require_on(space, "T");
  f.require_on(space, "f");
  ReductionWitness w;
  w.arity = Arity::Three;
  w.image_space = space;
  w.inverse_f = affine_inverse(space, f, "f");
  w.first = S.after(*w.inverse_f);
  w.second = T.after(*w.inverse_f);
  return w;
}

ReductionWitness induce_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                             const Mapping& g, const Restriction& E1, const Restriction& E2) {
  S.require_on(space, "S");
  T.require_on(space, "T");
  f.require_on(space, "f");
  g.require_on(space, "g");
  for (std::size_t y = 0; y < space.size(); ++y) {
    if (E1.section[y].has_value() != E2.section[y].has_value()) {
      throw Error(ErrorKind::ImageMismatch, "fX != gX: " + std::to_string(y) + " lies in " +
                                                (E1.section[y] ? "fX but not gX" : "gX but not fX"));
    }
  }
  require_in_image(space, S, "S", E1.section, "f");
  require_in_image(space, T, "T", E1.section, "f");

  const auto local = local_index(E1.image, space.size());
  std::vector<std::size_t> A(E1.subset.size()), B(E1.subset.size());
  for (std::size_t i = 0; i < E1.subset.size(); ++i) {
    const std::size_t y = E1.image[i];
    A[i] = *local[S(E1.subset[i])];
    B[i] = *local[T(*E2.section[y])];
  }

  ReductionWitness w;
  w.arity = Arity::Four;
  w.image_space = space.subspace(E1.image);
  w.image = E1.image;
  w.restriction_f = E1;
  w.restriction_g = E2;
  w.first = Mapping::table(std::move(A));
  w.second = Mapping::table(std::move(B));
  return w;
}

ReductionWitness induce_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                             const Mapping& g) {
  if (space.is_finite()) {
    return induce_four(space, S, T, f, g, injective_restriction(space, f), injective_restriction(space, g));
  }
  S.require_on(space, "S");
  T.require_on(space, "T");
  f.require_on(space, "f");
  g.require_on(space, "g");
  ReductionWitness w;
  w.arity = Arity::Four;
  w.image_space = space;
  w.inverse_f = affine_inverse(space, f, "f");
  w.inverse_g = affine_inverse(space, g, "g");
  w.first = S.after(*w.inverse_f);
  w.second = T.after(*w.inverse_g);
  return w;
}

namespace {

// Solves P_i x = Q_i x simultaneously for affine maps; value reported is Q_0 x.
CoincidenceSet affine_coincidence(const MetricSpace& space,
                                  std::initializer_list<std::pair<const Mapping*, const Mapping*>> equations) {
  const auto m = static_cast<Eigen::Index>(space.dimension());
  const auto rows = static_cast<Eigen::Index>(equations.size()) * m;
  Matrix M(rows, m);
  Vector r(rows);
  Eigen::Index at = 0;
  for (const auto& [P, Q] : equations) {
    const auto& p = P->affine();
    const auto& q = Q->affine();
    M.middleRows(at, m) = p.linear - q.linear;
    r.segment(at, m) = q.offset - p.offset;
    at += m;
  }

  CoincidenceSet out;
  const Vector x = M.completeOrthogonalDecomposition().solve(r);
  if ((M * x - r).norm() > space.point_tolerance() * (1.0 + r.norm())) return out;

  const Mapping& value_map = *equations.begin()->second;
  out.points.push_back({Point::coords(x), value_map(Point::coords(x))});

  Eigen::FullPivLU<Matrix> lu(M);
  if (lu.rank() < m) {
    const Matrix kernel = lu.kernel();
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) out.directions.push_back(kernel.col(j));
  }
  return out;
}

}  // namespace

CoincidenceSet coincidence_points(const MetricSpace& space, const Mapping& T, const Mapping& f) {
  T.require_on(space, "T");
  f.require_on(space, "f");
  if (!space.is_finite()) return affine_coincidence(space, {{&T, &f}});
  CoincidenceSet out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (T(x) == f(x)) out.points.push_back({Point::at(x), Point::at(f(x))});
  }
  return out;
}

CoincidenceSet coincidence_points(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f) {
  S.require_on(space, "S");
  T.require_on(space, "T");
  f.require_on(space, "f");
  if (!space.is_finite()) return affine_coincidence(space, {{&S, &f}, {&T, &f}});
  CoincidenceSet out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (S(x) == f(x) && T(x) == f(x)) out.points.push_back({Point::at(x), Point::at(f(x))});
  }
  return out;
}

WeakCompatibility is_weakly_compatible(const MetricSpace& space, const Mapping& T, const Mapping& f) {
  const CoincidenceSet set = coincidence_points(space, T, f);
  WeakCompatibility out;
  out.coincidences = set.points.size();
  auto commutes = [&](const Point& x) { return space.same(T(f(x)), f(T(x))); };

  std::vector<Point> probes;
  for (const auto& c : set.points) probes.push_back(c.x);
  // an affine map vanishing at p and at p + each direction vanishes on the whole family
  if (!set.points.empty()) {
    for (const auto& d : set.directions) probes.push_back(Point::coords(set.points.front().x.vector() + d));
  }
  for (const auto& x : probes) {
    if (!commutes(x)) {
      out.compatible = false;
      out.witness = x;
      break;
    }
  }
  return out;
}

Point lift_to_common_fixed_point(const MetricSpace& space, const Mapping& T, const Mapping& f, const Point& v) {
  space.require(v);
  const Point w = T(v);
  const Point fv = f(v);
  if (!space.same(w, fv)) {
    throw Error(ErrorKind::LiftMismatch, "Tv = " + w.str() + " differs from fv = " + fv.str() + " at v = " + v.str() +
                                             " (pair not weakly compatible at its coincidence)");
  }
  if (!space.same(w, v)) {
    throw Error(ErrorKind::LiftMismatch, "Tv = fv = " + w.str() + " differs from v = " + v.str() +
                                             " (point of coincidence not unique)");
  }
  return w;
}

namespace {

enum class Lifting { Yes, No };

struct Stager {
  CoincidenceReport& report;

  template <typename F>
  auto run(const std::string& stage, F&& body) -> decltype(body()) {
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        report.stages.push_back({stage, true, {}});
      } else {
        auto out = body();
        report.stages.push_back({stage, true, {}});
        return out;
      }
    } catch (const Error& e) {
      report.stages.push_back({stage, false, e.what()});
      throw e.with_stage(stage);
    }
  }

  void note(const std::string& stage, bool ok, std::string detail) {
    report.stages.push_back({stage, ok, std::move(detail)});
  }
};

void check_condition_stage(Stager& st, const MetricSpace& space, const MappingSet& maps, const Coefficients& c,
                           const PipelineOptions& options) {
  if (!options.condition_source) return;
  st.run("check_condition", [&] {
    const auto r = check_condition(space, maps, c, *options.condition_source);
    if (!r.satisfied) {
      throw Error(ErrorKind::PreconditionFailure, r.condition + " violated at (" + r.worst_x.str() + ", " +
                                                      r.worst_y.str() + ") by " + std::to_string(r.worst_margin));
    }
  });
}

SolveReport induced_solve(Stager& st, const ReductionWitness& w, const Mapping& f, const Coefficients& c,
                          const Point& x0, const PipelineOptions& options) {
  return st.run("picard_solve", [&] {
    const Point start = w.to_local(f(x0));
    SolveOptions solve = options.solve;
    SolveReport r = picard_solve(w.image_space, w.first, w.second, start, c, solve);
    if (!r.converged()) {
      throw Error(ErrorKind::NotConverged, "induced iteration stopped with status " +
                                               std::string(to_string(r.status)) + " after " +
                                               std::to_string(r.iterations()) + " steps");
    }
    return r;
  });
}

void require_same(const MetricSpace& space, const Point& a, const Point& b, const std::string& what) {
  if (!space.same(a, b)) {
    throw Error(ErrorKind::PreconditionFailure, what + ": " + a.str() + " != " + b.str());
  }
}

CoincidenceReport run_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                            const Coefficients& c, const Point& x0, const PipelineOptions& options,
                            Lifting lifting) {
  CoincidenceReport report;
  report.arity = Arity::Three;
  Stager st{report};

  st.run("validate_coefficients", [&] { validate_coefficients(c); });
  st.run("validate_mappings", [&] {
    MappingSet::three(S, T, f).require_on(space);
    space.require(x0);
  });
  check_condition_stage(st, space, MappingSet::three(S, T, f), c, options);

  std::optional<Restriction> E;
  if (space.is_finite()) {
    E = st.run("injective_restriction", [&] { return injective_restriction(space, f); });
  } else {
    st.run("injective_restriction", [&] { affine_inverse(space, f, "f"); });
  }
  report.witness = st.run("induce_three", [&] {
    return E ? induce_three(space, S, T, f, *E) : induce_three(space, S, T, f);
  });
  const ReductionWitness& w = *report.witness;

  report.induced_solve = induced_solve(st, w, f, c, x0, options);

  st.run("pull_back", [&] {
    report.point_of_coincidence = w.to_global(report.induced_solve.limit);
    report.coincidence_point = w.section_f(report.point_of_coincidence);
    const Point& z = report.coincidence_point;
    const Point& fz = report.point_of_coincidence;
    require_same(space, S(z), fz, "S z = f z");
    require_same(space, T(z), fz, "T z = f z");
  });

  st.run("uniqueness", [&] {
    const CoincidenceSet all = coincidence_points(space, S, T, f);
    report.coincidences = all.points;
    if (all.solution_dimension() > 0) {
      throw Error(ErrorKind::NonUniqueCoincidence, "Sx = Tx = fx has a " + std::to_string(all.solution_dimension()) +
                                                       "-dimensional family of solutions");
    }
    for (const auto& co : all.points) {
      if (!space.same(co.value, report.point_of_coincidence)) {
        throw Error(ErrorKind::NonUniqueCoincidence, "second point of coincidence " + co.value.str() + " (at x = " +
                                                         co.x.str() + ") besides " +
                                                         report.point_of_coincidence.str());
      }
    }
  });

  if (lifting == Lifting::No) {
    report.coincidence_only = true;
    return report;
  }

  report.compatibility_first = st.run("weak_compatibility", [&] {
    report.compatibility_second = is_weakly_compatible(space, T, f);
    return is_weakly_compatible(space, S, f);
  });
  if (!report.compatibility_first->compatible || !report.compatibility_second->compatible) {
    report.stages.back().ok = false;
    report.stages.back().detail = !report.compatibility_first->compatible
                                      ? "(S,f) not weakly compatible; coincidence-only result"
                                      : "(T,f) not weakly compatible; coincidence-only result";
    report.coincidence_only = true;
    return report;
  }

  report.common_fixed_point = st.run("lift", [&] {
    const Point& v = report.point_of_coincidence;
    const Point w1 = lift_to_common_fixed_point(space, S, f, v);
    const Point w2 = lift_to_common_fixed_point(space, T, f, v);
    if (!space.same(w1, w2)) {
      throw Error(ErrorKind::LiftDisagreement, "lifts " + w1.str() + " and " + w2.str() + " differ");
    }
    return w1;
  });
  return report;
}

CoincidenceReport run_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                           const Mapping& g, const Coefficients& c, const Point& x0, const PipelineOptions& options,
                           Lifting lifting) {
  CoincidenceReport report;
  report.arity = Arity::Four;
  Stager st{report};

  st.run("validate_coefficients", [&] { validate_coefficients(c); });
  st.run("validate_mappings", [&] {
    MappingSet::four(S, T, f, g).require_on(space);
    space.require(x0);
  });
  check_condition_stage(st, space, MappingSet::four(S, T, f, g), c, options);

  std::optional<Restriction> E1, E2;
  st.run("injective_restriction", [&] {
    if (space.is_finite()) {
      E1 = injective_restriction(space, f);
      E2 = injective_restriction(space, g);
    } else {
      affine_inverse(space, f, "f");
      affine_inverse(space, g, "g");
    }
  });
  report.witness = st.run("induce_four", [&] {
    return E1 ? induce_four(space, S, T, f, g, *E1, *E2) : induce_four(space, S, T, f, g);
  });
  const ReductionWitness& w = *report.witness;

  report.induced_solve = induced_solve(st, w, f, c, x0, options);

  st.run("pull_back", [&] {
    const Point fz = w.to_global(report.induced_solve.limit);
    report.point_of_coincidence = fz;
    report.coincidence_point = w.section_f(fz);
    report.partner_point = w.section_g(fz);
    require_same(space, S(report.coincidence_point), fz, "S z = f z");
    require_same(space, g(*report.partner_point), fz, "g v = f z");
    require_same(space, T(*report.partner_point), fz, "T v = g v");
  });

  st.run("uniqueness", [&] {
    const Point& fz = report.point_of_coincidence;
    const Point& v = *report.partner_point;
    const Point gv = g(v);
    const double bound_factor = c.gamma + 2.0 * c.delta;

    // Sw = fw with fw != gv contradicts d(fw,gv) = d(Sw,Tv) <= (gamma + 2 delta) d(fw,gv)
    const CoincidenceSet sf = coincidence_points(space, S, f);
    const CoincidenceSet tg = coincidence_points(space, T, g);
    report.coincidences = sf.points;
    if (sf.solution_dimension() > 0 || tg.solution_dimension() > 0) {
      throw Error(ErrorKind::NonUniqueCoincidence, "coincidence equations have a continuum of solutions");
    }
    for (const auto& co : sf.points) {
      if (!space.same(co.value, fz)) {
        const double d = distance(space, co.value, gv);
        throw Error(ErrorKind::NonUniqueCoincidence,
                    "(S,f) has a second point of coincidence " + co.value.str() + " at w = " + co.x.str() +
                        "; d(fw,gv) = " + std::to_string(d) + " exceeds (gamma + 2 delta) d(fw,gv) = " +
                        std::to_string(bound_factor * d));
      }
    }
    for (const auto& co : tg.points) {
      if (!space.same(co.value, gv)) {
        throw Error(ErrorKind::NonUniqueCoincidence,
                    "(T,g) has a second point of coincidence " + co.value.str() + " at x = " + co.x.str());
      }
    }
  });

  if (lifting == Lifting::No) {
    report.coincidence_only = true;
    return report;
  }

  report.compatibility_first = st.run("weak_compatibility", [&] {
    report.compatibility_second = is_weakly_compatible(space, T, g);
    return is_weakly_compatible(space, S, f);
  });
  if (!report.compatibility_first->compatible || !report.compatibility_second->compatible) {
    report.stages.back().ok = false;
    report.stages.back().detail = !report.compatibility_first->compatible
                                      ? "(S,f) not weakly compatible; coincidence-only result"
                                      : "(T,g) not weakly compatible; coincidence-only result";
    report.coincidence_only = true;
    return report;
  }

  report.common_fixed_point = st.run("lift", [&] {
    const Point w1 = lift_to_common_fixed_point(space, S, f, report.point_of_coincidence);
    const Point w2 = lift_to_common_fixed_point(space, T, g, g(*report.partner_point));
    if (!space.same(w1, w2)) {
      throw Error(ErrorKind::LiftDisagreement, "(S,f) lift " + w1.str() + " and (T,g) lift " + w2.str() + " differ");
    }
    return w1;
  });
  return report;
}

}  // namespace

CoincidenceReport solve_three(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                              const Coefficients& c, const Point& x0, const PipelineOptions& options) {
  return run_three(space, S, T, f, c, x0, options, Lifting::Yes);
}

CoincidenceReport solve_four(const MetricSpace& space, const Mapping& S, const Mapping& T, const Mapping& f,
                             const Mapping& g, const Coefficients& c, const Point& x0,
                             const PipelineOptions& options) {
  return run_four(space, S, T, f, g, c, x0, options, Lifting::Yes);
}

CoincidenceReport solve_three_coincidence(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                          const Mapping& f, const Coefficients& c, const Point& x0,
                                          const PipelineOptions& options) {
  return run_three(space, S, T, f, c, x0, options, Lifting::No);
}

CoincidenceReport solve_four_coincidence(const MetricSpace& space, const Mapping& S, const Mapping& T,
                                         const Mapping& f, const Mapping& g, const Coefficients& c,
                                         const Point& x0, const PipelineOptions& options) {
  return run_four(space, S, T, f, g, c, x0, options, Lifting::No);
}

}  // namespace cofix
