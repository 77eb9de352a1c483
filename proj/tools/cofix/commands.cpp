#include "commands.hpp"

#include <iomanip>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cofix/error.hpp"
#include "cofix/fuzz.hpp"
#include "cofix/oracle.hpp"
#include "cofix/reduction.hpp"
#include "cofix/solver.hpp"
#include "cofix/synthesis.hpp"
#include "problem.hpp"
#include "report.hpp"

namespace cofix::cli {

namespace {

struct Flags {
  std::string file;
  double tol = 0.0;
  std::size_t max_iters = 0;
  std::string x0;
  bool trace = false;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string format = "human";
  bool coincidence = false;

  CLI::Option* tol_opt = nullptr;
  CLI::Option* iters_opt = nullptr;
  CLI::Option* x0_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;

  bool structured() const { return format == "structured"; }
};

struct FuzzFlags {
  std::uint64_t seed = 7;
  std::size_t count = 100;
  std::size_t n_min = 2;
  std::size_t n_max = 64;
  int arity = 2;
  std::string mapping = "contraction";
  std::string metric = "alternate";
  std::size_t denominator = 2;
  std::size_t dimension = 2;
  std::string f_kind = "noninjective";
  bool distinct_g = false;
  std::string format = "human";
};

void add_common(CLI::App* sub, Flags& fl, bool solver_flags) {
  sub->add_option("file", fl.file, "problem file (JSON)")->required();
  fl.tol_opt = sub->add_option("--tol", fl.tol, "tolerance for conditions, residuals and stopping")
                   ->check(CLI::NonNegativeNumber);
  fl.seed_opt = sub->add_option("--seed", fl.seed, "seed of the sampled pair source");
  fl.samples_opt = sub->add_option("--samples", fl.samples, "check the condition on this many sampled pairs");
  sub->add_option("--format", fl.format, "output format")->check(CLI::IsMember({"human", "structured"}));
  if (solver_flags) {
    fl.iters_opt = sub->add_option("--max-iters", fl.max_iters, "iteration cap");
    fl.x0_opt = sub->add_option("--x0", fl.x0, "start point: an index, or coordinates like 1 or [1,2] or 1,2");
    sub->add_flag("--trace", fl.trace, "include the full iteration trace");
  }
}

// Problem file with command-line overrides applied.
ProblemFile load_with_flags(const Flags& fl) {
  ProblemFile p = load_problem(fl.file);
  if (fl.tol_opt && fl.tol_opt->count()) p.tol = fl.tol;
  if (fl.iters_opt && fl.iters_opt->count()) p.max_iters = fl.max_iters;
  if (fl.samples_opt && fl.samples_opt->count()) {
    std::optional<Box> box;
    if (p.pair_source && !p.pair_source->is_exhaustive()) box = p.pair_source->box;
    p.pair_source = PairSource::sampled(fl.samples, fl.seed, box);
  } else if (fl.seed_opt && fl.seed_opt->count()) {
    PairSource src = p.pairs_or_default();
    if (src.is_exhaustive()) throw Error(ErrorKind::Schema, "--seed needs a sampled pair source (give --samples)");
    src.seed = fl.seed;
    p.pair_source = src;
  }
  if (fl.x0_opt && fl.x0_opt->count()) {
    std::string text = fl.x0;
    if (!text.empty() && text.front() != '[' && text.find(',') != std::string::npos) text = "[" + text + "]";
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception&) {
      throw Error(ErrorKind::Schema, "--x0: cannot read \"" + fl.x0 + "\"");
    }
    if (!p.space.is_finite() && j.is_number()) j = json::array({j});
    p.x0 = parse_point(p.space, j);
  }
  return p;
}

SolveOptions solve_options(const ProblemFile& p) {
  SolveOptions o;
  if (p.max_iters) o.max_iters = *p.max_iters;
  o.tol = p.tol;
  return o;
}

double tolerance(const ProblemFile& p) { return p.tol.value_or(default_tolerance(p.space)); }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string show(const ProblemFile& p, const Point& x) { return p.label_of(x).dump(); }

std::string show(const ProblemFile& p, const std::vector<std::size_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + show(p, Point::at(xs[i]));
  return s + "}";
}

std::string show(const Coefficients& c) {
  return "alpha=" + num(c.alpha) + " beta=" + num(c.beta) + " gamma=" + num(c.gamma) + " delta=" + num(c.delta) +
         " L=" + num(c.L);
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

void print_condition(std::ostream& out, const ProblemFile& p, const ViolationReport& v) {
  out << "condition    " << verdict(v.satisfied) << "  " << v.condition << " over " << v.pairs_checked << " "
      << (v.source.is_exhaustive() ? "pairs (exhaustive)" : "sampled pairs (seed " + std::to_string(v.source.seed) + ")")
      << "\n";
  out << "             worst pair (" << show(p, v.worst_x) << ", " << show(p, v.worst_y) << "): lhs " << num(v.worst_lhs)
      << " rhs " << num(v.worst_rhs) << " margin " << num(v.worst_margin) << " tol " << num(v.tolerance) << "\n";
}

void print_solve(std::ostream& out, const ProblemFile& p, const SolveReport& r, bool trace) {
  out << "status       " << to_string(r.status);
  if (r.violation_step) out << " at step " << *r.violation_step;
  out << "\n";
  out << "k            " << num(r.rate_k) << "\n";
  out << "iterations   " << r.iterations() << "\n";
  out << "limit z      " << show(p, r.limit) << "\n";
  out << "residuals    d(z,Sz)=" << num(r.residual_S) << " d(z,Tz)=" << num(r.residual_T) << " (tol "
      << num(r.tolerance) << ")\n";
  if (!r.trace.steps.empty()) {
    out << "steps        first " << num(r.trace.steps.front()) << " last " << num(r.trace.steps.back()) << "\n";
  }
  if (trace) {
    for (std::size_t n = 0; n < r.trace.iterates.size(); ++n) {
      out << "  x" << n << " [" << r.trace.produced_by[n] << "] " << show(p, r.trace.iterates[n]);
      if (n < r.trace.steps.size()) out << "  d=" << num(r.trace.steps[n]);
      if (n < r.apriori_bounds.size()) out << "  bound=" << num(r.apriori_bounds[n]);
      out << "\n";
    }
  }
}

// Coefficients from the file, or synthesized over the pair source. Prints the
// outcome of synthesis; returns nullopt when it is infeasible.
std::optional<Coefficients> obtain_coefficients(const ProblemFile& p, json& rep, std::ostream& out, bool human) {
  if (p.coefficients) {
    rep["coefficients"] = to_json(*p.coefficients);
    rep["coefficients_source"] = "file";
    return p.coefficients;
  }
  SynthesisOptions so;
  so.tolerance = p.tol;
  const SynthesisResult s = synthesize_coefficients(p.space, p.maps, p.pairs_or_default(), so);
  rep["synthesis"] = to_json(s);
  rep["coefficients_source"] = "synthesized";
  if (human) {
    if (s.feasible()) {
      out << "coefficients synthesized: " << show(*s.coefficients) << "\n";
    } else {
      out << "coefficients FAIL  infeasible; binding pair (" << show(p, s.binding_x) << ", " << show(p, s.binding_y)
          << ") deficit " << num(s.binding_deficit) << "\n";
    }
  }
  if (!s.feasible()) return std::nullopt;
  rep["coefficients"] = to_json(*s.coefficients);
  return s.coefficients;
}

void emit(std::ostream& out, const json& rep) { out << rep.dump(2) << "\n"; }

int cmd_check(const Flags& fl, std::ostream& out) {
  const ProblemFile p = load_with_flags(fl);
  const bool human = !fl.structured();
  json rep{{"command", "check"}, {"arity", static_cast<int>(p.maps.arity)}};
  bool ok = true;

  const AxiomReport axioms = verify_metric_axioms(p.space, default_tolerance(p.space));
  rep["metric"] = to_json(axioms);
  ok = ok && axioms.passed();
  if (human) {
    out << "metric       " << verdict(axioms.passed()) << "  " << (axioms.sampled ? "sampled" : "exhaustive") << "\n";
    for (const auto& a : axioms.axioms) {
      if (a.passed) continue;
      out << "             " << a.axiom << " fails at (";
      for (std::size_t i = 0; i < a.witness_points.size(); ++i) out << (i ? ", " : "") << show(p, a.witness_points[i]);
      out << ") by " << num(a.magnitude) << "\n";
    }
  }

  std::optional<Coefficients> c;
  if (p.coefficients) {
    rep["coefficients"] = to_json(*p.coefficients);
    try {
      validate_coefficients(*p.coefficients);
      c = p.coefficients;
      if (human) out << "coefficients PASS  " << show(*c) << "\n";
    } catch (const Error& e) {
      rep["coefficients_error"] = e.what();
      if (human) out << "coefficients FAIL  " << e.what() << "\n";
    }
  } else {
    c = obtain_coefficients(p, rep, out, human);
  }
  ok = ok && c.has_value();

  if (c) {
    const ViolationReport v = check_condition(p.space, p.maps, *c, p.pairs_or_default(), p.tol);
    rep["condition"] = to_json(v);
    ok = ok && v.satisfied;
    if (human) print_condition(out, p, v);
  }

  if (p.maps.arity != Arity::Two) {
    PairSource sampling = p.pairs_or_default();
    const InclusionReport inc = check_range_inclusions(p.space, p.maps, sampling);
    rep["inclusions"] = to_json(inc);
    ok = ok && inc.holds();
    if (human) {
      for (const auto& ch : inc.checks) {
        out << "inclusion    " << verdict(ch.holds) << "  " << ch.relation;
        if (!ch.holds && ch.argument && ch.value) {
          out << ": witness x=" << show(p, *ch.argument) << " maps to " << show(p, *ch.value);
        }
        out << "\n";
      }
    }
    // reported, not required: it only decides whether a common fixed point is lifted
    const Mapping& second = p.maps.arity == Arity::Four ? p.maps.get_g() : p.maps.get_f();
    const WeakCompatibility w1 = is_weakly_compatible(p.space, p.maps.S, p.maps.get_f());
    const WeakCompatibility w2 = is_weakly_compatible(p.space, p.maps.T, second);
    rep["weak_compatibility"] = {{"first", to_json(w1)}, {"second", to_json(w2)}};
    if (human) {
      const char* second_name = p.maps.arity == Arity::Four ? "(T,g)" : "(T,f)";
      out << "compatible   (S,f) " << (w1.compatible ? "yes" : "no") << ", " << second_name << " "
          << (w2.compatible ? "yes" : "no") << "  [informational]\n";
    }
  }

  rep["ok"] = ok;
  if (human) {
    out << (ok ? "all hypotheses hold" : "hypotheses FAIL") << "\n";
  } else {
    emit(out, rep);
  }
  return ok ? kOk : kFailed;
}

Arity require_arity(const ProblemFile& p, Arity want, const char* cmd) {
  if (p.maps.arity != want) {
    throw Error(ErrorKind::Schema, std::string(cmd) + " needs a file with arity " +
                                       std::to_string(static_cast<int>(want)) + ", got " +
                                       std::to_string(static_cast<int>(p.maps.arity)));
  }
  return want;
}

int cmd_solve(const Flags& fl, std::ostream& out) {
  const ProblemFile p = load_with_flags(fl);
  require_arity(p, Arity::Two, "solve");
  const bool human = !fl.structured();
  json rep{{"command", "solve"}};

  std::optional<Coefficients> c;
  try {
    c = obtain_coefficients(p, rep, out, human);
    if (c) validate_coefficients(*c);
  } catch (const Error& e) {
    rep["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    rep["ok"] = false;
    if (human) {
      out << "coefficients FAIL  " << e.what() << "\n";
    } else {
      emit(out, rep);
    }
    return kFailed;
  }
  if (!c) {
    rep["ok"] = false;
    if (!human) emit(out, rep);
    return kFailed;
  }

  const SolveReport r = picard_solve(p.space, p.maps.S, p.maps.T, p.start_or_default(), *c, solve_options(p));
  rep["x0"] = to_json(p.start_or_default());
  rep["report"] = to_json(r, fl.trace);
  const double tol = tolerance(p);
  bool ok = r.converged() && r.residual_S <= tol && r.residual_T <= tol;

  // Common fixed points of S and T by direct solution, so a converged run on
  // an instance with several of them is not reported as the unique answer.
  bool unique = true;
  json others = json::array();
  if (r.converged()) {
    const CoincidenceSet fixed = coincidence_points(p.space, p.maps.S, p.maps.T, Mapping::identity(p.space));
    if (!fixed.directions.empty()) unique = false;
    for (const auto& z2 : fixed.points) {
      if (p.space.same(z2.x, r.limit)) continue;
      const UniquenessVerdict u = uniqueness_check(p.space, p.maps.S, p.maps.T, *c, r.limit, z2.x, tol);
      if (u.hypothesis_violated()) {
        unique = false;
        others.push_back(to_json(z2.x));
      }
    }
    rep["unique"] = unique;
    rep["other_fixed_points"] = others;
    if (!fixed.directions.empty()) rep["fixed_point_dimension"] = fixed.directions.size();
  }
  ok = ok && unique;
  rep["ok"] = ok;

  if (human) {
    print_solve(out, p, r, fl.trace);
    if (r.converged()) {
      if (unique) {
        out << "unique       yes\n";
      } else {
        out << "unique       NO  other common fixed points:";
        for (const auto& o : others) out << " " << show(p, point_from_json(o));
        if (rep.contains("fixed_point_dimension")) out << " (a family of dimension " << rep["fixed_point_dimension"] << ")";
        out << "; the contractive condition cannot hold\n";
      }
    }
  } else {
    emit(out, rep);
  }
  return ok ? kOk : kFailed;
}

int cmd_solve_many(const Flags& fl, std::ostream& out, Arity arity) {
  const char* name = arity == Arity::Three ? "solve3" : "solve4";
  const ProblemFile p = load_with_flags(fl);
  require_arity(p, arity, name);
  const bool human = !fl.structured();
  json rep{{"command", name}};

  PipelineOptions opts;
  opts.solve = solve_options(p);
  opts.condition_source = p.pairs_or_default();

  try {
    std::optional<Coefficients> c = obtain_coefficients(p, rep, out, human);
    if (!c) throw Error(ErrorKind::Infeasible, "no coefficients satisfy the condition", "synthesize");
    const Point x0 = p.start_or_default();
    const Mapping& S = p.maps.S;
    const Mapping& T = p.maps.T;
    const Mapping& f = p.maps.get_f();
    CoincidenceReport r;
    if (arity == Arity::Three) {
      r = fl.coincidence ? solve_three_coincidence(p.space, S, T, f, *c, x0, opts)
                         : solve_three(p.space, S, T, f, *c, x0, opts);
    } else {
      const Mapping& g = p.maps.get_g();
      r = fl.coincidence ? solve_four_coincidence(p.space, S, T, f, g, *c, x0, opts)
                         : solve_four(p.space, S, T, f, g, *c, x0, opts);
    }
    const bool ok = fl.coincidence ? true : r.common_fixed_point.has_value();
    rep["report"] = to_json(r, fl.trace);
    rep["ok"] = ok;
    if (human) {
      for (const auto& s : r.stages) {
        out << "stage " << std::left << std::setw(24) << s.stage << (s.ok ? "ok" : "FAIL");
        if (!s.detail.empty()) out << "  " << s.detail;
        out << "\n";
      }
      out << "coincidence point    " << show(p, r.coincidence_point) << "\n";
      if (r.partner_point) out << "partner point        " << show(p, *r.partner_point) << "\n";
      out << "point of coincidence " << show(p, r.point_of_coincidence) << "\n";
      if (r.common_fixed_point) {
        out << "common fixed point   " << show(p, *r.common_fixed_point) << "\n";
      } else if (!fl.coincidence) {
        out << "no common fixed point: weak compatibility failed, result is coincidence-only\n";
      }
      if (fl.trace) {
        out << "induced iteration on the image:\n";
        print_solve(out, p, r.induced_solve, true);
      }
    } else {
      emit(out, rep);
    }
    return ok ? kOk : kFailed;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    rep["ok"] = false;
    rep["error"] = {{"stage", e.stage()}, {"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (human) {
      out << "stage " << (e.stage().empty() ? "?" : e.stage()) << " FAIL  " << to_string(e.kind()) << ": " << e.what()
          << "\n";
    } else {
      emit(out, rep);
    }
    return kFailed;
  }
}

int cmd_reduce(const Flags& fl, std::ostream& out) {
  const ProblemFile p = load_with_flags(fl);
  if (p.maps.arity == Arity::Two) throw Error(ErrorKind::Schema, "reduce needs a file with arity 3 or 4");
  const bool human = !fl.structured();
  json rep{{"command", "reduce"}};
  try {
    const ReductionWitness w =
        p.maps.arity == Arity::Three
            ? induce_three(p.space, p.maps.S, p.maps.T, p.maps.get_f())
            : induce_four(p.space, p.maps.S, p.maps.T, p.maps.get_f(), p.maps.get_g());
    rep["witness"] = to_json(w);
    rep["ok"] = true;
    if (human) {
      const json& j = rep["witness"];
      const char* a = w.arity == Arity::Three ? "g" : "A";
      const char* b = w.arity == Arity::Three ? "h" : "B";
      if (w.image_space.is_finite()) {
        out << "E" << (w.arity == Arity::Four ? "1" : " ") << "  " << show(p, w.restriction_f->subset) << "\n";
        if (w.restriction_g) out << "E2  " << show(p, w.restriction_g->subset) << "\n";
        out << "fE  " << show(p, w.image) << "\n";
        for (std::size_t i = 0; i < w.image.size(); ++i) {
          const Point y = Point::at(w.image[i]);
          out << "  " << show(p, y) << ": section " << show(p, w.section_f(y)) << ", " << a << " -> "
              << show(p, Point::at(j["first"][i].get<std::size_t>())) << ", " << b << " -> "
              << show(p, Point::at(j["second"][i].get<std::size_t>())) << "\n";
        }
      } else {
        out << "image  " << j["image"].get<std::string>() << " (f has an affine inverse)\n";
        out << a << "  " << j["first"].dump() << "\n" << b << "  " << j["second"].dump() << "\n";
      }
    } else {
      emit(out, rep);
    }
    return kOk;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    rep["ok"] = false;
    rep["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (human) {
      out << "reduce FAIL  " << to_string(e.kind()) << ": " << e.what() << "\n";
    } else {
      emit(out, rep);
    }
    return kFailed;
  }
}

int cmd_oracle(const Flags& fl, std::ostream& out) {
  const ProblemFile p = load_with_flags(fl);
  if (!p.space.is_finite()) throw Error(ErrorKind::Schema, "oracle enumerates finite spaces only");
  std::optional<Coefficients> c = p.coefficients;
  const OracleResult r = enumerate_coincidence(p.space, p.maps, c);
  json rep{{"command", "oracle"}, {"result", to_json(r)}};
  if (fl.structured()) {
    emit(out, rep);
    return kOk;
  }
  for (std::size_t i = 0; i < r.map_names.size(); ++i) {
    out << "fixed points of " << r.map_names[i] << "     " << show(p, r.fixed_points[i]) << "\n";
  }
  out << "common fixed points    " << show(p, r.common_fixed_points) << "\n";
  out << "coincidence points     " << show(p, r.coincidence_points) << "\n";
  if (r.arity == Arity::Four) out << "partner coincidences   " << show(p, r.partner_coincidence_points) << "\n";
  out << "points of coincidence  " << show(p, r.points_of_coincidence) << "\n";
  if (r.condition) print_condition(out, p, *r.condition);
  return kOk;
}

int cmd_fuzz(const FuzzFlags& ff, std::ostream& out) {
  FuzzConfig cfg;
  cfg.seed = ff.seed;
  cfg.count = ff.count;
  cfg.n_min = ff.n_min;
  cfg.n_max = ff.n_max;
  cfg.base.arity = static_cast<Arity>(ff.arity);
  cfg.base.mapping = parse_mapping_mode(ff.mapping);
  cfg.base.denominator = ff.denominator;
  cfg.base.embedding_dimension = ff.dimension;
  cfg.base.f_kind = parse_f_kind(ff.f_kind);
  cfg.base.distinct_g = ff.distinct_g;
  cfg.alternate_metric = ff.metric == "alternate";
  if (!cfg.alternate_metric) cfg.base.metric = parse_metric_mode(ff.metric);

  const FuzzSummary s = run_fuzz(cfg);
  if (ff.format == "structured") {
    json rep = to_json(s);
    rep["command"] = "fuzz";
    rep["seed"] = ff.seed;
    rep["count"] = ff.count;
    emit(out, rep);
  } else {
    out << "seed                   " << ff.seed << "\n";
    out << "instances generated    " << s.generated << "\n";
    out << "hypotheses verified    " << s.verified << "\n";
    out << "solves                 " << s.solves << "\n";
    out << "solver agreements      " << s.agreements << "\n";
    out << "steps checked          " << s.steps_checked << "\n";
    out << "step-ratio violations  " << s.step_ratio_violations << "\n";
    out << "bound violations       " << s.bound_violations << "\n";
    out << "disagreements          " << s.disagreements.size() << "\n";
    for (const auto& d : s.disagreements) {
      out << "--- seed " << d.seed << ": " << d.detail << "\n";
      out << to_json(from_instance(d.instance)).dump() << "\n";
    }
  }
  return s.ok() ? kOk : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Common fixed points of two, three or four self-maps under contractive conditions", "cofix"};
  app.require_subcommand(1);

  // one flag set per subcommand; add_common keeps pointers to the options
  Flags f_check, f_solve, f_solve3, f_solve4, f_reduce, f_oracle;
  FuzzFlags ff;
  auto* check = app.add_subcommand("check", "verify every hypothesis of a problem file");
  add_common(check, f_check, false);
  auto* solve = app.add_subcommand("solve", "alternating iteration for two maps");
  add_common(solve, f_solve, true);
  auto* solve3 = app.add_subcommand("solve3", "three-map pipeline through the induced pair on fE");
  add_common(solve3, f_solve3, true);
  solve3->add_flag("--coincidence", f_solve3.coincidence, "stop at the point of coincidence (no lifting)");
  auto* solve4 = app.add_subcommand("solve4", "four-map pipeline through the induced pair on fE1");
  add_common(solve4, f_solve4, true);
  solve4->add_flag("--coincidence", f_solve4.coincidence, "stop at the point of coincidence (no lifting)");
  auto* reduce = app.add_subcommand("reduce", "print the injective restriction and the induced maps");
  add_common(reduce, f_reduce, false);
  auto* oracle = app.add_subcommand("oracle", "exhaustive fixed and coincidence points (finite spaces)");
  add_common(oracle, f_oracle, false);

  auto* fuzz = app.add_subcommand("fuzz", "seeded instances checked against the oracle");
  fuzz->add_option("--seed", ff.seed, "first seed; instance i uses seed + i");
  fuzz->add_option("--count", ff.count, "number of instances");
  fuzz->add_option("--n-min", ff.n_min, "smallest universe");
  fuzz->add_option("--n-max", ff.n_max, "largest universe");
  fuzz->add_option("--arity", ff.arity, "2, 3 or 4")->check(CLI::Range(2, 4));
  fuzz->add_option("--mapping", ff.mapping, "contraction, random, identity or constant");
  fuzz->add_option("--metric", ff.metric, "alternate, euclidean or repaired");
  fuzz->add_option("--denominator", ff.denominator, "contraction factor 1/denominator")->check(CLI::Range(2, 1000));
  fuzz->add_option("--dimension", ff.dimension, "embedding dimension for the euclidean metric");
  fuzz->add_option("--f-kind", ff.f_kind, "identity, permutation or noninjective");
  fuzz->add_flag("--distinct-g", ff.distinct_g, "arity 4: g differs from f by a permutation");
  fuzz->add_option("--format", ff.format, "output format")->check(CLI::IsMember({"human", "structured"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(f_check, out);
    if (*solve) return cmd_solve(f_solve, out);
    if (*solve3) return cmd_solve_many(f_solve3, out, Arity::Three);
    if (*solve4) return cmd_solve_many(f_solve4, out, Arity::Four);
    if (*reduce) return cmd_reduce(f_reduce, out);
    if (*oracle) return cmd_oracle(f_oracle, out);
    if (*fuzz) return cmd_fuzz(ff, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Schema ? kUsage : kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}

}  // namespace cofix::cli
