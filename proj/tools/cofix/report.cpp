#include "report.hpp"

#include "cofix/error.hpp"
#include "problem.hpp"

namespace cofix::cli {

namespace {

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

json optional_point(const std::optional<Point>& p) { return p ? to_json(*p) : json(nullptr); }

json stages_json(const std::vector<StageEntry>& stages) {
  json a = json::array();
  for (const auto& s : stages) a.push_back({{"stage", s.stage}, {"ok", s.ok}, {"detail", s.detail}});
  return a;
}

json coincidences_json(const std::vector<Coincidence>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"x", to_json(c.x)}, {"value", to_json(c.value)}});
  return a;
}

}  // namespace

json to_json(const AxiomReport& r) {
  json axioms = json::array();
  for (const auto& a : r.axioms) {
    json j{{"axiom", a.axiom}, {"passed", a.passed}};
    if (!a.passed) {
      j["witness"] = points_json(a.witness_points);
      j["magnitude"] = a.magnitude;
    }
    axioms.push_back(j);
  }
  return {{"passed", r.passed()}, {"sampled", r.sampled}, {"checked", r.checked}, {"axioms", axioms}};
}

json to_json(const ViolationReport& r) {
  return {{"condition", r.condition},
          {"satisfied", r.satisfied},
          {"worst_pair", {to_json(r.worst_x), to_json(r.worst_y)}},
          {"worst_margin", r.worst_margin},
          {"worst_lhs", r.worst_lhs},
          {"worst_rhs", r.worst_rhs},
          {"pairs_checked", r.pairs_checked},
          {"mode", r.source.is_exhaustive() ? "exhaustive" : "sampled"},
          {"pair_source", to_json(r.source)},
          {"tolerance", r.tolerance}};
}

ViolationReport violation_from_json(const json& j) {
  ViolationReport r;
  r.condition = j.at("condition").get<std::string>();
  r.satisfied = j.at("satisfied").get<bool>();
  r.worst_x = point_from_json(j.at("worst_pair").at(0));
  r.worst_y = point_from_json(j.at("worst_pair").at(1));
  r.worst_margin = j.at("worst_margin").get<double>();
  r.worst_lhs = j.at("worst_lhs").get<double>();
  r.worst_rhs = j.at("worst_rhs").get<double>();
  r.pairs_checked = j.at("pairs_checked").get<std::size_t>();
  const json& src = j.at("pair_source");
  std::size_t dim = 0;
  if (src.is_object() && src.contains("box")) dim = src["box"].size();
  r.source = pair_source_from_json(src, dim);
  r.tolerance = j.at("tolerance").get<double>();
  return r;
}

json to_json(const InclusionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"relation", c.relation}, {"holds", c.holds}};
    if (!c.holds) {
      j["argument"] = optional_point(c.argument);
      j["value"] = optional_point(c.value);
      j["detail"] = c.detail;
    }
    checks.push_back(j);
  }
  return {{"holds", r.holds()}, {"sampled", r.sampled}, {"checks", checks}};
}

json to_json(const SynthesisResult& r) {
  json j{{"feasible", r.feasible()}, {"rows", r.rows}};
  if (r.coefficients) j["coefficients"] = to_json(*r.coefficients);
  if (r.verification) j["verification"] = to_json(*r.verification);
  if (!r.feasible()) {
    j["binding_pair"] = {to_json(r.binding_x), to_json(r.binding_y)};
    j["binding_deficit"] = r.binding_deficit;
  }
  return j;
}

json to_json(const WeakCompatibility& w) {
  return {{"compatible", w.compatible}, {"coincidences", w.coincidences}, {"witness", optional_point(w.witness)}};
}

json to_json(const SolveReport& r, bool with_trace) {
  json j{{"status", std::string(to_string(r.status))},
         {"rate_k", r.rate_k},
         {"limit", to_json(r.limit)},
         {"residual_S", r.residual_S},
         {"residual_T", r.residual_T},
         {"iterations", r.iterations()},
         {"tolerance", r.tolerance},
         {"stop_threshold", r.stop_threshold},
         {"violation_step", r.violation_step ? json(*r.violation_step) : json(nullptr)}};
  if (with_trace) {
    std::string parity(r.trace.produced_by.begin(), r.trace.produced_by.end());
    j["trace"] = {{"iterates", points_json(r.trace.iterates)},
                  {"steps", r.trace.steps},
                  {"produced_by", parity},
                  {"apriori_bounds", r.apriori_bounds}};
  } else if (!r.trace.steps.empty()) {
    j["first_step"] = r.trace.steps.front();
    j["last_step"] = r.trace.steps.back();
  }
  return j;
}

SolveStatus parse_status(const std::string& s) {
  for (SolveStatus st : {SolveStatus::Converged, SolveStatus::MaxIterations, SolveStatus::RateViolated}) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorKind::Schema, "unknown solve status " + s);
}

SolveReport solve_report_from_json(const json& j) {
  SolveReport r;
  r.status = parse_status(j.at("status").get<std::string>());
  r.rate_k = j.at("rate_k").get<double>();
  r.limit = point_from_json(j.at("limit"));
  r.residual_S = j.at("residual_S").get<double>();
  r.residual_T = j.at("residual_T").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.stop_threshold = j.at("stop_threshold").get<double>();
  if (!j.at("violation_step").is_null()) r.violation_step = j["violation_step"].get<std::size_t>();
  if (j.contains("trace")) {
    const json& t = j["trace"];
    for (const auto& p : t.at("iterates")) r.trace.iterates.push_back(point_from_json(p));
    r.trace.steps = t.at("steps").get<std::vector<double>>();
    const auto parity = t.at("produced_by").get<std::string>();
    r.trace.produced_by.assign(parity.begin(), parity.end());
    r.apriori_bounds = t.at("apriori_bounds").get<std::vector<double>>();
  }
  return r;
}

json to_json(const ReductionWitness& w) {
  json j{{"arity", static_cast<int>(w.arity)}};
  if (w.image_space.is_finite()) {
    // induced maps in global indices, listed in the order of `image`
    auto global = [&](const Mapping& m) {
      json a = json::array();
      for (std::size_t i = 0; i < w.image.size(); ++i) a.push_back(w.image[m(i)]);
      return a;
    };
    j["image"] = w.image;
    if (w.restriction_f) j["E1"] = w.restriction_f->subset;
    if (w.restriction_g) j["E2"] = w.restriction_g->subset;
    j["first"] = global(w.first);
    j["second"] = global(w.second);
    json section = json::object();
    for (std::size_t y : w.image) section[std::to_string(y)] = to_json(w.section_f(Point::at(y)));
    j["section_f"] = section;
  } else {
    j["image"] = "R^" + std::to_string(w.image_space.dimension());
    if (w.inverse_f) j["inverse_f"] = to_json(*w.inverse_f);
    if (w.inverse_g) j["inverse_g"] = to_json(*w.inverse_g);
    j["first"] = to_json(w.first);
    j["second"] = to_json(w.second);
  }
  j["first_name"] = w.arity == Arity::Three ? "g" : "A";
  j["second_name"] = w.arity == Arity::Three ? "h" : "B";
  return j;
}

json to_json(const CoincidenceReport& r, bool with_trace) {
  json j{{"arity", static_cast<int>(r.arity)},
         {"stages", stages_json(r.stages)},
         {"coincidence_only", r.coincidence_only},
         {"coincidence_point", to_json(r.coincidence_point)},
         {"point_of_coincidence", to_json(r.point_of_coincidence)},
         {"partner_point", optional_point(r.partner_point)},
         {"common_fixed_point", optional_point(r.common_fixed_point)},
         {"coincidences", coincidences_json(r.coincidences)}};
  if (r.compatibility_first) j["compatibility_first"] = to_json(*r.compatibility_first);
  if (r.compatibility_second) j["compatibility_second"] = to_json(*r.compatibility_second);
  if (r.witness) j["witness"] = to_json(*r.witness);
  j["induced_solve"] = to_json(r.induced_solve, with_trace);
  return j;
}

json to_json(const OracleResult& r) {
  json fixed = json::object();
  for (std::size_t i = 0; i < r.map_names.size(); ++i) fixed[r.map_names[i]] = r.fixed_points[i];
  json j{{"arity", static_cast<int>(r.arity)},
         {"fixed_points", fixed},
         {"common_fixed_points", r.common_fixed_points},
         {"coincidence_points", r.coincidence_points},
         {"points_of_coincidence", r.points_of_coincidence}};
  if (r.arity == Arity::Four) j["partner_coincidence_points"] = r.partner_coincidence_points;
  if (r.condition) j["condition"] = to_json(*r.condition);
  return j;
}

json to_json(const FuzzSummary& s) {
  json findings = json::array();
  for (const auto& f : s.disagreements) {
    findings.push_back({{"seed", f.seed}, {"detail", f.detail}, {"instance", to_json(from_instance(f.instance))}});
  }
  return {{"generated", s.generated},
          {"verified", s.verified},
          {"solves", s.solves},
          {"agreements", s.agreements},
          {"steps_checked", s.steps_checked},
          {"step_ratio_violations", s.step_ratio_violations},
          {"bound_violations", s.bound_violations},
          {"disagreements", findings},
          {"ok", s.ok()}};
}

}  // namespace cofix::cli
