#include "problem.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "cofix/error.hpp"

namespace cofix::cli {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::Schema, msg); }

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing \"" + key + "\"");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) schema(where + ": unknown key \"" + k + "\"");
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) schema(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(what + " must be finite");
  return v;
}

std::size_t count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

Vector vector_of(const json& j, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], what);
  return v;
}

std::vector<double> label_coords(const json& label, const std::string& what) {
  if (label.is_number()) return {number(label, what)};
  if (label.is_array()) {
    std::vector<double> out;
    for (const auto& x : label) out.push_back(number(x, what));
    return out;
  }
  schema(what + ": the euclidean metric needs numeric labels (numbers or coordinate arrays)");
}

MetricSpace parse_finite(const json& sp, std::vector<json>& labels) {
  const json& pts = need(sp, "points", "space");
  std::size_t n = 0;
  if (pts.is_array()) {
    labels.assign(pts.begin(), pts.end());
    n = labels.size();
  } else {
    n = count(pts, "space.points");
  }
  if (n == 0) schema("space.points: a finite space needs at least one point");

  const json& metric = need(sp, "metric", "space");
  std::vector<double> table;
  if (metric.is_string()) {
    if (metric.get<std::string>() != "euclidean") schema("space.metric: expected a table or \"euclidean\"");
    if (labels.empty()) schema("space.metric \"euclidean\" on a finite space needs labelled points");
    std::vector<std::vector<double>> coords;
    for (const auto& l : labels) coords.push_back(label_coords(l, "space.points"));
    for (const auto& c : coords) {
      if (c.size() != coords.front().size()) schema("space.points: labels have different dimensions");
    }
    table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < coords[i].size(); ++k) s += (coords[i][k] - coords[j][k]) * (coords[i][k] - coords[j][k]);
        table[i * n + j] = std::sqrt(s);
      }
    }
  } else if (metric.is_array()) {
    const bool nested = !metric.empty() && metric.front().is_array();
    if (nested) {
      if (metric.size() != n) schema("space.metric: expected " + std::to_string(n) + " rows");
      for (const auto& row : metric) {
        if (!row.is_array() || row.size() != n) schema("space.metric: every row needs " + std::to_string(n) + " entries");
        for (const auto& v : row) table.push_back(number(v, "space.metric entry"));
      }
    } else {
      if (metric.size() != n * n) schema("space.metric: flat table needs " + std::to_string(n * n) + " entries");
      for (const auto& v : metric) table.push_back(number(v, "space.metric entry"));
    }
  } else {
    schema("space.metric: expected a table or \"euclidean\"");
  }
  if (sp.contains("complete") && !sp["complete"].get<bool>()) {
    schema("space.complete: finite spaces are always complete");
  }
  return MetricSpace::finite(n, std::move(table));
}

MetricSpace parse_euclidean(const json& sp) {
  const std::size_t m = count(need(sp, "dimension", "space"), "space.dimension");
  if (m == 0) schema("space.dimension must be at least 1");
  if (sp.contains("metric") && sp["metric"] != "euclidean") schema("space.metric: euclidean_affine only supports \"euclidean\"");
  const bool complete = sp.value("complete", true);
  MetricSpace space = MetricSpace::euclidean(m, complete);
  if (sp.contains("point_tolerance")) space = space.with_point_tolerance(number(sp["point_tolerance"], "space.point_tolerance"));
  return space;
}

json coords_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Box parse_box(const json& j, std::size_t m) {
  if (!j.is_array() || j.empty()) schema("pair_source.box must be [lo, hi] or [[lo, hi], ...]");
  if (j.front().is_number()) {
    if (j.size() != 2) schema("pair_source.box must be [lo, hi]");
    const double lo = number(j[0], "box"), hi = number(j[1], "box");
    if (!(lo <= hi)) schema("pair_source.box needs lo <= hi");
    return Box::cube(m, lo, hi);
  }
  if (j.size() != m) schema("pair_source.box needs one [lo, hi] per dimension");
  Box b{Vector(static_cast<Eigen::Index>(m)), Vector(static_cast<Eigen::Index>(m))};
  for (std::size_t i = 0; i < m; ++i) {
    if (!j[i].is_array() || j[i].size() != 2) schema("pair_source.box entries must be [lo, hi]");
    b.lower[static_cast<Eigen::Index>(i)] = number(j[i][0], "box");
    b.upper[static_cast<Eigen::Index>(i)] = number(j[i][1], "box");
    if (!(b.lower[static_cast<Eigen::Index>(i)] <= b.upper[static_cast<Eigen::Index>(i)])) schema("pair_source.box needs lo <= hi");
  }
  return b;
}

}  // namespace

Point point_from_json(const json& j) {
  if (j.is_number_integer() && j.get<long long>() >= 0) return Point::at(j.get<std::size_t>());
  if (j.is_array()) return Point::coords(vector_of(j, "point"));
  schema("a point is an index or a coordinate array");
}

Point parse_point(const MetricSpace& space, const json& j) {
  Point p = space.is_finite() ? Point::at(count(j, "point index")) : Point::coords(vector_of(j, "point"));
  if (!space.contains(p)) schema("point " + p.str() + " is not in the space");
  return p;
}

json to_json(const Point& p) {
  if (p.is_index()) return p.index();
  return coords_json(p.vector());
}

json to_json(const Coefficients& c) {
  return {{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma}, {"delta", c.delta}, {"L", c.L}};
}

Coefficients coefficients_from_json(const json& j) {
  only_keys(j, {"alpha", "beta", "gamma", "delta", "L"}, "coefficients");
  Coefficients c;
  // absent entries are zero
  auto get = [&](const char* k, double& dst) {
    if (j.contains(k)) dst = number(j[k], std::string("coefficients.") + k);
  };
  get("alpha", c.alpha);
  get("beta", c.beta);
  get("gamma", c.gamma);
  get("delta", c.delta);
  get("L", c.L);
  return c;
}

json to_json(const PairSource& s) {
  if (s.is_exhaustive()) return "exhaustive";
  json j{{"samples", s.samples}, {"seed", s.seed}};
  if (s.box) {
    json box = json::array();
    for (std::size_t i = 0; i < s.box->dimension(); ++i) {
      box.push_back({s.box->lower[static_cast<Eigen::Index>(i)], s.box->upper[static_cast<Eigen::Index>(i)]});
    }
    j["box"] = box;
  }
  return j;
}

PairSource pair_source_from_json(const json& j, std::size_t dimension) {
  if (j.is_string()) {
    if (j.get<std::string>() != "exhaustive") schema("pair_source: expected \"exhaustive\" or an object");
    return PairSource::exhaustive();
  }
  only_keys(j, {"samples", "seed", "box"}, "pair_source");
  std::optional<Box> box;
  if (j.contains("box")) box = parse_box(j["box"], dimension);
  const std::size_t samples = count(need(j, "samples", "pair_source"), "pair_source.samples");
  const std::uint64_t seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
  return PairSource::sampled(samples, seed, std::move(box));
}

Mapping parse_mapping(const MetricSpace& space, const json& j, const std::string& name) {
  const std::string where = "mappings." + name;
  Mapping m = Mapping::table({});
  if (space.is_finite()) {
    if (!j.is_array()) schema(where + " must be an index array on a finite space");
    std::vector<std::size_t> t;
    for (const auto& v : j) t.push_back(count(v, where + " entry"));
    m = Mapping::table(std::move(t));
  } else {
    only_keys(j, {"matrix", "offset"}, where);
    const std::size_t d = space.dimension();
    const json& rows = need(j, "matrix", where);
    if (!rows.is_array() || rows.size() != d) schema(where + ".matrix needs " + std::to_string(d) + " rows");
    Matrix A(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r) {
      const Vector row = vector_of(rows[r], where + ".matrix row");
      if (static_cast<std::size_t>(row.size()) != d) schema(where + ".matrix must be square");
      A.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    Vector b = j.contains("offset") ? vector_of(j["offset"], where + ".offset") : Vector::Zero(static_cast<Eigen::Index>(d));
    if (static_cast<std::size_t>(b.size()) != d) schema(where + ".offset has the wrong dimension");
    m = Mapping::affine(std::move(A), std::move(b));
  }
  try {
    m.require_on(space, name);
  } catch (const Error& e) {
    schema(e.what());
  }
  return m;
}

json to_json(const Mapping& m) {
  if (m.is_table()) return m.images();
  const auto& a = m.affine();
  json rows = json::array();
  for (Eigen::Index r = 0; r < a.linear.rows(); ++r) rows.push_back(coords_json(a.linear.row(r).transpose()));
  return {{"matrix", rows}, {"offset", coords_json(a.offset)}};
}

PairSource ProblemFile::pairs_or_default() const {
  if (pair_source) return *pair_source;
  if (space.is_finite()) return PairSource::exhaustive();
  return PairSource::sampled(10000, 0, Box::cube(space.dimension(), -10.0, 10.0));
}

Point ProblemFile::start_or_default() const {
  if (x0) return *x0;
  if (space.is_finite()) return Point::at(0);
  return Point::coords(Vector::Zero(static_cast<Eigen::Index>(space.dimension())));
}

json ProblemFile::label_of(const Point& p) const {
  if (p.is_index() && p.index() < labels.size()) return labels[p.index()];
  return to_json(p);
}

ProblemFile parse_problem(const json& doc) {
  only_keys(doc, {"name", "description", "space", "arity", "mappings", "coefficients", "pair_source", "solver"},
            "problem");
  ProblemFile p;
  const json& sp = need(doc, "space", "problem");
  only_keys(sp, {"flavor", "points", "metric", "dimension", "complete", "point_tolerance"}, "space");
  const json& flavor = need(sp, "flavor", "space");
  try {
    if (flavor == "finite_explicit") {
      p.space = parse_finite(sp, p.labels);
    } else if (flavor == "euclidean_affine") {
      p.space = parse_euclidean(sp);
    } else {
      schema("space.flavor must be \"finite_explicit\" or \"euclidean_affine\"");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema(std::string("space: ") + e.what());
  } catch (const json::exception& e) {
    schema(std::string("space: ") + e.what());
  }

  const json& maps = need(doc, "mappings", "problem");
  only_keys(maps, {"S", "T", "f", "g"}, "mappings");
  std::size_t arity = maps.contains("g") ? 4 : maps.contains("f") ? 3 : 2;
  if (doc.contains("arity")) {
    const std::size_t declared = count(doc["arity"], "arity");
    if (declared < 2 || declared > 4) schema("arity must be 2, 3 or 4");
    if (declared != arity) {
      schema("arity " + std::to_string(declared) + " does not match the mappings given (" + std::to_string(arity) + ")");
    }
  }
  Mapping S = parse_mapping(p.space, need(maps, "S", "mappings"), "S");
  Mapping T = parse_mapping(p.space, need(maps, "T", "mappings"), "T");
  if (arity == 2) {
    p.maps = MappingSet::two(std::move(S), std::move(T));
  } else if (arity == 3) {
    p.maps = MappingSet::three(std::move(S), std::move(T), parse_mapping(p.space, maps["f"], "f"));
  } else {
    if (!maps.contains("f")) schema("mappings: g given without f");
    p.maps = MappingSet::four(std::move(S), std::move(T), parse_mapping(p.space, maps["f"], "f"),
                              parse_mapping(p.space, maps["g"], "g"));
  }

  if (doc.contains("coefficients")) p.coefficients = coefficients_from_json(doc["coefficients"]);
  if (doc.contains("pair_source")) {
    p.pair_source = pair_source_from_json(doc["pair_source"], p.space.dimension());
    if (p.pair_source->is_exhaustive() && !p.space.is_finite()) {
      schema("pair_source: \"exhaustive\" needs a finite space");
    }
  }
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    only_keys(s, {"x0", "max_iters", "tol"}, "solver");
    if (s.contains("x0")) p.x0 = parse_point(p.space, s["x0"]);
    if (s.contains("max_iters")) p.max_iters = count(s["max_iters"], "solver.max_iters");
    if (s.contains("tol")) {
      p.tol = number(s["tol"], "solver.tol");
      if (*p.tol < 0) schema("solver.tol must be nonnegative");
    }
  }
  return p;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    schema(path.string() + ": " + e.what());
  }
  try {
    return parse_problem(doc);
  } catch (const json::exception& e) {
    schema(e.what());
  }
}

json to_json(const ProblemFile& p) {
  json doc;
  json sp;
  sp["flavor"] = std::string(to_string(p.space.flavor()));
  if (p.space.is_finite()) {
    const std::size_t n = p.space.size();
    if (p.labels.empty()) {
      sp["points"] = n;
    } else {
      sp["points"] = p.labels;
    }
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(p.space.table(i, j));
      rows.push_back(row);
    }
    sp["metric"] = rows;
  } else {
    sp["dimension"] = p.space.dimension();
    sp["metric"] = "euclidean";
    sp["complete"] = p.space.complete();
    sp["point_tolerance"] = p.space.point_tolerance();
  }
  doc["space"] = sp;
  doc["arity"] = static_cast<int>(p.maps.arity);
  json maps{{"S", to_json(p.maps.S)}, {"T", to_json(p.maps.T)}};
  if (p.maps.f) maps["f"] = to_json(*p.maps.f);
  if (p.maps.g) maps["g"] = to_json(*p.maps.g);
  doc["mappings"] = maps;
  if (p.coefficients) doc["coefficients"] = to_json(*p.coefficients);
  if (p.pair_source) doc["pair_source"] = to_json(*p.pair_source);
  json solver = json::object();
  if (p.x0) solver["x0"] = to_json(*p.x0);
  if (p.max_iters) solver["max_iters"] = *p.max_iters;
  if (p.tol) solver["tol"] = *p.tol;
  if (!solver.empty()) doc["solver"] = solver;
  return doc;
}

ProblemFile from_instance(const Instance& instance) {
  ProblemFile p;
  p.space = instance.space;
  p.maps = instance.maps;
  p.coefficients = instance.coefficients;
  return p;
}

}  // namespace cofix::cli
