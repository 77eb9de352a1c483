#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cofix/contraction.hpp"
#include "cofix/generator.hpp"
#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"

namespace cofix::cli {

using json = nlohmann::json;

// One problem instance as read from a file. Finite mappings are index arrays
// over 0..n-1 regardless of labels; labels only change how points print.
struct ProblemFile {
  MetricSpace space = MetricSpace::euclidean(1);
  std::vector<json> labels;  // finite only, empty when points was a count
  MappingSet maps = MappingSet::two(Mapping::table({}), Mapping::table({}));
  std::optional<Coefficients> coefficients;
  std::optional<PairSource> pair_source;
  std::optional<Point> x0;
  std::optional<std::size_t> max_iters;
  std::optional<double> tol;

  // Pair source from the file, else exhaustive (finite) or 10000 seeded
  // samples in [-10,10]^m (Euclidean).
  PairSource pairs_or_default() const;
  Point start_or_default() const;
  // Point rendered with its label when one exists.
  json label_of(const Point& p) const;
};

// All failures throw Error{Schema}.
ProblemFile parse_problem(const json& doc);
ProblemFile load_problem(const std::filesystem::path& path);
json to_json(const ProblemFile& problem);

ProblemFile from_instance(const Instance& instance);

// Index for finite points, coordinate array for Euclidean ones.
Point point_from_json(const json& j);
Point parse_point(const MetricSpace& space, const json& j);
json to_json(const Point& p);

json to_json(const Coefficients& c);
Coefficients coefficients_from_json(const json& j);

json to_json(const PairSource& s);
PairSource pair_source_from_json(const json& j, std::size_t dimension);

Mapping parse_mapping(const MetricSpace& space, const json& j, const std::string& name);
json to_json(const Mapping& m);

}  // namespace cofix::cli
