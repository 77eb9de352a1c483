#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cofix/contraction.hpp"
#include "cofix/mapping.hpp"
#include "cofix/metric.hpp"

namespace cofix {

enum class MetricMode {
  EuclideanEmbedding,  // random points in the unit cube, tabulated
  RepairedTable,       // random integer table made metric by shortest-path closure
};

enum class MappingMode {
  ContractionToAnchor,  // S = T = "step towards the anchor", a 1/r contraction
  Random,               // arbitrary tables; coefficients synthesized when possible
  Identity,
  Constant,             // everything to the anchor
};

/// Shape of f on arity three/four instances.
enum class FKind {
  Identity,
  Permutation,   // bijection fixing the anchor
  NonInjective,  // at least one point shares its image with another (n >= 2)
};

std::string_view to_string(MetricMode m) noexcept;
std::string_view to_string(MappingMode m) noexcept;
std::string_view to_string(FKind k) noexcept;
MetricMode parse_metric_mode(std::string_view s);
MappingMode parse_mapping_mode(std::string_view s);
FKind parse_f_kind(std::string_view s);

struct InstanceRecipe {
  std::uint64_t seed = 1;
  std::size_t n = 8;
  MetricMode metric = MetricMode::EuclideanEmbedding;
  MappingMode mapping = MappingMode::ContractionToAnchor;
  Arity arity = Arity::Two;
  std::size_t denominator = 2;          // contraction factor 1/denominator
  std::size_t embedding_dimension = 2;
  FKind f_kind = FKind::NonInjective;
  bool distinct_g = false;              // arity four: g = f o pi for a random pi fixing the anchor
};

struct HypothesisCheck {
  bool metric = false;
  bool coefficients = false;
  bool condition = false;
  bool inclusions = false;
  bool compatibility = false;  // vacuous (true) for arity two
  std::vector<std::string> failures;

  bool all() const noexcept { return metric && coefficients && condition && inclusions && compatibility; }
};

/// Exhaustive verification of every hypothesis needed for a unique common
/// fixed point: metric axioms, coefficient bounds, the contractive condition,
/// range inclusions and (arity three/four) weak compatibility.
HypothesisCheck verify_hypotheses(const MetricSpace& space, const MappingSet& maps, const Coefficients& c);

struct Instance {
  InstanceRecipe recipe;
  MetricSpace space = MetricSpace::euclidean(1);
  MappingSet maps = MappingSet::two(Mapping::table({}), Mapping::table({}));
  Coefficients coefficients;
  std::size_t anchor = 0;
  bool hypotheses_verified = false;
  std::vector<std::string> notes;
};

/// Same recipe, same instance, bit for bit. Throws Error{RepairFailure} if the
/// repaired table is not strictly positive off the diagonal.
Instance generate_instance(const InstanceRecipe& recipe);

/// Shortest-path closure of a symmetric table, repeated until no entry
/// changes, so the triangle inequality holds exactly in floating point.
void metric_closure(std::vector<double>& table, std::size_t n);

}  // namespace cofix
