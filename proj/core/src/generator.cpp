#include "cofix/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cofix/error.hpp"
#include "cofix/random.hpp"
#include "cofix/reduction.hpp"
#include "cofix/synthesis.hpp"

namespace cofix {

std::string_view to_string(MetricMode m) noexcept {
  return m == MetricMode::EuclideanEmbedding ? "euclidean" : "repaired";
}

std::string_view to_string(MappingMode m) noexcept {
  switch (m) {
    case MappingMode::ContractionToAnchor: return "contraction";
    case MappingMode::Random: return "random";
    case MappingMode::Identity: return "identity";
    case MappingMode::Constant: return "constant";
  }
  return "unknown";
}

std::string_view to_string(FKind k) noexcept {
  switch (k) {
    case FKind::Identity: return "identity";
    case FKind::Permutation: return "permutation";
    case FKind::NonInjective: return "noninjective";
  }
  return "unknown";
}

MetricMode parse_metric_mode(std::string_view s) {
  if (s == "euclidean") return MetricMode::EuclideanEmbedding;
  if (s == "repaired") return MetricMode::RepairedTable;
  throw Error(ErrorKind::Schema, "unknown metric mode '" + std::string(s) + "'");
}

MappingMode parse_mapping_mode(std::string_view s) {
  if (s == "contraction") return MappingMode::ContractionToAnchor;
  if (s == "random") return MappingMode::Random;
  if (s == "identity") return MappingMode::Identity;
  if (s == "constant") return MappingMode::Constant;
  throw Error(ErrorKind::Schema, "unknown mapping mode '" + std::string(s) + "'");
}

FKind parse_f_kind(std::string_view s) {
  if (s == "identity") return FKind::Identity;
  if (s == "permutation") return FKind::Permutation;
  if (s == "noninjective") return FKind::NonInjective;
  throw Error(ErrorKind::Schema, "unknown f kind '" + std::string(s) + "'");
}

HypothesisCheck verify_hypotheses(const MetricSpace& space, const MappingSet& maps, const Coefficients& c) {
  HypothesisCheck h;
  const AxiomReport axioms = verify_metric_axioms(space, 0.0);
  h.metric = axioms.passed();
  if (!h.metric) h.failures.push_back("metric axioms");

  try {
    validate_coefficients(c);
    h.coefficients = true;
  } catch (const Error& e) {
    h.failures.push_back(e.what());
  }

  const ViolationReport cond = check_condition(space, maps, c, PairSource::exhaustive());
  h.condition = cond.satisfied;
  if (!h.condition) {
    h.failures.push_back(cond.condition + " violated at (" + cond.worst_x.str() + ", " + cond.worst_y.str() + ")");
  }

  const InclusionReport inc = check_range_inclusions(space, maps);
  h.inclusions = inc.holds();
  if (!h.inclusions) h.failures.push_back("range inclusion " + inc.first_failure()->relation);

  h.compatibility = true;
  if (maps.arity != Arity::Two) {
    const bool first = is_weakly_compatible(space, maps.S, maps.get_f()).compatible;
    const Mapping& partner = maps.arity == Arity::Four ? maps.get_g() : maps.get_f();
    const bool second = is_weakly_compatible(space, maps.T, partner).compatible;
    h.compatibility = first && second;
    if (!h.compatibility) h.failures.push_back("weak compatibility");
  }
  return h;
}

void metric_closure(std::vector<double>& table, std::size_t n) {
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double dij = table[i * n + j];
        for (std::size_t k = 0; k < n; ++k) {
          const double through = dij + table[j * n + k];
          if (through < table[i * n + k]) {
            table[i * n + k] = through;
            changed = true;
          }
        }
      }
    }
    if (!changed) return;
  }
}

namespace {

std::vector<double> base_metric(const InstanceRecipe& recipe, Rng& rng) {
  const std::size_t n = recipe.n;
  std::vector<double> d(n * n, 0.0);
  if (recipe.metric == MetricMode::EuclideanEmbedding) {
    const Box box = Box::cube(std::max<std::size_t>(1, recipe.embedding_dimension), 0.0, 1.0);
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.in_box(box));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = (pts[i] - pts[j]).norm();
    }
  } else {
    const auto hi = static_cast<std::int64_t>(std::max<std::size_t>(2, 2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = static_cast<double>(rng.integer(1, hi));
    }
  }
  metric_closure(d, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !(d[i * n + j] > 0.0)) {
        throw Error(ErrorKind::RepairFailure, "repaired table has a non-positive entry at (" + std::to_string(i) +
                                                  ", " + std::to_string(j) + ")");
      }
    }
  }
  return d;
}

// Random recursive tree rooted at the anchor: order[0] is the anchor, every
// later node hangs under a uniformly chosen earlier node.
struct Tree {
  std::vector<std::size_t> order;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> depth;
};

Tree random_tree(std::size_t n, Rng& rng) {
  Tree t;
  t.order.resize(n);
  std::iota(t.order.begin(), t.order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(t.order[i - 1], t.order[rng.index(i)]);
  t.parent.assign(n, 0);
  t.depth.assign(n, 0);
  t.parent[t.order[0]] = t.order[0];
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t p = t.order[rng.index(i)];
    t.parent[t.order[i]] = p;
    t.depth[t.order[i]] = t.depth[p] + 1;
  }
  return t;
}

// Path metric on the tree where the edge above a depth-i node weighs
// scale * ratio^i. Moving to the parent then shrinks every distance by at
// least the factor 1/ratio.
std::vector<double> tree_metric(const Tree& tree, double ratio, double scale) {
  const std::size_t n = tree.parent.size();
  std::vector<double> up(n, 0.0);  // distance to the root
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t x = tree.order[i];
    up[x] = up[tree.parent[x]] + scale * std::pow(ratio, static_cast<double>(tree.depth[x]));
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t x = a, y = b;
      while (x != y) {
        if (tree.depth[x] >= tree.depth[y]) x = tree.parent[x]; else y = tree.parent[y];
      }
      d[a * n + b] = d[b * n + a] = up[a] + up[b] - 2.0 * up[x];
    }
  }
  return d;
}

std::vector<std::size_t> permutation_fixing(std::size_t n, std::size_t fixed, Rng& rng,
                                            const std::vector<std::size_t>& domain) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  std::vector<std::size_t> movable;
  for (std::size_t x : domain) {
    if (x != fixed) movable.push_back(x);
  }
  std::vector<std::size_t> shuffled = movable;
  for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
  for (std::size_t i = 0; i < movable.size(); ++i) out[movable[i]] = shuffled[i];
  return out;
}

void contraction_instance(Instance& inst, Rng& rng) {
  const InstanceRecipe& r = inst.recipe;
  const std::size_t n = r.n;
  const double lambda = 1.0 / static_cast<double>(r.denominator);

  const Tree tree = random_tree(n, rng);
  inst.anchor = tree.order[0];

  // core Y: an ancestor-closed prefix of the insertion order; f maps onto Y
  std::size_t core = n;
  if (r.arity != Arity::Two && r.f_kind == FKind::NonInjective && n >= 2) core = n - 1 - rng.index(n / 2);
  const std::vector<std::size_t> Y(tree.order.begin(), tree.order.begin() + static_cast<std::ptrdiff_t>(core));

  // tree contraction 1/(2r) leaves half the slack for the base metric term
  const double scale = static_cast<double>(rng.integer(1, 4));
  const std::vector<double> t = tree_metric(tree, 2.0 * static_cast<double>(r.denominator), scale);
  const std::vector<double> d0 = base_metric(r, rng);

  double eps = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t px = tree.parent[x], py = tree.parent[y];
      const double excess = d0[px * n + py] - lambda * d0[x * n + y];
      if (excess <= 0.0) continue;
      const double slack = lambda * t[x * n + y] - t[px * n + py];
      eps = std::min(eps, 0.5 * slack / excess);
    }
  }
  double tmax = 0.0, dmax = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) {
    tmax = std::max(tmax, t[i]);
    dmax = std::max(dmax, d0[i]);
  }
  if (dmax > 0.0) eps = std::min(eps, tmax / dmax);
  if (!std::isfinite(eps)) eps = 1.0;

  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n * n; ++i) d[i] = t[i] + eps * d0[i];
  metric_closure(d, n);
  inst.space = MetricSpace::finite(n, std::move(d));

  const Mapping step = Mapping::table(tree.parent);
  if (r.arity == Arity::Two) {
    inst.maps = MappingSet::two(step, step);
  } else {
    std::vector<std::size_t> f(n);
    std::iota(f.begin(), f.end(), std::size_t{0});
    if (r.f_kind != FKind::Identity) f = permutation_fixing(n, inst.anchor, rng, Y);
    for (std::size_t i = core; i < n; ++i) f[tree.order[i]] = Y[rng.index(Y.size())];
    const Mapping fm = Mapping::table(std::move(f));
    const Mapping S = step.after(fm);
    if (r.arity == Arity::Three) {
      inst.maps = MappingSet::three(S, S, fm);
    } else {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      const Mapping pi = r.distinct_g ? Mapping::table(permutation_fixing(n, inst.anchor, rng, all))
                                      : Mapping::identity(inst.space);
      const Mapping gm = fm.after(pi);
      inst.maps = MappingSet::four(S, step.after(gm), fm, gm);
    }
  }
  inst.coefficients = Coefficients{0.0, 0.0, lambda, 0.0, 0.0};
}

std::vector<std::size_t> random_table(std::size_t n, Rng& rng) {
  std::vector<std::size_t> t(n);
  for (auto& v : t) v = rng.index(n);
  return t;
}

void other_instance(Instance& inst, Rng& rng) {
  const InstanceRecipe& r = inst.recipe;
  const std::size_t n = r.n;
  inst.anchor = rng.index(n);
  inst.space = MetricSpace::finite(n, base_metric(r, rng));
  const double lambda = 1.0 / static_cast<double>(r.denominator);
  inst.coefficients = Coefficients{0.0, 0.0, lambda, 0.0, 0.0};

  const Mapping id = Mapping::identity(inst.space);
  Mapping S = id, T = id, f = id, g = id;
  switch (r.mapping) {
    case MappingMode::Random:
      S = Mapping::table(random_table(n, rng));
      T = Mapping::table(random_table(n, rng));
      if (r.arity != Arity::Two) f = Mapping::table(random_table(n, rng));
      if (r.arity == Arity::Four) g = Mapping::table(random_table(n, rng));
      break;
    case MappingMode::Constant:
      S = T = Mapping::constant(n, inst.anchor);
      break;
    default:
      break;
  }
  switch (r.arity) {
    case Arity::Two: inst.maps = MappingSet::two(S, T); break;
    case Arity::Three: inst.maps = MappingSet::three(S, T, f); break;
    case Arity::Four: inst.maps = MappingSet::four(S, T, f, g); break;
  }

  if (r.mapping == MappingMode::Random) {
    const SynthesisResult s = synthesize_coefficients(inst.space, inst.maps, PairSource::exhaustive());
    if (s.feasible()) {
      inst.coefficients = *s.coefficients;
      inst.notes.push_back("coefficients synthesized");
    } else {
      inst.notes.push_back("no admissible coefficients for the random maps");
    }
  }
}

}  // namespace

Instance generate_instance(const InstanceRecipe& recipe) {
  if (recipe.n == 0) throw Error(ErrorKind::Domain, "instance needs at least one point");
  if (recipe.denominator < 2) throw Error(ErrorKind::Domain, "contraction denominator must be at least 2");
  Instance inst;
  inst.recipe = recipe;
  Rng rng(recipe.seed);
  if (recipe.mapping == MappingMode::ContractionToAnchor) {
    contraction_instance(inst, rng);
  } else {
    other_instance(inst, rng);
  }
  const HypothesisCheck h = verify_hypotheses(inst.space, inst.maps, inst.coefficients);
  inst.hypotheses_verified = h.all();
  inst.notes.insert(inst.notes.end(), h.failures.begin(), h.failures.end());
  return inst;
}

}  // namespace cofix
