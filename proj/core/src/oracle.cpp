#include "cofix/oracle.hpp"

#include <algorithm>
#include <set>

#include "cofix/error.hpp"

namespace cofix {

namespace {

void require_finite(const MetricSpace& space) {
  if (!space.is_finite()) throw Error(ErrorKind::Domain, "oracle enumeration needs a finite universe");
}

}  // namespace

std::vector<std::size_t> enumerate_fixed_points(const MetricSpace& space, const Mapping& map) {
  require_finite(space);
  map.require_on(space);
  std::vector<std::size_t> out;
  const auto& t = map.images();
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x] == x) out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> enumerate_common_fixed_points(const MetricSpace& space, std::span<const Mapping> maps) {
  require_finite(space);
  if (maps.size() < 2) throw Error(ErrorKind::Domain, "common fixed points need at least two maps");
  for (const auto& m : maps) m.require_on(space);
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (std::all_of(maps.begin(), maps.end(), [x](const Mapping& m) { return m.images()[x] == x; })) out.push_back(x);
  }
  return out;
}

OracleResult enumerate_coincidence(const MetricSpace& space, const MappingSet& maps,
                                   const std::optional<Coefficients>& coefficients) {
  require_finite(space);
  maps.require_on(space);

  OracleResult r;
  r.arity = maps.arity;
  std::vector<Mapping> all{maps.S, maps.T};
  r.map_names = {"S", "T"};
  if (maps.arity != Arity::Two) {
    all.push_back(maps.get_f());
    r.map_names.push_back("f");
  }
  if (maps.arity == Arity::Four) {
    all.push_back(maps.get_g());
    r.map_names.push_back("g");
  }
  for (const auto& m : all) r.fixed_points.push_back(enumerate_fixed_points(space, m));
  r.common_fixed_points = enumerate_common_fixed_points(space, all);

  const auto& S = maps.S.images();
  const auto& T = maps.T.images();
  std::set<std::size_t> values;
  switch (maps.arity) {
    case Arity::Two:
      for (std::size_t x = 0; x < space.size(); ++x) {
        if (S[x] == T[x]) {
          r.coincidence_points.push_back(x);
          values.insert(S[x]);
        }
      }
      break;
    case Arity::Three: {
      const auto& f = maps.get_f().images();
      for (std::size_t x = 0; x < space.size(); ++x) {
        if (S[x] == f[x] && T[x] == f[x]) {
          r.coincidence_points.push_back(x);
          values.insert(f[x]);
        }
      }
      break;
    }
    case Arity::Four: {
      const auto& f = maps.get_f().images();
      const auto& g = maps.get_g().images();
      std::set<std::size_t> first, second;
      for (std::size_t x = 0; x < space.size(); ++x) {
        if (S[x] == f[x]) {
          r.coincidence_points.push_back(x);
          first.insert(f[x]);
        }
        if (T[x] == g[x]) {
          r.partner_coincidence_points.push_back(x);
          second.insert(g[x]);
        }
      }
      std::set_intersection(first.begin(), first.end(), second.begin(), second.end(),
                            std::inserter(values, values.end()));
      break;
    }
  }
  r.points_of_coincidence.assign(values.begin(), values.end());

  if (coefficients) r.condition = check_condition(space, maps, *coefficients, PairSource::exhaustive());
  return r;
}

}  // namespace cofix
