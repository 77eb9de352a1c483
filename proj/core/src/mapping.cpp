#include "cofix/mapping.hpp"

#include <numeric>

#include "cofix/error.hpp"

namespace cofix {

Mapping Mapping::table(std::vector<std::size_t> images) { return Mapping(std::move(images)); }

Mapping Mapping::affine(Matrix linear, Vector offset) {
  if (linear.rows() != linear.cols() || linear.rows() != offset.size()) {
    throw Error(ErrorKind::Domain, "affine map needs a square matrix matching the offset dimension");
  }
  return Mapping(AffineMap{std::move(linear), std::move(offset)});
}

Mapping Mapping::identity(const MetricSpace& space) {
  if (space.is_finite()) {
    std::vector<std::size_t> t(space.size());
    std::iota(t.begin(), t.end(), std::size_t{0});
    return table(std::move(t));
  }
  const auto m = static_cast<Eigen::Index>(space.dimension());
  return affine(Matrix::Identity(m, m), Vector::Zero(m));
}

Mapping Mapping::constant(std::size_t n, std::size_t value) {
  return table(std::vector<std::size_t>(n, value));
}

const std::vector<std::size_t>& Mapping::images() const {
  if (const auto* t = std::get_if<std::vector<std::size_t>>(&rep_)) return *t;
  throw Error(ErrorKind::Domain, "affine mapping has no index table");
}

const AffineMap& Mapping::affine() const {
  if (const auto* a = std::get_if<AffineMap>(&rep_)) return *a;
  throw Error(ErrorKind::Domain, "table mapping has no affine form");
}

Point Mapping::operator()(const Point& x) const {
  if (is_table()) {
    const auto& t = images();
    const std::size_t i = x.index();
    if (i >= t.size()) throw Error(ErrorKind::Domain, "point " + x.str() + " outside the mapping's domain");
    return Point::at(t[i]);
  }
  const auto& a = affine();
  if (static_cast<std::size_t>(x.vector().size()) != a.dimension()) {
    throw Error(ErrorKind::Domain, "point dimension does not match the affine map");
  }
  return Point::coords(a(x.vector()));
}

void Mapping::require_on(const MetricSpace& space, std::string_view name) const {
  const std::string who(name);
  if (space.is_finite()) {
    if (!is_table()) throw Error(ErrorKind::Domain, who + " must be an index table on a finite space");
    const auto& t = images();
    if (t.size() != space.size()) {
      throw Error(ErrorKind::Domain, who + " has " + std::to_string(t.size()) + " entries, universe has " +
                                         std::to_string(space.size()));
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= space.size()) {
        throw Error(ErrorKind::Domain, who + "(" + std::to_string(i) + ") = " + std::to_string(t[i]) +
                                           " is outside the universe");
      }
    }
  } else {
    if (is_table()) throw Error(ErrorKind::Domain, who + " must be affine on a Euclidean space");
    if (affine().dimension() != space.dimension()) {
      throw Error(ErrorKind::Domain, who + " dimension does not match the space");
    }
  }
}

Mapping Mapping::after(const Mapping& inner) const {
  if (is_table() && inner.is_table()) {
    const auto& outer = images();
    std::vector<std::size_t> t;
    t.reserve(inner.images().size());
    for (std::size_t v : inner.images()) t.push_back(outer.at(v));
    return table(std::move(t));
  }
  const auto& a = affine();
  const auto& b = inner.affine();
  return affine(a.linear * b.linear, a.linear * b.offset + a.offset);
}

bool operator==(const Mapping& a, const Mapping& b) {
  if (a.is_table() != b.is_table()) return false;
  if (a.is_table()) return a.images() == b.images();
  const auto& x = a.affine();
  const auto& y = b.affine();
  return x.linear.rows() == y.linear.rows() && x.linear == y.linear && x.offset == y.offset;
}

MappingSet MappingSet::two(Mapping S, Mapping T) { return {std::move(S), std::move(T), {}, {}, Arity::Two}; }

MappingSet MappingSet::three(Mapping S, Mapping T, Mapping f) {
  return {std::move(S), std::move(T), std::move(f), {}, Arity::Three};
}

MappingSet MappingSet::four(Mapping S, Mapping T, Mapping f, Mapping g) {
  return {std::move(S), std::move(T), std::move(f), std::move(g), Arity::Four};
}

void MappingSet::require_on(const MetricSpace& space) const {
  S.require_on(space, "S");
  T.require_on(space, "T");
  if (arity != Arity::Two && !f) throw Error(ErrorKind::Domain, "arity three/four requires f");
  if (arity == Arity::Four && !g) throw Error(ErrorKind::Domain, "arity four requires g");
  if (f) f->require_on(space, "f");
  if (g) g->require_on(space, "g");
}

const Mapping& MappingSet::get_f() const {
  if (!f) throw Error(ErrorKind::Domain, "mapping set has no f");
  return *f;
}

const Mapping& MappingSet::get_g() const {
  if (!g) throw Error(ErrorKind::Domain, "mapping set has no g");
  return *g;
}

}  // namespace cofix
