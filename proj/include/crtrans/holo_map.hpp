#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/poly.hpp"

namespace crtrans {

/// Polynomial holomorphic map H = (H_1, ..., H_{N'}) from the source space
/// into a target space of dimension N'.
class HoloMap {
public:
  HoloMap(SpacePtr source, SpacePtr target, std::vector<Poly> components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (components_.size() != target_->dim())
      throw DimensionMismatch("map has " + std::to_string(components_.size()) + " components, target dimension is " +
                              std::to_string(target_->dim()));
    for (auto& c : components_) {
      if (c.space() == nullptr) c = Poly(source_);
      if (!same_space(c.space(), source_)) throw VarSpaceMismatch("map component outside the source space");
      if (!c.is_holomorphic()) throw InvalidInput("map component '" + c.str() + "' is not holomorphic");
    }
  }

  static HoloMap identity(const SpacePtr& space) {
    std::vector<Poly> comps;
    for (std::size_t j = 0; j < space->dim(); ++j) comps.push_back(Poly::holo(space, j));
    return {space, space, std::move(comps)};
  }

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  const std::vector<Poly>& components() const { return components_; }
  const Poly& operator[](std::size_t k) const { return components_[k]; }
  std::size_t size() const { return components_.size(); }

  /// H(p) for a point of the source space.
  std::vector<GaussianRational> operator()(std::span<const GaussianRational> point) const {
    std::vector<GaussianRational> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(point));
    return out;
  }

  /// Holomorphic Jacobian, rows indexed by components, columns by Z.
  std::vector<std::vector<Poly>> jacobian() const {
    std::vector<std::vector<Poly>> jac;
    for (const auto& c : components_) {
      auto& row = jac.emplace_back();
      for (std::size_t a = 0; a < source_->dim(); ++a) row.push_back(c.diff(a));
    }
    return jac;
  }

  /// G o H for a second map G defined on this map's target.
  HoloMap then(const HoloMap& g) const;

private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<Poly> components_;
};

/// Replaces each variable of `p` by the polynomial images[v] (all living in
/// `dest`). images must hold one entry per raw variable of p's space.
inline Poly substitute(const Poly& p, const std::vector<Poly>& images, const SpacePtr& dest) {
  if (images.size() != p.space()->num_vars()) throw DimensionMismatch("substitution needs an image per variable");
  std::vector<std::vector<Poly>> powers(images.size());
  Poly out(dest);
  for (const auto& [m, c] : p.terms()) {
    Poly t = Poly::constant(dest, c);
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
      const auto e = m.exps[v];
      if (e == 0) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Poly::constant(dest, GaussianRational(1)));
      while (pw.size() <= e) pw.push_back(pw.back() * images[v]);
      t *= pw[e];
    }
    out += t;
  }
  return out;
}

/// rho o H: target holomorphic variables become H_j(Z), target conjugates
/// become conj(H_j) written in zeta.
inline Poly compose(const Poly& rho_target, const HoloMap& h) {
  if (!same_space(rho_target.space(), h.target()))
    throw DimensionMismatch("defining function does not live in the map's target space");
  std::vector<Poly> images = h.components();
  for (const auto& c : h.components()) images.push_back(c.conj());
  return substitute(rho_target, images, h.source());
}

inline HoloMap HoloMap::then(const HoloMap& g) const {
  if (!same_space(target_, g.source())) throw DimensionMismatch("maps are not composable");
  std::vector<Poly> comps;
  for (const auto& c : g.components()) comps.push_back(compose(c, *this));
  return {source_, g.target(), std::move(comps)};
}

} // namespace crtrans
