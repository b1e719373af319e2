#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/hypersurface.hpp"

namespace crtrans {

/// Seeded source of small random rationals.
class RationalSampler {
public:
  explicit RationalSampler(std::uint64_t seed, long num_bound = 9, long den_bound = 7)
      : rng_(seed), num_(-num_bound, num_bound), den_(1, den_bound) {}

  Rational rational() {
    Rational q(num_(rng_), den_(rng_));
    q.canonicalize();
    return q;
  }
  GaussianRational gaussian() { return {rational(), rational()}; }
  Rational nonzero_rational() {
    for (;;) {
      Rational q = rational();
      if (sgn(q) != 0) return q;
    }
  }
  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<long> num_;
  std::uniform_int_distribution<long> den_;
};

/// c (sum Z_a zeta_a - 1) for a real c != 0.
inline bool is_unit_sphere(const Hypersurface& m) {
  const auto& rho = m.rho();
  const auto& s = m.space();
  const GaussianRational c = -rho.constant_term();
  if (c.is_zero() || !c.is_real()) return false;
  if (rho.size() != s->dim() + 1) return false;
  for (std::size_t a = 0; a < s->dim(); ++a) {
    Monomial mono = rho.one_monomial();
    mono.exps[a] = 1;
    mono.exps[s->conj_index(a)] = 1;
    if (!(rho.coeff(mono) == c)) return false;
  }
  return true;
}

/// Rational point of the unit sphere in C^N by inverse stereographic
/// projection of t in Q^{2N-1}.
inline Point sphere_point(std::size_t ambient, RationalSampler& rs) {
  const std::size_t real_dim = 2 * ambient;
  std::vector<Rational> t(real_dim - 1);
  Rational s = 0;
  for (auto& x : t) {
    x = rs.rational();
    s += x * x;
  }
  std::vector<Rational> x(real_dim);
  for (std::size_t k = 0; k + 1 < real_dim; ++k) x[k] = 2 * t[k] / (s + 1);
  x[real_dim - 1] = (s - 1) / (s + 1);
  Point p;
  for (std::size_t a = 0; a < ambient; ++a) p.emplace_back(x[2 * a], x[2 * a + 1]);
  return p;
}

/// `count` seeded points of M: graph lift for Im w = P, stereographic for
/// the unit sphere. Singular points are skipped. Empty for other shapes.
inline std::vector<SurfacePoint> sample_points(const Hypersurface& m, std::size_t count, std::uint64_t seed) {
  std::vector<SurfacePoint> out;
  const bool graph = m.graph_part().has_value();
  const bool sphere = !graph && is_unit_sphere(m);
  if (!graph && !sphere) return out;
  RationalSampler rs(seed);
  for (std::size_t tries = 0; out.size() < count && tries < 20 * count + 20; ++tries) {
    try {
      if (graph) {
        Point z;
        for (std::size_t j = 0; j < m.n(); ++j) z.push_back(rs.gaussian());
        out.push_back(lift_graph_point(m, z, rs.rational()));
      } else {
        out.push_back(verify_point(m, sphere_point(m.ambient_dim(), rs)));
      }
    } catch (const SingularPoint&) {
    }
  }
  return out;
}

} // namespace crtrans
