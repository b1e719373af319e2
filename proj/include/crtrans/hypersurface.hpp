#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/holo_map.hpp"
#include "crtrans/linalg.hpp"
#include "crtrans/poly.hpp"

namespace crtrans {

using Point = std::vector<GaussianRational>;

/// Real hypersurface {rho = 0} in C^N given by a real polynomial.
///
/// When rho equals (w - zeta_w)/(2i) - P(z, zeta_z) exactly, with w the last
/// coordinate and P free of w and zeta_w, the hypersurface is a rigid graph
/// Im w = P and `graph_part()` returns P.
class Hypersurface {
public:
  explicit Hypersurface(Poly rho) : rho_(std::move(rho)) {
    if (!rho_.space()) throw InvalidInput("defining function without a variable space");
    if (!rho_.is_real()) throw InvalidInput("defining function '" + rho_.str() + "' is not real");
    if (rho_.is_constant()) throw InvalidInput("defining function is constant");
    const auto& s = rho_.space();
    const std::size_t w = s->dim() - 1;
    Poly im_w = (Poly::holo(s, w) - Poly::conj_var(s, w)) * GaussianRational(Rational(0), Rational(-1, 2));
    Poly p = im_w - rho_;
    if (!p.depends_on(w) && !p.depends_on(s->conj_index(w))) graph_ = std::move(p);
  }

  const Poly& rho() const { return rho_; }
  const SpacePtr& space() const { return rho_.space(); }
  /// Ambient dimension N = n + 1.
  std::size_t ambient_dim() const { return rho_.space()->dim(); }
  /// CR dimension n.
  std::size_t n() const { return ambient_dim() - 1; }
  const std::optional<Poly>& graph_part() const { return graph_; }

  /// Holomorphic gradient (d rho / d Z_a) as polynomials.
  std::vector<Poly> gradient() const {
    std::vector<Poly> g;
    for (std::size_t a = 0; a < ambient_dim(); ++a) g.push_back(rho_.diff(a));
    return g;
  }

private:
  Poly rho_;
  std::optional<Poly> graph_;
};

/// A validated smooth point of a hypersurface.
struct SurfacePoint {
  Point coords;
};

inline Point gradient_at(const Hypersurface& m, const Point& p) {
  Point g;
  for (const auto& d : m.gradient()) g.push_back(d.evaluate(p));
  return g;
}

inline SurfacePoint verify_point(const Hypersurface& m, const Point& p) {
  if (p.size() != m.ambient_dim())
    throw DimensionMismatch("point has " + std::to_string(p.size()) + " coordinates, expected " +
                            std::to_string(m.ambient_dim()));
  const GaussianRational v = m.rho().evaluate(p);
  if (!v.is_zero()) throw NotOnSurface("rho(p) = " + v.str());
  const Point g = gradient_at(m, p);
  if (std::all_of(g.begin(), g.end(), [](const auto& x) { return x.is_zero(); }))
    throw SingularPoint("d rho vanishes at the point");
  return {p};
}

/// (z, re_w + i P(z, conj z)) on a rigid graph.
inline SurfacePoint lift_graph_point(const Hypersurface& m, const Point& z, const Rational& re_w) {
  if (!m.graph_part()) throw NoGraphForm("hypersurface is not of the form Im w = P(z, conj z)");
  if (z.size() != m.n()) throw DimensionMismatch("graph point needs n coordinates");
  Point p = z;
  p.emplace_back(re_w);
  const GaussianRational height = m.graph_part()->evaluate(p);
  p.back() = GaussianRational(re_w, height.re());
  return verify_point(m, p);
}

namespace detail {

inline std::size_t tangent_pivot(const Point& g) {
  for (std::size_t k = g.size(); k-- > 0;)
    if (!g[k].is_zero()) return k;
  throw SingularPoint("d rho vanishes at the point");
}

} // namespace detail

/// Basis of {v : sum rho_{Z_a}(p) v_a = 0}: t_j = e_j - (g_j/g_k) e_k for
/// j != k, k the largest index with g_k != 0.
inline std::vector<Point> tangent_basis(const Hypersurface& m, const SurfacePoint& p) {
  const Point g = gradient_at(m, p.coords);
  const std::size_t k = detail::tangent_pivot(g);
  std::vector<Point> basis;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j == k) continue;
    Point t(g.size());
    t[j] = GaussianRational(1);
    t[k] = -(g[j] / g[k]);
    basis.push_back(std::move(t));
  }
  return basis;
}

/// Levi form representative on the tangent basis:
/// L_jl = sum_ab t_j,a rho_{Z_a zeta_b}(p) conj(t_l,b).
inline HermitianMatrix levi_matrix(const Hypersurface& m, const SurfacePoint& p) {
  const std::size_t dim = m.ambient_dim();
  ComplexMatrix a(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const Poly dr = m.rho().diff(r);
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = dr.diff(m.space()->conj_index(c)).evaluate(p.coords);
  }
  const auto basis = tangent_basis(m, p);
  ComplexMatrix t(basis.size(), dim);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t c = 0; c < dim; ++c) t(j, c) = basis[j][c];
  return HermitianMatrix(t * a * t.adjoint());
}

struct LeviSignature {
  Signature inertia;
  std::size_t e() const { return inertia.e(); }
  std::size_t e0() const { return inertia.e0(); }
  std::pair<std::size_t, std::size_t> pair() const { return inertia.unordered_pair(); }
};

inline LeviSignature levi_signature(const Hypersurface& m, const SurfacePoint& p) {
  return {inertia(levi_matrix(m, p))};
}

/// rho(Z, conj p): the holomorphic equation of the Segre variety at p.
inline Poly segre_poly(const Hypersurface& m, const SurfacePoint& p) {
  const auto& s = m.space();
  std::vector<std::optional<GaussianRational>> values(s->num_vars());
  for (std::size_t a = 0; a < s->dim(); ++a) values[s->conj_index(a)] = p.coords[a].conj();
  return m.rho().partial_evaluate(values);
}

/// First-order differential operator sum_a c_a d/dv_a where v_a is Z_a, or
/// zeta_a for an antiholomorphic field.
struct VectorField {
  std::vector<Poly> coeffs;
  bool antiholomorphic = false;

  Poly apply(const Poly& f) const {
    Poly out(f.space());
    const auto& s = f.space();
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
      if (coeffs[a].is_zero()) continue;
      const std::size_t v = antiholomorphic ? s->conj_index(a) : a;
      Poly d = f.diff(v);
      if (!d.is_zero()) out += coeffs[a] * d;
    }
    return out;
  }

  VectorField conj() const {
    VectorField c{{}, !antiholomorphic};
    for (const auto& p : coeffs) c.coeffs.push_back(p.conj());
    return c;
  }
};

/// L_j = rho_{Z_k} d/dZ_j - rho_{Z_j} d/dZ_k for j != k.
struct CRFieldBasis {
  std::size_t pivot = 0;
  std::vector<VectorField> fields;

  /// The conjugate (0,1) fields.
  std::vector<VectorField> conjugates() const {
    std::vector<VectorField> out;
    for (const auto& f : fields) out.push_back(f.conj());
    return out;
  }
};

inline CRFieldBasis cr_field_basis(const Hypersurface& m, std::size_t pivot) {
  const auto grad = m.gradient();
  if (pivot >= grad.size()) throw DimensionMismatch("pivot index out of range");
  if (grad[pivot].is_zero()) throw DegenerateDefiningFunction("rho does not depend on the pivot variable");
  CRFieldBasis basis{pivot, {}};
  for (std::size_t j = 0; j < grad.size(); ++j) {
    if (j == pivot) continue;
    VectorField f{std::vector<Poly>(grad.size(), Poly(m.space())), false};
    f.coeffs[j] = grad[pivot];
    f.coeffs[pivot] = -grad[j];
    if (!f.apply(m.rho()).is_zero()) throw Error("internal: CR field is not tangent");
    basis.fields.push_back(std::move(f));
  }
  return basis;
}

/// Pivot: the highest index k with rho_{Z_k} not identically zero.
inline CRFieldBasis cr_field_basis(const Hypersurface& m) {
  const auto grad = m.gradient();
  for (std::size_t k = grad.size(); k-- > 0;)
    if (!grad[k].is_zero()) return cr_field_basis(m, k);
  throw DegenerateDefiningFunction("rho has no holomorphic derivative");
}

/// Pivot usable at p: the highest k with rho_{Z_k}(p) != 0.
inline CRFieldBasis cr_field_basis_at(const Hypersurface& m, const SurfacePoint& p) {
  const auto grad = m.gradient();
  for (std::size_t k = grad.size(); k-- > 0;)
    if (!grad[k].evaluate(p.coords).is_zero()) return cr_field_basis(m, k);
  throw AllPivotsVanish("every holomorphic derivative of rho vanishes at the point");
}

/// Rank at p of (L_j H_k(p)), the rank of H restricted to the Segre variety
/// of M at p.
inline std::size_t segre_map_rank(const Hypersurface& m, const HoloMap& h, const SurfacePoint& p) {
  if (!same_space(h.source(), m.space())) throw DimensionMismatch("map source differs from the hypersurface space");
  const auto basis = cr_field_basis_at(m, p);
  ComplexMatrix mat(basis.fields.size(), h.size());
  for (std::size_t j = 0; j < basis.fields.size(); ++j)
    for (std::size_t k = 0; k < h.size(); ++k) mat(j, k) = basis.fields[j].apply(h[k]).evaluate(p.coords);
  return rank_at_point(std::move(mat));
}

/// Order found by a finite-nondegeneracy search, or none up to the cap.
struct NondegResult {
  std::optional<unsigned> order;
  unsigned max_order = 0;
  bool detected() const { return order.has_value(); }
};

namespace detail {

/// Vectors L^alpha rho_Z grouped by |alpha|, alpha ordered as
/// L_1^{a_1} ... L_n^{a_n}. Each level is produced lazily by `next`.
class JetLevels {
public:
  JetLevels(const Hypersurface& m, std::vector<VectorField> fields) : fields_(std::move(fields)) {
    current_.push_back({m.gradient(), fields_.size()});
  }

  struct Entry {
    std::vector<Poly> vec;
    std::size_t max_field; // fields with index < max_field may still be applied
  };

  const std::vector<Entry>& current() const { return current_; }

  void next() {
    std::vector<Entry> out;
    for (const auto& e : current_)
      for (std::size_t i = 0; i < e.max_field; ++i) {
        Entry n{{}, i + 1};
        for (const auto& c : e.vec) n.vec.push_back(fields_[i].apply(c));
        out.push_back(std::move(n));
      }
    current_ = std::move(out);
  }

private:
  std::vector<VectorField> fields_;
  std::vector<Entry> current_;
};

} // namespace detail

/// Smallest k0 <= max_order with span{Lbar^alpha rho_Z(p) : |alpha| <= k0}
/// equal to C^N. The conjugate (0,1) fields are used; the (1,0) fields
/// annihilate every antiholomorphic dependence of rho_Z.
inline NondegResult finite_nondeg_order(const Hypersurface& m, const SurfacePoint& p, unsigned max_order) {
  const auto basis = cr_field_basis_at(m, p);
  detail::JetLevels levels(m, basis.conjugates());
  const std::size_t dim = m.ambient_dim();
  std::vector<Point> rows;
  for (unsigned order = 0; order <= max_order; ++order) {
    if (order > 0) levels.next();
    for (const auto& e : levels.current()) {
      Point r;
      for (const auto& c : e.vec) r.push_back(c.evaluate(p.coords));
      rows.push_back(std::move(r));
    }
    ComplexMatrix mat(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t c = 0; c < dim; ++c) mat(i, c) = rows[i][c];
    if (rank_at_point(std::move(mat)) == dim) return {order, max_order};
  }
  return {std::nullopt, max_order};
}

/// Generic version over the polynomial ring; success certifies holomorphic
/// nondegeneracy. Default cap is n + 1.
inline NondegResult generic_finite_nondeg(const Hypersurface& m, std::optional<unsigned> max_order = std::nullopt) {
  const unsigned cap = max_order.value_or(static_cast<unsigned>(m.n() + 1));
  const auto basis = cr_field_basis(m);
  detail::JetLevels levels(m, basis.conjugates());
  std::vector<std::vector<Poly>> rows;
  for (unsigned order = 0; order <= cap; ++order) {
    if (order > 0) levels.next();
    for (const auto& e : levels.current()) rows.push_back(e.vec);
    if (generic_rank(PolyMatrix(rows)) == m.ambient_dim()) return {order, cap};
  }
  return {std::nullopt, cap};
}

} // namespace crtrans
