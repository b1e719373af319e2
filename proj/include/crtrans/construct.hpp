#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/holo_map.hpp"
#include "crtrans/hypersurface.hpp"
#include "crtrans/linalg.hpp"
#include "crtrans/poly.hpp"

// Degree-two embedding of a nondegenerate hyperquadric in C^{n+1} into a
// Levi nondegenerate hypersurface of C^{2n+2} with rho' o H = -4 rho^2.
//
// The hermitian form on C^{2n+1} is taken with Gram matrix equal to the
// block matrix Delta on the standard basis, so the basis vectors
// v_1..v_{n+1}, u_1..u_n are e_1..e_{2n+1} and everything stays in Q(i).

namespace crtrans {

struct CounterexampleSpec {
  std::size_t n = 1;
  std::vector<int> deltas; // each +1 or -1

  void validate() const {
    if (n == 0) throw InvalidInput("n must be positive");
    if (deltas.size() != n) throw InvalidInput("expected " + std::to_string(n) + " signs");
    for (int d : deltas)
      if (d != 1 && d != -1) throw InvalidInput("signs must be +1 or -1");
  }
};

/// Index of v_j (j = 1..n+1) and u_j (j = 1..n) in the basis of C^{2n+1}.
inline std::size_t v_index(std::size_t j) { return j - 1; }
inline std::size_t u_index(std::size_t n, std::size_t j) { return n + j; }

/// [[0, 0, D], [0, 2, 0], [conj D, 0, 0]] with D = diag(-4 i delta_j).
inline HermitianMatrix build_delta_matrix(const CounterexampleSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  ComplexMatrix m(2 * n + 1, 2 * n + 1);
  for (std::size_t j = 1; j <= n; ++j) {
    const GaussianRational d(Rational(0), Rational(-4 * spec.deltas[j - 1]));
    m(v_index(j), u_index(n, j)) = d;
    m(u_index(n, j), v_index(j)) = d.conj();
  }
  m(v_index(n + 1), v_index(n + 1)) = GaussianRational(2);
  return HermitianMatrix(std::move(m));
}

struct CounterexampleMap {
  SpacePtr source;
  SpacePtr target;
  HoloMap map;
  Poly rho;
};

/// rho = Im w - sum delta_j |z_j|^2 and H = (z_1..z_n, w, z_1 w..z_n w, 2i w^2).
inline CounterexampleMap build_map(const CounterexampleSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  auto src = VarSpace::standard(n);
  auto tgt = VarSpace::standard_target(2 * n + 1);
  const Poly w = Poly::holo(src, n);
  std::vector<Poly> comps;
  for (std::size_t j = 0; j < n; ++j) comps.push_back(Poly::holo(src, j));
  comps.push_back(w);
  for (std::size_t j = 0; j < n; ++j) comps.push_back(Poly::holo(src, j) * w);
  comps.push_back(w * w * GaussianRational(Rational(0), Rational(2)));

  Poly rho = (w - Poly::conj_var(src, n)) * GaussianRational(Rational(0), Rational(-1, 2));
  for (std::size_t j = 0; j < n; ++j)
    rho -= Poly::holo(src, j) * Poly::conj_var(src, j) * GaussianRational(spec.deltas[j]);
  return {src, tgt, HoloMap(src, tgt, std::move(comps)), std::move(rho)};
}

/// Quartic multilinear form on C^{2n+1}, stored one entry per orbit of the
/// slot swaps (X1 <-> X2) and (Y1 <-> Y2). The key is
/// (min X, max X, min Y, max Y) over basis indices.
class TensorTable {
public:
  using Key = std::array<std::size_t, 4>;

  explicit TensorTable(std::size_t dim) : dim_(dim) {}

  static Key canonical(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) {
    return {std::min(x1, x2), std::max(x1, x2), std::min(y1, y2), std::max(y1, y2)};
  }

  void set(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2, const GaussianRational& v) {
    const Key k = canonical(x1, y1, x2, y2);
    if (v.is_zero()) {
      entries_.erase(k);
    } else {
      entries_[k] = v;
    }
  }

  /// T(e_x1, conj e_y1, e_x2, conj e_y2); zero unless stored.
  GaussianRational operator()(std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) const {
    auto it = entries_.find(canonical(x1, y1, x2, y2));
    return it == entries_.end() ? GaussianRational{} : it->second;
  }

  std::size_t dim() const { return dim_; }
  const std::map<Key, GaussianRational>& entries() const { return entries_; }

  /// conj T(X1, Y1, X2, Y2) = T(conj Y2, conj X2, conj Y1, conj X1) on the
  /// (real) standard basis.
  bool is_conjugate_symmetric() const {
    for (const auto& [k, v] : entries_)
      if (!((*this)(k[3], k[1], k[2], k[0]) == v.conj())) return false;
    return true;
  }

  /// phi(z', zeta') = T(z', zeta', z', zeta') expanded over the orbits.
  Poly expand(const SpacePtr& space) const {
    Poly phi(space);
    for (const auto& [k, v] : entries_) {
      const long mult = (k[0] != k[1] ? 2 : 1) * (k[2] != k[3] ? 2 : 1);
      Monomial m = phi.one_monomial();
      m.exps[k[0]] += 1;
      m.exps[k[1]] += 1;
      m.exps[space->conj_index(k[2])] += 1;
      m.exps[space->conj_index(k[3])] += 1;
      phi += Poly::monomial(space, std::move(m), v * GaussianRational(mult));
    }
    return phi;
  }

private:
  std::size_t dim_;
  std::map<Key, GaussianRational> entries_;
};

/// T(v_j, conj v_j, v_k, conj v_k) = T(v_j, conj v_k, v_k, conj v_j) equals
/// 2 delta_j delta_k for j != k and 4 for j = k; all other basis entries vanish.
inline TensorTable build_tensor(const CounterexampleSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  TensorTable t(2 * n + 1);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = j; k <= n; ++k) {
      const long value = j == k ? 4 : 2L * spec.deltas[j - 1] * spec.deltas[k - 1];
      t.set(v_index(j), v_index(j), v_index(k), v_index(k), GaussianRational(value));
    }
  return t;
}

/// <z', zeta'> = sum_ab G_ab z'_a zeta'_b on the first dim coordinates.
inline Poly hermitian_form_poly(const HermitianMatrix& gram, const SpacePtr& space) {
  Poly out(space);
  for (std::size_t a = 0; a < gram.dim(); ++a)
    for (std::size_t b = 0; b < gram.dim(); ++b) {
      if (gram(a, b).is_zero()) continue;
      out += Poly::holo(space, a) * Poly::conj_var(space, b) * gram(a, b);
    }
  return out;
}

struct ConstructionChecks {
  bool quadratic_identity = false; // <f, conj f> = 2 w tau + 4i sum ... w - 4i sum ... tau
  bool tensor_identity = false;    // T(f, conj f, f, conj f) = 4 sum delta_j delta_k z_j z_k chi_j chi_k
  bool combined_identity = false;  // g - conj g - 2i<f,f> - 2i phi = 2i (w - tau - 2i sum delta z chi)^2
  bool final_identity = false;     // rho' o H + 4 rho^2 = 0
  bool gram_inertia = false;       // Delta has inertia (n+1, n, 0)
  bool tensor_symmetric = false;

  bool all() const {
    return quadratic_identity && tensor_identity && combined_identity && final_identity && gram_inertia &&
           tensor_symmetric;
  }
  /// Name of the first failed check, empty when all pass.
  std::string first_failure() const {
    if (!gram_inertia) return "gram_inertia";
    if (!tensor_symmetric) return "tensor_symmetry";
    if (!quadratic_identity) return "quadratic_identity";
    if (!tensor_identity) return "tensor_identity";
    if (!combined_identity) return "combined_identity";
    if (!final_identity) return "final_identity";
    return {};
  }
};

struct CounterexampleOutput {
  CounterexampleSpec spec;
  Poly rho;
  HermitianMatrix gram;
  HoloMap map;
  TensorTable tensor;
  Poly phi;
  Poly rho_target;
  ConstructionChecks checks;
};

/// Re-runs every identity of a construction from its parts.
inline ConstructionChecks verify_construction(const CounterexampleSpec& spec, const Poly& rho,
                                              const HermitianMatrix& gram, const HoloMap& h,
                                              const TensorTable& tensor, const Poly& rho_target) {
  const std::size_t n = spec.n;
  const auto& src = h.source();
  const auto& tgt = h.target();
  const Poly w = Poly::holo(src, n);
  const Poly tau = Poly::conj_var(src, n);

  Poly levi_sum(src); // sum delta_j z_j chi_j
  for (std::size_t j = 0; j < n; ++j)
    levi_sum += Poly::holo(src, j) * Poly::conj_var(src, j) * GaussianRational(spec.deltas[j]);

  ConstructionChecks c;
  c.gram_inertia = inertia(gram) == Signature{n + 1, n, 0};
  c.tensor_symmetric = tensor.is_conjugate_symmetric();

  const Poly form = hermitian_form_poly(gram, tgt);
  const Poly quad_rhs = GaussianRational(2) * w * tau + GaussianRational(Rational(0), Rational(4)) * levi_sum * w -
                        GaussianRational(Rational(0), Rational(4)) * levi_sum * tau;
  c.quadratic_identity = compose(form, h) == quad_rhs;

  const Poly phi = tensor.expand(tgt);
  c.tensor_identity = compose(phi, h) == GaussianRational(4) * levi_sum * levi_sum;

  const std::size_t wp = tgt->dim() - 1;
  const Poly lhs_target = Poly::holo(tgt, wp) - Poly::conj_var(tgt, wp) - GaussianRational(Rational(0), Rational(2)) * form -
                          GaussianRational(Rational(0), Rational(2)) * phi;
  const Poly base = w - tau - GaussianRational(Rational(0), Rational(2)) * levi_sum;
  const Poly two_i = Poly::constant(src, GaussianRational(Rational(0), Rational(2)));
  const Poly expanded = two_i * (w * w + tau * tau - GaussianRational(2) * w * tau -
                                 GaussianRational(Rational(0), Rational(4)) * levi_sum * w +
                                 GaussianRational(Rational(0), Rational(4)) * levi_sum * tau -
                                 GaussianRational(4) * levi_sum * levi_sum);
  const Poly lhs = compose(lhs_target, h);
  c.combined_identity = lhs == two_i * base * base && lhs == expanded;

  c.final_identity = (compose(rho_target, h) + GaussianRational(4) * rho * rho).is_zero();
  return c;
}

/// Builds all parts and checks every identity exactly.
inline CounterexampleOutput assemble_and_verify(const CounterexampleSpec& spec) {
  spec.validate();
  auto gram = build_delta_matrix(spec);
  auto built = build_map(spec);
  auto tensor = build_tensor(spec);
  const auto& tgt = built.target;
  Poly phi = tensor.expand(tgt);
  const std::size_t wp = tgt->dim() - 1;
  Poly rho_target = (Poly::holo(tgt, wp) - Poly::conj_var(tgt, wp)) * GaussianRational(Rational(0), Rational(-1, 2)) -
                    hermitian_form_poly(gram, tgt) - phi;
  auto checks = verify_construction(spec, built.rho, gram, built.map, tensor, rho_target);
  if (!checks.all()) throw IdentityFailure(checks.first_failure());
  return {spec,  std::move(built.rho), std::move(gram), std::move(built.map), std::move(tensor), std::move(phi),
          std::move(rho_target), checks};
}

} // namespace crtrans
