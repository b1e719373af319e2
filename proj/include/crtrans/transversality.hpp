#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/holo_map.hpp"
#include "crtrans/hypersurface.hpp"
#include "crtrans/linalg.hpp"
#include "crtrans/poly.hpp"

namespace crtrans {

enum class MapsInto { Contained, OnSurfaceOnly, No };

inline std::string_view to_string(MapsInto m) {
  switch (m) {
  case MapsInto::Contained:
    return "contained";
  case MapsInto::OnSurfaceOnly:
    return "on_surface_only";
  case MapsInto::No:
    return "no";
  }
  return "?";
}

namespace detail {

inline void check_dims(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h) {
  if (!same_space(h.source(), m.space())) throw DimensionMismatch("map source is not the source hypersurface's space");
  if (!same_space(h.target(), mp.space())) throw DimensionMismatch("map target is not the target hypersurface's space");
}

} // namespace detail

/// Contained when rho' o H vanishes identically, OnSurfaceOnly when rho
/// divides it, No otherwise. rho is assumed to generate the ideal of M.
inline MapsInto maps_into(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h) {
  detail::check_dims(m, mp, h);
  const Poly u = compose(mp.rho(), h);
  if (u.is_zero()) return MapsInto::Contained;
  return exact_divide(u, m.rho()) ? MapsInto::OnSurfaceOnly : MapsInto::No;
}

/// rho' o H = a rho^k with rho not dividing a, or containment.
struct FactorResult {
  bool contained = false;
  unsigned k = 0;
  Poly a;

  bool contained_in_target() const { return contained; }
};

inline FactorResult factorize(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h) {
  detail::check_dims(m, mp, h);
  const Poly u = compose(mp.rho(), h);
  if (u.is_zero()) return {true, 0, Poly(m.space())};
  auto split = extract_power(u, m.rho());
  if (split.k == 0) throw NotMappedIn("rho does not divide rho' o H; H does not send M into M'");
  if (!split.cofactor.is_real()) throw Error("internal: cofactor is not real");
  return {false, split.k, std::move(split.cofactor)};
}

struct TransversalityVerdict {
  Point point;
  bool transversal = false;
  bool method_a = false; // k = 1 and a(p) != 0
  bool method_b = false; // d(rho' o H)(p) != 0
  bool agree = false;
};

/// Both routes: the factorization (k = 1 and a(p) != 0) and the differential
/// of u = rho' o H at p, whose nonvanishing is transversality because u
/// vanishes on the codimension-one M.
inline TransversalityVerdict transversal_at(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h,
                                            const FactorResult& f, const SurfacePoint& p) {
  detail::check_dims(m, mp, h);
  const Point image = h(p.coords);
  if (!mp.rho().evaluate(image).is_zero()) throw NotMappedIn("H(p) is not on M'");
  const Point gimg = gradient_at(mp, image);
  if (std::all_of(gimg.begin(), gimg.end(), [](const auto& x) { return x.is_zero(); }))
    throw ImageSingular("d rho' vanishes at H(p)");

  TransversalityVerdict v;
  v.point = p.coords;
  v.method_a = !f.contained && f.k == 1 && !f.a.evaluate(p.coords).is_zero();
  const Poly u = compose(mp.rho(), h);
  for (std::size_t a = 0; a < m.ambient_dim() && !v.method_b; ++a)
    v.method_b = !u.diff(a).evaluate(p.coords).is_zero();
  v.transversal = v.method_a;
  v.agree = v.method_a == v.method_b;
  return v;
}

inline TransversalityVerdict transversal_at(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h,
                                            const SurfacePoint& p) {
  return transversal_at(m, mp, h, factorize(m, mp, h), p);
}

/// Non-transversal set: all of M when k >= 2, else the zero set of a on M.
struct NontransversalLocus {
  unsigned k = 0;
  Poly a;
  bool everywhere() const { return k >= 2; }
};

inline NontransversalLocus nontransversal_locus(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h) {
  auto f = factorize(m, mp, h);
  if (f.contained) throw ContainedInTarget("rho' o H vanishes identically");
  return {f.k, std::move(f.a)};
}

/// Matches rho' against c [ (w - zeta_w)/(2i) - sum h_ab z_a zeta_b ] for a
/// real c != 0 and returns the inertia of (h_ab).
inline std::optional<Signature> is_hyperquadric(const Hypersurface& mp) {
  const auto& s = mp.space();
  const std::size_t w = s->dim() - 1;
  const Poly& rho = mp.rho();
  Monomial mw = rho.one_monomial();
  mw.exps[w] = 1;
  Monomial mzw = rho.one_monomial();
  mzw.exps[s->conj_index(w)] = 1;
  const GaussianRational cw = rho.coeff(mw);
  const GaussianRational scale = cw * GaussianRational(Rational(0), Rational(2));
  if (scale.is_zero() || !scale.is_real()) return std::nullopt;
  if (!(rho.coeff(mzw) == -cw)) return std::nullopt;

  const std::size_t n = w;
  ComplexMatrix h(n, n);
  for (const auto& [mono, c] : rho.terms()) {
    if (mono == mw || mono == mzw) continue;
    if (mono.degree() != 2) return std::nullopt;
    std::optional<std::size_t> a;
    std::optional<std::size_t> b;
    for (std::size_t j = 0; j < n; ++j) {
      if (mono.exps[j] == 1) a = j;
      if (mono.exps[s->conj_index(j)] == 1) b = j;
    }
    if (!a || !b) return std::nullopt;
    h(*a, *b) = -(c / scale);
  }
  return inertia(HermitianMatrix(std::move(h)));
}

/// One pointwise condition with the values it was decided from.
struct ConditionCheck {
  std::string name;
  std::string point;
  std::vector<std::pair<std::string, long>> values;
  bool holds = false;
};

/// Outcome of a theorem's hypothesis check at supplied or sampled points.
struct HypothesisReport {
  std::string theorem;
  std::vector<ConditionCheck> checks;
  std::vector<std::pair<std::string, std::string>> facts;
  bool consistent = true;
  std::vector<std::string> notes;

  bool all_hold(std::string_view name) const {
    bool seen = false;
    for (const auto& c : checks) {
      if (c.name != name) continue;
      seen = true;
      if (!c.holds) return false;
    }
    return seen;
  }
  bool any_hold(std::string_view name) const {
    return std::any_of(checks.begin(), checks.end(), [&](const auto& c) { return c.name == name && c.holds; });
  }
  std::optional<std::string> fact(std::string_view key) const {
    for (const auto& [k, v] : facts)
      if (k == key) return v;
    return std::nullopt;
  }
};

inline std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t j = 0; j < p.size(); ++j) s += (j ? ", " : "") + p[j].str();
  return s + ")";
}

namespace detail {

inline std::string dichotomy(const FactorResult& f) {
  if (f.contained) return "contained";
  return f.k == 1 ? "transversal_generically" : "neither";
}

inline std::string nondeg_str(const NondegResult& r) {
  return r.order ? "order " + std::to_string(*r.order) : "not detected up to " + std::to_string(r.max_order);
}

} // namespace detail

inline constexpr std::string_view kEigenSumBound = "eigen_sum_bound";   // e' + e0' <= n - 1
inline constexpr std::string_view kCodimBound = "codim_bound";          // n' + e0' <= 2n
inline constexpr std::string_view kQuadricDimBound = "quadric_dim_bound"; // n' <= 3 (n - e0)
inline constexpr std::string_view kSignatureGap = "signature_gap";      // e' + e0' < sup e(M, .)

/// Eigenvalue conditions on M' at each supplied target point, the
/// nondegeneracy certificate of M, and the dichotomy read off the
/// factorization. A "neither" verdict while the hypotheses hold at every
/// sampled point is flagged inconsistent.
inline HypothesisReport check_dichotomy_conditions(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h,
                                                   const std::vector<SurfacePoint>& target_points,
                                                   std::optional<unsigned> max_order = std::nullopt) {
  HypothesisReport rep;
  rep.theorem = "dichotomy_eigenvalue_conditions";
  const long n = static_cast<long>(m.n());
  const long np = static_cast<long>(mp.n());
  for (const auto& q : target_points) {
    const auto sig = levi_signature(mp, q);
    const long e = static_cast<long>(sig.e());
    const long e0 = static_cast<long>(sig.e0());
    rep.checks.push_back({std::string(kEigenSumBound), point_str(q.coords), {{"e", e}, {"e0", e0}, {"n", n}},
                          e + e0 <= n - 1});
    rep.checks.push_back({std::string(kCodimBound), point_str(q.coords), {{"n_prime", np}, {"e0", e0}, {"n", n}},
                          np + e0 <= 2 * n});
  }
  const auto nd = generic_finite_nondeg(m, max_order);
  rep.facts.emplace_back("source_nondegeneracy", detail::nondeg_str(nd));
  const bool conds = rep.all_hold(kEigenSumBound) || rep.all_hold(kCodimBound);
  rep.facts.emplace_back("conditions_hold_at_sampled_points", conds ? "true" : "false");

  const auto mi = maps_into(m, mp, h);
  rep.facts.emplace_back("maps_into", std::string(to_string(mi)));
  if (mi == MapsInto::No) {
    rep.notes.push_back("H does not send M into M'");
    return rep;
  }
  const auto f = factorize(m, mp, h);
  rep.facts.emplace_back("k", std::to_string(f.k));
  rep.facts.emplace_back("dichotomy", detail::dichotomy(f));
  if (nd.detected() && conds && !f.contained && f.k >= 2) {
    rep.consistent = false;
    rep.notes.push_back("hypotheses hold at all sampled points yet neither alternative holds");
  }
  return rep;
}

/// Hyperquadric recognition of M' and the dimension condition
/// n' <= 3 (n - e0(M, p)) at each supplied source point.
inline HypothesisReport check_hyperquadric_target(const Hypersurface& m, const Hypersurface& mp,
                                                  const std::vector<SurfacePoint>& source_points) {
  HypothesisReport rep;
  rep.theorem = "dichotomy_hyperquadric_target";
  const auto hq = is_hyperquadric(mp);
  rep.facts.emplace_back("target_hyperquadric", hq ? "true" : "false");
  rep.facts.emplace_back("target_nondegenerate_hyperquadric", hq && hq->e0() == 0 ? "true" : "false");
  const long n = static_cast<long>(m.n());
  const long np = static_cast<long>(mp.n());
  for (const auto& p : source_points) {
    const long e0 = static_cast<long>(levi_signature(m, p).e0());
    rep.checks.push_back({std::string(kQuadricDimBound), point_str(p.coords), {{"n_prime", np}, {"n", n}, {"e0", e0}},
                          np <= 3 * (n - e0)});
  }
  rep.facts.emplace_back("exists_point", rep.any_hold(kQuadricDimBound) ? "true" : "false");
  return rep;
}

/// e(M',p') + e0(M',p') < max over sampled q of e(M,q). The maximum is only a
/// lower bound for the supremum over M.
inline HypothesisReport check_signature_gap(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h,
                                            const std::vector<SurfacePoint>& source_points,
                                            const std::vector<SurfacePoint>& target_points,
                                            std::optional<unsigned> max_order = std::nullopt) {
  HypothesisReport rep;
  rep.theorem = "extension_signature_gap";
  long sup_e = 0;
  for (const auto& q : source_points) sup_e = std::max(sup_e, static_cast<long>(levi_signature(m, q).e()));
  rep.facts.emplace_back("sampled_sup_e_source", std::to_string(sup_e));
  rep.notes.push_back("sup of e(M, .) is a lower bound taken over sampled points");
  for (const auto& q : target_points) {
    const auto sig = levi_signature(mp, q);
    const long e = static_cast<long>(sig.e());
    const long e0 = static_cast<long>(sig.e0());
    rep.checks.push_back({std::string(kSignatureGap), point_str(q.coords),
                          {{"e", e}, {"e0", e0}, {"sup_e", sup_e}}, e + e0 < sup_e});
  }
  const auto mi = maps_into(m, mp, h);
  rep.facts.emplace_back("maps_into", std::string(to_string(mi)));
  const auto nd = generic_finite_nondeg(m, max_order);
  rep.facts.emplace_back("source_nondegeneracy", detail::nondeg_str(nd));
  if (rep.all_hold(kSignatureGap) && nd.detected() && mi == MapsInto::OnSurfaceOnly) {
    rep.consistent = false;
    rep.notes.push_back("gap condition holds at all sampled points but H(C^N) is not contained in M'");
  }
  return rep;
}

/// The three conditions of the equidimensional equivalence:
/// (i) rho' o H == 0, (iv) rho'(H(Z), conj H(p)) == 0, (v) rank H <= n.
struct EquivalenceSuite {
  bool cond_i = false;
  bool cond_iv = false;
  bool cond_v = false;
  std::size_t generic_rank = 0;
  bool equidimensional = false;
  bool source_nondegenerate = false;
  /// False only when the equivalence applies and the three disagree.
  bool consistent = true;
};

/// rho'(H(Z), conj q') as a holomorphic polynomial on the source space.
inline Poly segre_pullback(const Hypersurface& mp, const HoloMap& h, const Point& target_point) {
  const auto& s = mp.space();
  std::vector<std::optional<GaussianRational>> values(s->num_vars());
  for (std::size_t a = 0; a < s->dim(); ++a) values[s->conj_index(a)] = target_point[a].conj();
  return compose(mp.rho().partial_evaluate(values), h);
}

inline EquivalenceSuite equivalence_suite(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h,
                                          const SurfacePoint& p, std::optional<unsigned> max_order = std::nullopt) {
  const auto mi = maps_into(m, mp, h);
  if (mi == MapsInto::No) throw NotMappedIn("H does not send M into M'");
  EquivalenceSuite s;
  s.cond_i = mi == MapsInto::Contained;
  s.cond_iv = segre_pullback(mp, h, h(p.coords)).is_zero();
  s.generic_rank = generic_rank(PolyMatrix(h.jacobian()));
  s.cond_v = s.generic_rank <= m.n();
  s.equidimensional = m.n() == mp.n();
  s.source_nondegenerate = generic_finite_nondeg(m, max_order).detected();
  if (s.source_nondegenerate) {
    // rank <= n forces containment without any dimension restriction
    if (s.cond_v && !s.cond_i) s.consistent = false;
    if (s.equidimensional && !(s.cond_i == s.cond_iv && s.cond_i == s.cond_v)) s.consistent = false;
  }
  return s;
}

/// H(M) inside M' and inside the Segre variety of M' at q'.
inline bool in_segre_intersection(const Hypersurface& m, const Hypersurface& mp, const HoloMap& h,
                                  const Point& target_point) {
  if (maps_into(m, mp, h) == MapsInto::No) return false;
  return segre_pullback(mp, h, target_point).is_zero();
}

/// Containment in a user-supplied subvariety X = {g = 0 for g in gens} whose
/// dimension bound is a user assertion.
struct SubvarietyReport {
  bool contained_in_x = false;
  bool maps_into_target = false;
  bool source_nondegenerate = false;
  std::size_t asserted_dim_x = 0;
  bool applicable = false;
  bool predicts_cond_i = false;
  bool cond_i = false;
  bool consistent = true;
};

inline SubvarietyReport check_subvariety_containment(const Hypersurface& m, const std::vector<Poly>& x_generators,
                                                     std::size_t asserted_dim_x, const Hypersurface& mp,
                                                     const HoloMap& h,
                                                     std::optional<unsigned> max_order = std::nullopt) {
  SubvarietyReport r;
  r.asserted_dim_x = asserted_dim_x;
  r.contained_in_x = std::all_of(x_generators.begin(), x_generators.end(), [&](const Poly& g) {
    if (!g.is_holomorphic()) throw InvalidInput("subvariety generator '" + g.str() + "' is not holomorphic");
    return compose(g, h).is_zero();
  });
  const auto mi = maps_into(m, mp, h);
  r.maps_into_target = mi != MapsInto::No;
  r.cond_i = mi == MapsInto::Contained;
  r.source_nondegenerate = generic_finite_nondeg(m, max_order).detected();
  r.applicable = r.contained_in_x && r.maps_into_target && r.source_nondegenerate && asserted_dim_x <= m.n();
  r.predicts_cond_i = r.applicable;
  r.consistent = !r.applicable || r.cond_i;
  return r;
}

} // namespace crtrans
