#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/gaussian_rational.hpp"

namespace crtrans {

/// Coordinate system of one complex space C^N. Holomorphic variables have
/// indices 0..N-1, their independent conjugates zeta_* have N..2N-1.
/// The last holomorphic variable plays the role of w in (z, w).
class VarSpace {
public:
  explicit VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InvalidInput("a variable space needs at least one variable");
    for (std::size_t a = 0; a < names_.size(); ++a)
      for (std::size_t b = a + 1; b < names_.size(); ++b)
        if (names_[a] == names_[b]) throw InvalidInput("duplicate variable name '" + names_[a] + "'");
  }

  /// Source convention z1..zn, w.
  static std::shared_ptr<const VarSpace> standard(std::size_t n, const std::string& z = "z",
                                                  const std::string& w = "w") {
    std::vector<std::string> names;
    for (std::size_t j = 1; j <= n; ++j) names.push_back(z + std::to_string(j));
    names.push_back(w);
    return std::make_shared<const VarSpace>(std::move(names));
  }
  static std::shared_ptr<const VarSpace> standard_target(std::size_t n_prime) {
    return standard(n_prime, "zp", "wp");
  }
  static std::shared_ptr<const VarSpace> make(std::vector<std::string> names) {
    return std::make_shared<const VarSpace>(std::move(names));
  }

  /// Ambient complex dimension N = n + 1.
  std::size_t dim() const { return names_.size(); }
  std::size_t num_vars() const { return 2 * names_.size(); }
  std::size_t conj_index(std::size_t holo) const { return holo + dim(); }
  bool is_conj(std::size_t v) const { return v >= dim(); }

  const std::vector<std::string>& names() const { return names_; }

  std::string name(std::size_t v) const {
    if (v < dim()) return names_[v];
    if (v < num_vars()) return "zeta_" + names_[v - dim()];
    throw UnknownVariable("variable index " + std::to_string(v));
  }

  std::optional<std::size_t> find(const std::string& s) const {
    for (std::size_t v = 0; v < num_vars(); ++v)
      if (name(v) == s) return v;
    return std::nullopt;
  }

  friend bool operator==(const VarSpace& a, const VarSpace& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Exponent vector over (Z, zeta).
struct Monomial {
  std::vector<std::uint32_t> exps;

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto e : exps) d += e;
    return d;
  }
  bool is_one() const {
    return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
  }
  bool divides(const Monomial& o) const {
    for (std::size_t k = 0; k < exps.size(); ++k)
      if (exps[k] > o.exps[k]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m{a.exps};
    for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] += b.exps[k];
    return m;
  }
  /// Quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m{a.exps};
    for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] -= b.exps[k];
    return m;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order: total degree first, then lexicographic with
/// variable 0 most significant.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end());
  }
};

/// Sparse polynomial over Q(i) in the holomorphic variables and their
/// independent conjugates. Zero coefficients are never stored.
class Poly {
public:
  using TermMap = std::map<Monomial, GaussianRational, GrlexLess>;

  Poly() = default;
  explicit Poly(SpacePtr space) : space_(std::move(space)) {}

  static Poly constant(SpacePtr space, const GaussianRational& c) {
    Poly p(std::move(space));
    if (!c.is_zero()) p.terms_.emplace(p.one_monomial(), c);
    return p;
  }
  /// The variable with raw index v (holomorphic or conjugate).
  static Poly var(SpacePtr space, std::size_t v) {
    if (v >= space->num_vars()) throw UnknownVariable("variable index " + std::to_string(v));
    Poly p(std::move(space));
    Monomial m = p.one_monomial();
    m.exps[v] = 1;
    p.terms_.emplace(std::move(m), GaussianRational(1));
    return p;
  }
  static Poly holo(SpacePtr space, std::size_t j) { return var(std::move(space), j); }
  static Poly conj_var(SpacePtr space, std::size_t j) {
    const std::size_t v = space->conj_index(j);
    return var(std::move(space), v);
  }
  static Poly monomial(SpacePtr space, Monomial m, const GaussianRational& c) {
    Poly p(std::move(space));
    if (m.exps.size() != p.space_->num_vars()) throw DimensionMismatch("monomial length");
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const SpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  GaussianRational constant_term() const {
    if (terms_.empty()) return {};
    const auto& [m, c] = *terms_.begin();
    return m.is_one() ? c : GaussianRational{};
  }
  GaussianRational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational{} : it->second;
  }

  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  const std::pair<const Monomial, GaussianRational>& leading_term() const { return *terms_.rbegin(); }

  /// True when no conjugate variable occurs.
  bool is_holomorphic() const {
    const std::size_t n = space_->dim();
    for (const auto& [m, c] : terms_)
      for (std::size_t k = n; k < 2 * n; ++k)
        if (m.exps[k] != 0) return false;
    return true;
  }

  bool depends_on(std::size_t v) const {
    for (const auto& [m, c] : terms_)
      if (m.exps[v] != 0) return true;
    return false;
  }

  Monomial one_monomial() const { return Monomial{std::vector<std::uint32_t>(space_->num_vars(), 0)}; }

  // -- ring operations ----------------------------------------------------

  Poly operator-() const {
    Poly r(space_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const GaussianRational& s) { return a *= s; }
  friend Poly operator*(const GaussianRational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r = a.space_ ? Poly(a.space_) : Poly(b.space_);
    if (a.space_ && b.space_ && !same_space(a.space_, b.space_))
      throw VarSpaceMismatch("cannot multiply polynomials from different spaces");
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Poly pow(unsigned k) const {
    Poly result = constant(space_, GaussianRational(1));
    Poly base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (!same_space(a.space_, b.space_)) return false;
    return a.terms_ == b.terms_;
  }

  // -- structure ------------------------------------------------------------

  /// The involution: swaps Z_j with zeta_j and conjugates every coefficient.
  Poly conj() const {
    Poly r(space_);
    const std::size_t n = space_ ? space_->dim() : 0;
    for (const auto& [m, c] : terms_) {
      Monomial s{std::vector<std::uint32_t>(m.exps.size())};
      for (std::size_t j = 0; j < n; ++j) {
        s.exps[j] = m.exps[j + n];
        s.exps[j + n] = m.exps[j];
      }
      r.terms_.emplace(std::move(s), c.conj());
    }
    return r;
  }

  bool is_real() const { return conj() == *this; }

  /// Formal partial derivative in the variable with raw index v.
  Poly diff(std::size_t v) const {
    if (!space_ || v >= space_->num_vars()) throw UnknownVariable("variable index " + std::to_string(v));
    Poly r(space_);
    for (const auto& [m, c] : terms_) {
      if (m.exps[v] == 0) continue;
      Monomial d = m;
      d.exps[v] -= 1;
      r.add_term(d, c * GaussianRational(static_cast<long>(m.exps[v])));
    }
    return r;
  }

  /// Evaluates with independent values for every variable (length 2N).
  GaussianRational evaluate_full(std::span<const GaussianRational> values) const {
    if (!space_) return {};
    if (values.size() != space_->num_vars()) throw DimensionMismatch("evaluation needs a value for every variable");
    std::vector<std::vector<GaussianRational>> powers(values.size());
    GaussianRational total;
    for (const auto& [m, c] : terms_) {
      GaussianRational t = c;
      for (std::size_t v = 0; v < m.exps.size(); ++v) {
        const auto e = m.exps[v];
        if (e == 0) continue;
        auto& pw = powers[v];
        if (pw.empty()) pw.push_back(GaussianRational(1));
        while (pw.size() <= e) pw.push_back(pw.back() * values[v]);
        t *= pw[e];
      }
      total += t;
    }
    return total;
  }

  /// Evaluates at a point of C^N with zeta set to the conjugate point.
  GaussianRational evaluate(std::span<const GaussianRational> point) const {
    if (!space_) return {};
    if (point.size() != space_->dim()) throw DimensionMismatch("point has wrong length");
    std::vector<GaussianRational> values(point.begin(), point.end());
    for (const auto& z : point) values.push_back(z.conj());
    return evaluate_full(values);
  }

  /// Substitutes constants for the variables that carry a value in `values`
  /// (indexed by raw variable); the rest stay symbolic.
  Poly partial_evaluate(const std::vector<std::optional<GaussianRational>>& values) const {
    Poly r(space_);
    for (const auto& [m, c] : terms_) {
      Monomial kept = m;
      GaussianRational t = c;
      for (std::size_t v = 0; v < m.exps.size(); ++v) {
        if (!values[v] || m.exps[v] == 0) continue;
        GaussianRational p(1);
        for (std::uint32_t e = 0; e < m.exps[v]; ++e) p *= *values[v];
        t *= p;
        kept.exps[v] = 0;
      }
      r.add_term(kept, t);
    }
    return r;
  }

  /// Canonical text: terms in decreasing graded-lex order, re-parseable by
  /// the expression front end.
  std::string str() const;

private:
  void adopt(const Poly& o) {
    if (!space_) {
      space_ = o.space_;
    } else if (o.space_ && !same_space(space_, o.space_)) {
      throw VarSpaceMismatch("polynomials live in different variable spaces");
    }
  }

  void add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SpacePtr space_;
  TermMap terms_;

  friend std::optional<Poly> exact_divide(const Poly&, const Poly&);
};

inline std::string monomial_str(const VarSpace& space, const Monomial& m) {
  std::string s;
  for (std::size_t v = 0; v < m.exps.size(); ++v) {
    if (m.exps[v] == 0) continue;
    if (!s.empty()) s += '*';
    s += space.name(v);
    if (m.exps[v] > 1) s += '^' + std::to_string(m.exps[v]);
  }
  return s;
}

inline std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const std::string mono = monomial_str(*space_, m);
    int sgn_ = 1;
    std::string piece;
    if (c.is_real()) {
      Rational a = abs(c.re());
      sgn_ = sign(c.re());
      piece = (a == 1 && !mono.empty()) ? mono : a.get_str() + (mono.empty() ? "" : "*" + mono);
    } else if (sign(c.re()) == 0) {
      Rational b = abs(c.im());
      sgn_ = sign(c.im());
      piece = (b == 1 ? std::string("i") : b.get_str() + "*i") + (mono.empty() ? "" : "*" + mono);
    } else {
      piece = "(" + c.str() + ")" + (mono.empty() ? "" : "*" + mono);
    }
    if (first) {
      out += (sgn_ < 0 ? "-" : "") + piece;
    } else {
      out += (sgn_ < 0 ? " - " : " + ") + piece;
    }
    first = false;
  }
  return out;
}

/// Exact quotient p / d, or nullopt when d does not divide p. Division runs
/// on graded-lex leading terms and the quotient is re-multiplied as a check.
inline std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw ZeroDivisor("exact_divide by the zero polynomial");
  if (p.space_ && !same_space(p.space_, d.space_)) throw VarSpaceMismatch("exact_divide across spaces");
  Poly q(d.space_);
  if (p.is_zero()) return q;
  if (p.total_degree() < d.total_degree()) return std::nullopt;

  Poly r = p;
  const auto& [lm, lc] = d.leading_term();
  while (!r.terms_.empty()) {
    const auto& [rm, rc] = *r.terms_.rbegin();
    if (!lm.divides(rm)) return std::nullopt;
    Monomial shift = rm / lm;
    GaussianRational factor = rc / lc;
    for (const auto& [dm, dc] : d.terms_) r.add_term(dm * shift, -(factor * dc));
    q.terms_.emplace(std::move(shift), std::move(factor));
  }
  if (!(q * d == p)) throw Error("internal: exact_divide verification failed");
  return q;
}

/// Maximal k with d^k | p and the cofactor p / d^k.
struct PowerSplit {
  unsigned k = 0;
  Poly cofactor;
};

inline PowerSplit extract_power(const Poly& p, const Poly& d) {
  if (p.is_zero() || d.is_zero()) throw ZeroInput("extract_power needs nonzero inputs");
  if (d.is_constant()) throw ZeroInput("extract_power needs a non-constant divisor");
  PowerSplit out{0, p};
  while (auto q = exact_divide(out.cofactor, d)) {
    out.cofactor = std::move(*q);
    ++out.k;
  }
  return out;
}

} // namespace crtrans
