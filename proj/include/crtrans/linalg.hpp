#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crtrans/error.hpp"
#include "crtrans/gaussian_rational.hpp"
#include "crtrans/poly.hpp"

namespace crtrans {

/// Dense row-major matrix over Q(i).
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<GaussianRational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = GaussianRational(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
    return t;
  }

  ComplexMatrix operator-() const {
    ComplexMatrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes");
    ComplexMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  bool is_hermitian() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r; c < cols_; ++c)
        if (!((*this)(r, c) == (*this)(c, r).conj())) return false;
    return true;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// Square matrix equal to its conjugate transpose.
class HermitianMatrix {
public:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_hermitian()) throw NotHermitian("matrix is not equal to its conjugate transpose");
  }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
  ComplexMatrix m_;
};

/// Inertia (e+, e-, e0) of a hermitian matrix.
struct Signature {
  std::size_t e_plus = 0;
  std::size_t e_minus = 0;
  std::size_t e_zero = 0;

  std::size_t dim() const { return e_plus + e_minus + e_zero; }
  /// min(e-, e+): invariant under a sign change of the form.
  std::size_t e() const { return std::min(e_plus, e_minus); }
  std::size_t e0() const { return e_zero; }
  std::pair<std::size_t, std::size_t> unordered_pair() const {
    return {std::min(e_plus, e_minus), std::max(e_plus, e_minus)};
  }
  Signature negated() const { return {e_minus, e_plus, e_zero}; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia by congruence diagonalization. When every remaining diagonal
/// entry vanishes but an off-diagonal entry a_kl does not, row/column k is
/// replaced by k + conj(a_kl) * l, which makes the new pivot 2|a_kl|^2.
inline Signature inertia(const HermitianMatrix& h) {
  ComplexMatrix a = h.matrix();
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  Signature sig;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t k = 0; k < n && piv == n; ++k)
      if (!done[k] && !a(k, k).is_zero()) piv = k;

    if (piv == n) {
      std::size_t k = n;
      std::size_t l = n;
      for (std::size_t r = 0; r < n && k == n; ++r) {
        if (done[r]) continue;
        for (std::size_t c = 0; c < n; ++c)
          if (!done[c] && c != r && !a(r, c).is_zero()) {
            k = r;
            l = c;
            break;
          }
      }
      if (k == n) {
        for (std::size_t r = 0; r < n; ++r)
          if (!done[r]) ++sig.e_zero;
        return sig;
      }
      const GaussianRational c = a(k, l).conj();
      for (std::size_t r = 0; r < n; ++r) a(r, k) += c * a(r, l);
      const GaussianRational cb = c.conj();
      for (std::size_t col = 0; col < n; ++col) a(k, col) += cb * a(l, col);
      piv = k;
    }

    const GaussianRational p = a(piv, piv);
    if (sign(p.re()) > 0) {
      ++sig.e_plus;
    } else {
      ++sig.e_minus;
    }
    done[piv] = true;
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || a(r, piv).is_zero()) continue;
      const GaussianRational f = a(r, piv) / p;
      for (std::size_t c = 0; c < n; ++c) {
        if (done[c]) continue;
        a(r, c) -= f * a(piv, c);
      }
    }
  }
  return sig;
}

/// Exact rank by Gaussian elimination over Q(i).
inline std::size_t rank_at_point(ComplexMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(rank, c));
    const GaussianRational p = m(rank, col);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      const GaussianRational f = m(r, col) / p;
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

/// Rectangular grid of polynomials sharing one variable space.
class PolyMatrix {
public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::vector<std::vector<Poly>> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != cols()) throw DimensionMismatch("ragged polynomial matrix");
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const Poly& operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const std::vector<std::vector<Poly>>& data() const { return rows_; }

  SpacePtr space() const {
    for (const auto& r : rows_)
      for (const auto& p : r)
        if (p.space()) return p.space();
    return nullptr;
  }

  /// Evaluates every entry with independent values for all raw variables.
  ComplexMatrix evaluate_full(std::span<const GaussianRational> values) const {
    ComplexMatrix m(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols(); ++c) m(r, c) = rows_[r][c].evaluate_full(values);
    return m;
  }

  /// Evaluates at a point of C^N (zeta = conjugate point).
  ComplexMatrix evaluate(std::span<const GaussianRational> point) const {
    ComplexMatrix m(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols(); ++c) m(r, c) = rows_[r][c].evaluate(point);
    return m;
  }

private:
  std::vector<std::vector<Poly>> rows_;
};

namespace detail {

/// Fraction-free (Bareiss) elimination over the polynomial ring; every
/// division is exact by Sylvester's determinant identity.
inline std::size_t bareiss_rank(std::vector<std::vector<Poly>> m, const SpacePtr& space) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  Poly prev = Poly::constant(space, GaussianRational(1));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t best = rows;
    // sparsest nonzero pivot limits expression swell
    for (std::size_t r = rank; r < rows; ++r)
      if (!m[r][col].is_zero() && (best == rows || m[r][col].size() < m[best][col].size())) best = r;
    if (best == rows) continue;
    std::swap(m[best], m[rank]);
    const Poly& p = m[rank][col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        Poly num = p * m[r][c] - m[r][col] * m[rank][c];
        auto q = exact_divide(num, prev);
        if (!q) throw Error("internal: fraction-free elimination produced an inexact division");
        m[r][c] = std::move(*q);
      }
      m[r][col] = Poly(space);
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

} // namespace detail

/// Rank over the fraction field of the polynomial ring. A random rational
/// evaluation gives a lower bound; when it is not already maximal the
/// symbolic fraction-free elimination decides.
inline std::size_t generic_rank(const PolyMatrix& m, std::uint64_t seed = 0x5eed) {
  const std::size_t full = std::min(m.rows(), m.cols());
  if (full == 0) return 0;
  SpacePtr space = m.space();
  if (!space) return 0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  std::vector<GaussianRational> values;
  for (std::size_t v = 0; v < space->num_vars(); ++v)
    values.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  if (rank_at_point(m.evaluate_full(values)) == full) return full;

  std::vector<std::vector<Poly>> data = m.data();
  for (auto& row : data)
    for (auto& p : row)
      if (!p.space()) p = Poly(space);
  return detail::bareiss_rank(std::move(data), space);
}

} // namespace crtrans
