#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "support.hpp"

using namespace crtrans;
using namespace testing_support;

namespace {

GaussianRational gr(long re, long im = 0) { return {Rational(re), Rational(im)}; }

/// Floating-point oracle: eigenvalue signs of the hermitian matrix.
Signature numeric_inertia(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {h(r, c).re().get_d(), h(r, c).im().get_d()};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Signature s;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double ev = es.eigenvalues()[k];
    if (std::abs(ev) < 1e-9 * scale) {
      ++s.e_zero;
    } else if (ev > 0) {
      ++s.e_plus;
    } else {
      ++s.e_minus;
    }
  }
  return s;
}

} // namespace

TEST(Inertia, SmallExamples) {
  EXPECT_EQ(inertia(HermitianMatrix({{gr(1), gr(0)}, {gr(0), gr(-1)}})), (Signature{1, 1, 0}));
  EXPECT_EQ(inertia(HermitianMatrix({{gr(0), gr(1)}, {gr(1), gr(0)}})), (Signature{1, 1, 0}));
  EXPECT_EQ(inertia(HermitianMatrix({{gr(0), gr(0, 1)}, {gr(0, -1), gr(0)}})), (Signature{1, 1, 0}));
  EXPECT_EQ(inertia(HermitianMatrix(ComplexMatrix(3, 3))), (Signature{0, 0, 3}));
  EXPECT_EQ(inertia(HermitianMatrix({{gr(0, 0), gr(0, 0), gr(0, -4)}, {gr(0), gr(2), gr(0)}, {gr(0, 4), gr(0), gr(0)}})),
            (Signature{2, 1, 0}));
}

TEST(Inertia, RejectsNonHermitian) {
  EXPECT_THROW(HermitianMatrix({{gr(0), gr(1)}, {gr(2), gr(0)}}), NotHermitian);
  EXPECT_THROW(HermitianMatrix({{gr(0, 1)}}), NotHermitian);
}

TEST(Signature, EIsSymmetricUnderNegation) {
  const Signature s{3, 1, 2};
  EXPECT_EQ(s.e(), 1u);
  EXPECT_EQ(s.negated().e(), 1u);
  EXPECT_EQ(s.unordered_pair(), s.negated().unordered_pair());
  EXPECT_EQ(s.dim(), 6u);
}

TEST(Inertia, AgreesWithNumericEigenvalues) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto h = trial % 2 ? random_hermitian(n, rng) : random_singular_hermitian(n, rng);
    ASSERT_EQ(inertia(h), numeric_inertia(h)) << "trial " << trial;
  }
}

TEST(Inertia, SylvesterLawUnderRandomCongruence) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto h = trial % 3 == 0 ? random_singular_hermitian(n, rng) : random_hermitian(n, rng);
    const auto p = random_invertible(n, rng);
    const HermitianMatrix g(p.adjoint() * h.matrix() * p);
    ASSERT_EQ(inertia(g), inertia(h)) << "trial " << trial;
    ASSERT_EQ(inertia(HermitianMatrix(-h.matrix())), inertia(h).negated());
  }
}

TEST(RankAtPoint, Examples) {
  EXPECT_EQ(rank_at_point(ComplexMatrix({{gr(1), gr(2)}, {gr(2), gr(4)}})), 1u);
  EXPECT_EQ(rank_at_point(ComplexMatrix({{gr(0, 1), gr(1)}, {gr(1), gr(0, -1)}})), 1u);
  EXPECT_EQ(rank_at_point(ComplexMatrix::identity(4)), 4u);
  EXPECT_EQ(rank_at_point(ComplexMatrix(2, 3)), 0u);
}

TEST(GenericRank, JacobianExamples) {
  auto s = VarSpace::make({"Z1", "Z2"});
  auto t = VarSpace::standard_target(2);
  const HoloMap h(s, t, {Poly::holo(s, 0), Poly::holo(s, 1), Poly(s)});
  EXPECT_EQ(generic_rank(PolyMatrix(h.jacobian())), 2u);

  auto s2 = VarSpace::standard(1);
  auto t2 = VarSpace::standard_target(1);
  const Poly w = Poly::holo(s2, 1);
  const HoloMap g(s2, t2, {w, w * w * GaussianRational::i()});
  EXPECT_EQ(generic_rank(PolyMatrix(g.jacobian())), 1u);
}

TEST(GenericRank, SymbolicEliminationOnDeficientMatrix) {
  auto s = VarSpace::standard(1);
  const Poly x = Poly::holo(s, 0);
  const Poly y = Poly::conj_var(s, 1);
  // second row is x times the first
  const PolyMatrix m({{x, y, x + y}, {x * x, x * y, x * x + x * y}});
  EXPECT_EQ(generic_rank(m), 1u);
  EXPECT_EQ(detail::bareiss_rank(m.data(), s), 1u);
  const PolyMatrix full({{x, y}, {y, x}});
  EXPECT_EQ(detail::bareiss_rank(full.data(), s), 2u);
}

TEST(GenericRank, BareissAgreesWithMaxOverEvaluations) {
  std::mt19937_64 rng(203);
  auto s = VarSpace::standard(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 3;
    const std::size_t cols = 1 + rng() % 3;
    // low rank by construction: product of rows x k and k x cols
    const std::size_t k = rng() % 3;
    std::vector<std::vector<Poly>> a(rows, std::vector<Poly>(k, Poly(s)));
    std::vector<std::vector<Poly>> b(k, std::vector<Poly>(cols, Poly(s)));
    for (auto& r : a)
      for (auto& p : r) p = random_poly(s, rng, 2, 1);
    for (auto& r : b)
      for (auto& p : r) p = random_poly(s, rng, 2, 1);
    std::vector<std::vector<Poly>> m(rows, std::vector<Poly>(cols, Poly(s)));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t l = 0; l < k; ++l) m[i][j] += a[i][l] * b[l][j];
    const PolyMatrix pm(m);
    std::size_t oracle = 0;
    for (int e = 0; e < 8; ++e) oracle = std::max(oracle, rank_at_point(pm.evaluate_full(random_values(s, rng))));
    ASSERT_EQ(detail::bareiss_rank(m, s), oracle);
    ASSERT_EQ(generic_rank(pm), oracle);
  }
}
