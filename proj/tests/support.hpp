#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "crtrans/crtrans.hpp"
#include "crtrans/report.hpp"

namespace testing_support {

using namespace crtrans;

inline std::string fixture(const std::string& name) { return std::string(CRTRANS_FIXTURE_DIR) + "/" + name; }

inline GaussianRational small_gaussian(std::mt19937_64& rng, long bound = 5) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, 4);
  Rational re(num(rng), den(rng));
  Rational im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

/// Sparse random polynomial with up to `terms` terms of degree <= max_deg
/// in all raw variables (or only holomorphic ones).
inline Poly random_poly(const SpacePtr& s, std::mt19937_64& rng, std::size_t terms, unsigned max_deg,
                        bool holomorphic = false) {
  Poly p(s);
  const std::size_t vars = holomorphic ? s->dim() : s->num_vars();
  std::uniform_int_distribution<std::size_t> pick(0, vars - 1);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m{std::vector<std::uint32_t>(s->num_vars(), 0)};
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) m.exps[pick(rng)] += 1;
    p += Poly::monomial(s, m, small_gaussian(rng));
  }
  return p;
}

inline Point random_point(std::size_t dim, std::mt19937_64& rng) {
  Point p;
  for (std::size_t k = 0; k < dim; ++k) p.push_back(small_gaussian(rng));
  return p;
}

/// Values for all 2N raw variables, conjugates independent.
inline std::vector<GaussianRational> random_values(const SpacePtr& s, std::mt19937_64& rng) {
  return random_point(s->num_vars(), rng);
}

inline HermitianMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = GaussianRational(small_gaussian(rng).re());
    for (std::size_t c = r + 1; c < n; ++c) {
      m(r, c) = small_gaussian(rng);
      m(c, r) = m(r, c).conj();
    }
  }
  return HermitianMatrix(std::move(m));
}

/// Rank-deficient hermitian B^* D B with a few zero rows in B.
inline HermitianMatrix random_singular_hermitian(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix b(n, n);
  ComplexMatrix d(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    d(r, r) = GaussianRational(static_cast<long>(rng() % 3) - 1);
    for (std::size_t c = 0; c < n; ++c) b(r, c) = small_gaussian(rng, 2);
  }
  return HermitianMatrix(b.adjoint() * d * b);
}

/// Invertible by construction: unit lower triangular times a permutation.
inline ComplexMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix l = ComplexMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) l(r, c) = small_gaussian(rng, 3);
  ComplexMatrix u = ComplexMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) u(r, c) = small_gaussian(rng, 3);
  for (std::size_t r = 0; r < n; ++r) u(r, r) = small_gaussian(rng, 3) + GaussianRational(7);
  return l * u;
}

/// Expressions for the parser round trip.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c = {
      "0", "1", "i", "-i", "1/2", "-3/4", "2*i", "(1/2 - 1/3*i)", "z1", "w", "zeta_z1", "zeta_w", "conj(z1)",
      "conj(w)", "Re(w)", "Im(w)", "abs2(z1)", "abs2(z1 + w)", "Im(w) - abs2(z1)", "Im(w) - abs2(z1) + abs2(z2)",
      "z1^2", "z1^0", "(z1 + z2)^3", "-z1^2", "--z1", "+z1", "z1*z2*w", "z1 * (z2 - w)", "2*z1 - 3*z2 + 4*w",
      "i*w^2", "i/2*w", "z1/2", "w/(1+i)", "conj(i*z1^2)", "Re(z1^2 * conj(z2))", "Im(z1*conj(z2))",
      "abs2(z1)*(abs2(z1) + abs2(z2) - 1)", "Im(w) - (abs2(z1) + abs2(z2))", "abs2(z1)^2", "conj(conj(z1))",
      "Re(w) + Im(w)", "z1*zeta_z1 - z2*zeta_z2", "(w - zeta_w)/(2*i)", "z1 + z1^2 + i/2*w", "z1 - z1^2 - i/2*w",
      "-2*z1*w", "  z1   +   w  ", "((z1))", "(z1 - 1)^2 - (z1^2 - 2*z1 + 1)", "abs2(1 + i)", "3/6*z2",
      "Im(w) + abs2(z1) - abs2(z2) - 2*abs2(w)",
  };
  return c;
}

/// Names used by the corpus and the fixtures.
inline SpacePtr corpus_space() {
  return VarSpace::make({"z1", "z2", "w", "Z1", "Z2", "Z3", "z", "zp1", "zp2", "zp3", "zp4", "wp", "zp"});
}

/// Every expression appearing in the fixture files.
inline std::vector<std::string> fixture_expressions() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(CRTRANS_FIXTURE_DIR)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    const auto j = nlohmann::json::parse(in);
    out.push_back(j["source"]["rho"]);
    out.push_back(j["target"]["rho"]);
    for (const auto& m : j["map"]) out.push_back(m);
  }
  return out;
}

} // namespace testing_support
