#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "support.hpp"

using namespace crtrans;
using namespace testing_support;

namespace {

GaussianRational gr(long re, long im = 0) { return {Rational(re), Rational(im)}; }

} // namespace

TEST(Parser, HyperquadricExample) {
  auto s = VarSpace::make({"z", "w"});
  const Poly rho = parse_poly("Im(w) - abs2(z)", s);
  const Poly expected = (Poly::holo(s, 1) - Poly::conj_var(s, 1)) * GaussianRational(Rational(0), Rational(-1, 2)) -
                        Poly::holo(s, 0) * Poly::conj_var(s, 0);
  EXPECT_EQ(rho, expected);
}

TEST(Parser, SphereExample) {
  auto s = VarSpace::make({"Z1", "Z2", "Z3"});
  const Poly rho = parse_poly("abs2(Z1)+abs2(Z2)+abs2(Z3)-1", s);
  Poly expected = Poly::constant(s, gr(-1));
  for (std::size_t a = 0; a < 3; ++a) expected += Poly::holo(s, a) * Poly::conj_var(s, a);
  EXPECT_EQ(rho, expected);
}

TEST(Parser, Precedence) {
  auto s = VarSpace::standard(2);
  const Poly z1 = Poly::holo(s, 0), z2 = Poly::holo(s, 1);
  EXPECT_EQ(parse_poly("z1 + z2*z1^2", s), z1 + z2 * z1 * z1);
  EXPECT_EQ(parse_poly("-z1^2", s), -(z1 * z1));
  EXPECT_EQ(parse_poly("z1 - z2 - z1", s), -z2);
  EXPECT_EQ(parse_poly("2/4", s), Poly::constant(s, GaussianRational(Rational(1, 2))));
}

TEST(Parser, SyntaxErrorOffset) {
  try {
    parse_expression("z1^2 +");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
  EXPECT_THROW(parse_expression("(z1"), SyntaxError);
  EXPECT_THROW(parse_expression("z1 z2"), SyntaxError);
  EXPECT_THROW(parse_expression("conj z1"), SyntaxError);
  EXPECT_THROW(parse_expression("z1 # 2"), SyntaxError);
  EXPECT_THROW(parse_expression(""), SyntaxError);
}

TEST(Parser, ExponentErrors) {
  EXPECT_THROW(parse_expression("z1^1/2"), NonIntegerExponent);
  EXPECT_THROW(parse_expression("z1^w"), NonIntegerExponent);
  EXPECT_THROW(parse_expression("z1^-1"), NonIntegerExponent);
}

TEST(Parser, UnknownVariableAndBadDivisor) {
  auto s = VarSpace::standard(1);
  EXPECT_THROW(parse_poly("z7 + 1", s), UnknownVariable);
  EXPECT_THROW(parse_poly("zeta_q", s), UnknownVariable);
  EXPECT_THROW(parse_poly("w/z1", s), InvalidInput);
  EXPECT_THROW(parse_poly("w/0", s), ZeroDivisor);
}

TEST(Parser, ConjugationLowersToZetaVariables) {
  auto s = VarSpace::standard(1);
  EXPECT_EQ(parse_poly("conj(i*z1^2)", s), parse_poly("-i*zeta_z1^2", s));
  EXPECT_EQ(parse_poly("Re(w)", s), parse_poly("(w + zeta_w)/2", s));
  EXPECT_TRUE(parse_poly("Im(w*z1^3) + abs2(z1 - i)", s).is_real());
}

TEST(Parser, ConstantsForPointCoordinates) {
  EXPECT_EQ(parse_constant("1/2-3*i"), GaussianRational(Rational(1, 2), Rational(-3)));
  EXPECT_EQ(parse_constant("  4/5*i "), GaussianRational(Rational(0), Rational(4, 5)));
  EXPECT_THROW(parse_constant("z"), Error);
}

TEST(Parser, RoundTripOverCorpusAndFixtures) {
  auto s = corpus_space();
  auto exprs = corpus();
  for (auto& e : fixture_expressions()) exprs.push_back(e);
  ASSERT_GE(exprs.size(), 50u);
  for (const auto& text : exprs) {
    const Expr ast = parse_expression(text);
    const Poly p = lower(ast, s);
    // pretty-printed AST and canonical polynomial both parse back
    ASSERT_EQ(parse_poly(to_string(ast), s), p) << text;
    ASSERT_EQ(parse_poly(p.str(), s), p) << text << " -> " << p.str();
  }
}

TEST(Parser, RandomPolynomialsPrintAndReparse) {
  std::mt19937_64 rng(501);
  auto s = VarSpace::standard(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Poly p = random_poly(s, rng, 5, 4);
    ASSERT_EQ(parse_poly(p.str(), s), p) << p.str();
  }
}

TEST(ProblemFile, LoadsEveryFixture) {
  for (const auto& entry : std::filesystem::directory_iterator(CRTRANS_FIXTURE_DIR)) {
    const auto pb = load_problem(entry.path().string());
    EXPECT_FALSE(pb.points.empty()) << entry.path();
    EXPECT_TRUE(pb.expect.has_value()) << entry.path();
  }
}

TEST(ProblemFile, InputErrors) {
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), InvalidInput);
  auto base = nlohmann::json::parse(R"js({"source": {"n": 1, "rho": "Im(w) - abs2(z1)"},
                                        "target": {"n": 1, "rho": "Im(wp) - abs2(zp1)"},
                                        "map": ["z1", "w"]})js");
  EXPECT_NO_THROW(parse_problem(base));
  auto bad = base;
  bad["map"] = {"z1"};
  EXPECT_THROW(parse_problem(bad), InvalidInput);
  bad = base;
  bad["source"]["rho"] = "Im(w) - abs2(z1";
  EXPECT_THROW(parse_problem(bad), InvalidInput);
  bad = base;
  bad["points"] = {{"0", "i"}};
  EXPECT_THROW(parse_problem(bad), InvalidInput);
  bad = base;
  bad["schema"] = "other/2";
  EXPECT_THROW(parse_problem(bad), InvalidInput);
  bad = base;
  bad["map"] = {"zeta_z1", "w"};
  EXPECT_THROW(parse_problem(bad), InvalidInput);
}

TEST(Reports, ByteStableForAFixedSeed) {
  const auto pb = load_problem(fixture("quadric_flip.json"));
  RunSettings rs{99, 10, std::nullopt};
  EXPECT_EQ(run_analyze(pb, rs).dump(), run_analyze(pb, rs).dump());
  EXPECT_EQ(render_text(run_check(pb, rs)), render_text(run_check(pb, rs)));
  const auto j = run_analyze(pb, rs);
  EXPECT_EQ(j["seed"], 99);
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["factorization"]["a"], "-2*z - 2*zeta_z");
}
