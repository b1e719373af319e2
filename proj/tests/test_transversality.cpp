#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace crtrans;
using namespace testing_support;

namespace {

GaussianRational gr(long re, long im = 0) { return {Rational(re), Rational(im)}; }

Problem load(const std::string& name) { return load_problem(fixture(name)); }

std::vector<SurfacePoint> target_origin(const Problem& pb) {
  return {verify_point(pb.target, Point(pb.target.ambient_dim()))};
}

} // namespace

TEST(Factorize, Fixtures) {
  struct Case {
    const char* file;
    unsigned k;
    const char* a;
  };
  for (const Case c : {Case{"flat_square.json", 2, "-2"}, Case{"sphere_quadric4.json", 1, "-Z2*zeta_Z2"},
                       Case{"quadric_flip.json", 1, "-2*z - 2*zeta_z"}, Case{"quadric_square.json", 2, "-2"},
                       Case{"sphere_cubic.json", 1, "-Z1*zeta_Z1"}, Case{"sphere_quadric3.json", 1, "-Z2*zeta_Z2"}}) {
    const auto pb = load(c.file);
    const auto f = factorize(pb.source, pb.target, pb.map);
    EXPECT_FALSE(f.contained) << c.file;
    EXPECT_EQ(f.k, c.k) << c.file;
    EXPECT_EQ(f.a.str(), c.a) << c.file;
    // independent check: rho' o H - a rho^k vanishes at random complexified values
    std::mt19937_64 rng(401);
    const Poly u = compose(pb.target.rho(), pb.map);
    for (int t = 0; t < 20; ++t) {
      const auto v = random_values(pb.source.space(), rng);
      ASSERT_EQ(u.evaluate_full(v), f.a.evaluate_full(v) * pb.source.rho().pow(c.k).evaluate_full(v)) << c.file;
    }
  }
}

TEST(MapsInto, Classification) {
  const auto pb = load("sphere_cubic.json");
  EXPECT_EQ(maps_into(pb.source, pb.target, pb.map), MapsInto::OnSurfaceOnly);

  auto s = VarSpace::standard(1);
  const Hypersurface flat((Poly::holo(s, 1) - Poly::conj_var(s, 1)) * GaussianRational(Rational(0), Rational(-1, 2)));
  EXPECT_EQ(maps_into(flat, flat, HoloMap::identity(s)), MapsInto::OnSurfaceOnly);
  const HoloMap into_real_line(s, s, {Poly::holo(s, 0), Poly(s)});
  EXPECT_EQ(maps_into(flat, flat, into_real_line), MapsInto::Contained);
  EXPECT_THROW(nontransversal_locus(flat, flat, into_real_line), ContainedInTarget);

  const HoloMap shift(s, s, {Poly::holo(s, 0), Poly::holo(s, 1) + Poly::constant(s, GaussianRational::i())});
  EXPECT_EQ(maps_into(flat, flat, shift), MapsInto::No);
  EXPECT_THROW(factorize(flat, flat, shift), NotMappedIn);
}

TEST(Transversality, QuadricFlipOnImaginaryAxis) {
  const auto pb = load("quadric_flip.json");
  const auto f = factorize(pb.source, pb.target, pb.map);
  const auto on = lift_graph_point(pb.source, {gr(1)}, Rational(2));
  const auto v = transversal_at(pb.source, pb.target, pb.map, f, on);
  EXPECT_TRUE(v.transversal);
  EXPECT_TRUE(v.agree);
  const auto off = lift_graph_point(pb.source, {gr(0, 1)}, Rational(2));
  const auto u = transversal_at(pb.source, pb.target, pb.map, f, off);
  EXPECT_FALSE(u.transversal);
  EXPECT_TRUE(u.agree);
}

TEST(Transversality, SphereQuadric4NotTransversalWhereZ2Vanishes) {
  const auto pb = load("sphere_quadric4.json");
  const auto p = verify_point(pb.source, {gr(0), gr(0), gr(1)});
  const auto v = transversal_at(pb.source, pb.target, pb.map, p);
  EXPECT_FALSE(v.method_a);
  EXPECT_FALSE(v.method_b);
  const auto q = verify_point(pb.source, {gr(0), gr(1), gr(0)});
  EXPECT_TRUE(transversal_at(pb.source, pb.target, pb.map, q).transversal);
}

TEST(Transversality, MethodsAgreeAtSampledPoints) {
  for (const char* file : {"flat_square.json", "sphere_quadric4.json", "quadric_flip.json", "quadric_square.json", "sphere_cubic.json", "sphere_quadric3.json"}) {
    const auto pb = load(file);
    const auto f = factorize(pb.source, pb.target, pb.map);
    for (const auto& p : sample_points(pb.source, 30, 17)) {
      try {
        ASSERT_TRUE(transversal_at(pb.source, pb.target, pb.map, f, p).agree) << file << " " << point_str(p.coords);
      } catch (const ImageSingular&) {
      }
    }
  }
}

TEST(NontransversalLocus, Examples) {
  const auto pb5 = load("quadric_square.json");
  EXPECT_TRUE(nontransversal_locus(pb5.source, pb5.target, pb5.map).everywhere());
  const auto pb = load("sphere_quadric4.json");
  const auto l = nontransversal_locus(pb.source, pb.target, pb.map);
  EXPECT_FALSE(l.everywhere());
  EXPECT_EQ(l.a.str(), "-Z2*zeta_Z2");
}

TEST(Hyperquadric, Recognition) {
  const auto sig = is_hyperquadric(load("quadric_flip.json").target);
  ASSERT_TRUE(sig.has_value());
  EXPECT_EQ(sig->unordered_pair(), std::make_pair(std::size_t{1}, std::size_t{1}));
  EXPECT_EQ(sig->e0(), 0u);
  EXPECT_FALSE(is_hyperquadric(load("sphere_cubic.json").target).has_value());
  EXPECT_FALSE(is_hyperquadric(load("sphere_quadric4.json").source).has_value());
}

TEST(Hypotheses, SphereQuadric4EigenSumHolds) {
  const auto pb = load("sphere_quadric4.json");
  const auto rep = check_dichotomy_conditions(pb.source, pb.target, pb.map, target_origin(pb));
  ASSERT_EQ(rep.checks.size(), 2u);
  EXPECT_TRUE(rep.all_hold(kEigenSumBound));
  EXPECT_EQ(rep.checks[0].values, (std::vector<std::pair<std::string, long>>{{"e", 1}, {"e0", 0}, {"n", 2}}));
  EXPECT_EQ(rep.fact("dichotomy"), std::optional<std::string>("transversal_generically"));
  EXPECT_TRUE(rep.consistent);
}

TEST(Hypotheses, QuadricFlipCodimHoldsEigenSumFails) {
  const auto pb = load("quadric_flip.json");
  const auto rep = check_dichotomy_conditions(pb.source, pb.target, pb.map, target_origin(pb));
  EXPECT_TRUE(rep.all_hold(kCodimBound));
  EXPECT_FALSE(rep.any_hold(kEigenSumBound));
  const auto q = check_hyperquadric_target(pb.source, pb.target, pb.points);
  EXPECT_TRUE(q.all_hold(kQuadricDimBound));
}

TEST(Hypotheses, QuadricSquareDimensionFails) {
  const auto pb = load("quadric_square.json");
  const auto q = check_hyperquadric_target(pb.source, pb.target, pb.points);
  EXPECT_FALSE(q.any_hold(kQuadricDimBound));
  EXPECT_EQ(q.fact("target_nondegenerate_hyperquadric"), std::optional<std::string>("true"));
  EXPECT_EQ(q.checks.front().values,
            (std::vector<std::pair<std::string, long>>{{"n_prime", 4}, {"n", 1}, {"e0", 0}}));
  const auto d = check_dichotomy_conditions(pb.source, pb.target, pb.map, target_origin(pb));
  EXPECT_EQ(d.fact("dichotomy"), std::optional<std::string>("neither"));
  EXPECT_TRUE(d.consistent);
}

TEST(Hypotheses, SphereQuadric4SignatureGapFails) {
  const auto pb = load("sphere_quadric4.json");
  const auto rep = check_signature_gap(pb.source, pb.target, pb.map, pb.points, target_origin(pb));
  EXPECT_FALSE(rep.any_hold(kSignatureGap));
  EXPECT_EQ(rep.fact("sampled_sup_e_source"), std::optional<std::string>("0"));
}

TEST(Equivalence, SphereCubic) {
  const auto pb = load("sphere_cubic.json");
  const auto s = equivalence_suite(pb.source, pb.target, pb.map, verify_point(pb.source, {gr(0), gr(1)}));
  EXPECT_TRUE(s.cond_iv);
  EXPECT_FALSE(s.cond_i);
  EXPECT_FALSE(s.cond_v);
  EXPECT_EQ(s.generic_rank, 2u);
  EXPECT_TRUE(s.consistent);
}

TEST(Equivalence, FlatSquareRawValues) {
  const auto pb = load("flat_square.json");
  const auto s = equivalence_suite(pb.source, pb.target, pb.map, pb.points.front());
  EXPECT_FALSE(s.cond_i);
  EXPECT_TRUE(s.cond_v);
  EXPECT_EQ(s.generic_rank, 1u);
  EXPECT_FALSE(s.source_nondegenerate);
  EXPECT_TRUE(s.consistent);
}

TEST(SegreIntersection, Examples) {
  for (const char* file : {"sphere_cubic.json", "sphere_quadric3.json"}) {
    const auto pb = load(file);
    EXPECT_TRUE(in_segre_intersection(pb.source, pb.target, pb.map, Point(pb.target.ambient_dim()))) << file;
  }
  const auto pb = load("quadric_flip.json");
  EXPECT_FALSE(in_segre_intersection(pb.source, pb.target, pb.map, Point(3)));
}

TEST(Subvariety, SphereCubicContainmentButTooLarge) {
  const auto pb = load("sphere_cubic.json");
  const auto& t = pb.target.space();
  const auto r = check_subvariety_containment(pb.source, {Poly::holo(t, 2)}, 2, pb.target, pb.map);
  EXPECT_TRUE(r.contained_in_x);
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.cond_i);
  EXPECT_TRUE(r.consistent);
}

TEST(Subvariety, SmallSubvarietyForcesContainment) {
  // constant map to the origin, X = {0}
  const auto pb = load("quadric_flip.json");
  const auto& s = pb.source.space();
  const HoloMap zero(s, s, {Poly(s), Poly(s)});
  const Hypersurface m = pb.source;
  const auto r = check_subvariety_containment(m, {Poly::holo(s, 0), Poly::holo(s, 1)}, 0, m, zero);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.cond_i);
  EXPECT_TRUE(r.consistent);
}
