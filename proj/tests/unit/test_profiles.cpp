#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "conehull/arrangement.hpp"
#include "conehull/profiles.hpp"
#include "conehull/stats.hpp"
#include "test_util.hpp"

using namespace conehull;
using testutil::vec;

TEST(TangentFrame, SouthPoleIsIdentity) {
  const TangentFrame f(UnitVector::from_unit(vec({0, 0, -1})));
  EXPECT_TRUE(f.rotation().isApprox(Mat::Identity(3, 3)));
  EXPECT_TRUE(f.basis().isApprox(Mat::Identity(3, 3).leftCols(2)));
}

TEST(TangentFrame, OrthonormalDeterministicExact) {
  RngStream rng(51, 0);
  for (int d : {1, 2, 3}) {
    const Vec south = -north_pole(d);
    for (int i = 0; i < 200; ++i) {
      const UnitVector v = sample_uniform_sphere(d, rng);
      const TangentFrame f(v), g(v);
      EXPECT_EQ(f.basis(), g.basis());
      const Mat gram = f.basis().transpose() * f.basis();
      EXPECT_LT((gram - Mat::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((f.basis().transpose() * v.coords()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((f.rotation() * v.coords() - south).norm(), 1e-12);
      EXPECT_LT(f.to_tangent(v.coords()).norm(), 1e-15);
      // Isometry on tangent points.
      const Vec a = f.from_tangent(Vec::Random(d)), b = f.from_tangent(Vec::Random(d));
      EXPECT_NEAR((f.to_tangent(a) - f.to_tangent(b)).norm(), (a - b).norm(), 1e-12);
      EXPECT_LT((f.from_tangent(f.to_tangent(a)) - a).norm(), 1e-12);
    }
  }
  // The reference pole itself is a regular point of this construction.
  const TangentFrame top(UnitVector::from_unit(north_pole(2)));
  EXPECT_LT((top.rotation() * north_pole(2) + north_pole(2)).norm(), 1e-15);
}

TEST(Profile, SegmentInTheLine) {
  const double c = std::sqrt(0.5);
  const PolyhedralCone cone = PolyhedralCone::positive_hull({vec({-c, -c}), vec({c, -c})});
  const Profile p = profile(cone, UnitVector::from_unit(vec({0, -1})), 1.0);
  ASSERT_TRUE(p.bounded);
  ASSERT_EQ(p.polytope->num_vertices(), 2u);
  EXPECT_NEAR(p.polytope->vertices()[0](0), -1.0, 1e-12);
  EXPECT_NEAR(p.polytope->vertices()[1](0), 1.0, 1e-12);
  const Profile p3 = profile(cone, UnitVector::from_unit(vec({0, -1})), 3.0);
  EXPECT_NEAR(p3.polytope->vertices()[1](0), 3.0, 1e-12);
}

TEST(Profile, OrthantFromDiagonalIsEquilateral) {
  const PolyhedralCone cone(make_hyperplanes({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}), {1, 1, 1});
  const Profile p = profile(cone, UnitVector::normalize(vec({1, 1, 1})), 1.0);
  ASSERT_TRUE(p.bounded);
  const auto& v = p.polytope->vertices();
  ASSERT_EQ(v.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(v[i].norm(), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR((v[i] - v[(i + 1) % 3]).norm(), std::sqrt(6.0), 1e-12);
  }
}

TEST(Profile, UnboundedWhenARayIsOrthogonal) {
  const PolyhedralCone cone = PolyhedralCone::positive_hull({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  const Profile p = profile(cone, UnitVector::normalize(vec({1, 1, 0})), 1.0);
  EXPECT_FALSE(p.bounded);
  EXPECT_FALSE(p.polytope.has_value());
  EXPECT_ERROR_KIND(profile(cone, UnitVector::normalize(vec({-1, 1, 1})), 1.0), ErrorKind::kInvalidArgument);
}

TEST(Profile, BoundednessCriterionAndVertexTransport) {
  RngStream rng(52, 0);
  int bounded = 0, unbounded = 0;
  for (int i = 0; i < 400; ++i) {
    const ConeSample s = sample_schlaefli_cone(5, 2, rng);
    const PolyhedralCone& c = *s.cone;
    const UnitVector v = sample_uniform_in_cell(c, rng);
    const Profile p = profile(c, v, 7.0);
    bool all_positive = true;
    for (const auto& r : extreme_rays(c)) all_positive &= r.coords().dot(v.coords()) > 0;
    EXPECT_EQ(p.bounded, all_positive);
    if (p.bounded) {
      ++bounded;
      EXPECT_EQ(static_cast<long>(p.polytope->num_vertices()), face_counts_spherical(c)[0]);
      // Every direction of the cone hits the tangent plane inside the profile.
      const TangentFrame f(v);
      for (int t = 0; t < 10; ++t) {
        const Vec u = sample_uniform_in_cell(c, rng).coords();
        ASSERT_GT(u.dot(v.coords()), 0.0);
        EXPECT_TRUE(p.polytope->contains(7.0 * f.to_tangent(u / u.dot(v.coords())), 1e-7));
      }
    } else {
      ++unbounded;
    }
  }
  EXPECT_GT(bounded, 0);
  EXPECT_GT(unbounded, 0);
}

TEST(PnStar, BoundedFractionAndVertexCount) {
  auto fraction = [](int n, int reps, std::uint64_t stream) {
    RngStream rng(53, stream);
    long attempts = 0;
    for (int i = 0; i < reps; ++i) {
      const ProfileSample s = sample_Pn_star(n, 2, rng);
      attempts += s.attempts;
      EXPECT_EQ(static_cast<long>(s.polytope.num_vertices()), s.source_f0);
      EXPECT_TRUE(s.polytope.contains(Vec::Zero(2), -1e-12));
    }
    return static_cast<double>(reps) / static_cast<double>(attempts);
  };
  EXPECT_GE(fraction(50, 400, 0), 0.9);
}

TEST(QnStar, BoundedFractionIncreasesTowardOne) {
  // Already saturated at n = 16, so monotonicity is checked up to binomial
  // noise: each step may drop by at most three standard errors.
  const int reps = 400;
  auto fraction = [&](int n, std::uint64_t stream) {
    RngStream rng(55, stream);
    long attempts = 0;
    for (int i = 0; i < reps; ++i) attempts += sample_Qn_star(n, 2, rng).attempts;
    return static_cast<double>(reps) / static_cast<double>(attempts);
  };
  auto slack = [&](double f) { return 3.0 * std::sqrt(std::max(f * (1.0 - f), 1.0 / reps) / reps); };
  const double f16 = fraction(16, 1), f64 = fraction(64, 2), f256 = fraction(256, 3);
  EXPECT_GE(f64, f16 - slack(f16));
  EXPECT_GE(f256, f64 - slack(f64));
  EXPECT_GE(f256, 0.99);
}

TEST(QnStar, DirectAndRotatedConstructionsAgree) {
  RngStream rng(54, 0);
  std::vector<std::vector<double>> a, b;
  std::vector<long> fa, fb;
  for (int i = 0; i < 600; ++i) {
    const Polytope p = sample_Qn_star(12, 2, rng, QnConstruction::kDirect).polytope;
    const Polytope q = sample_Qn_star(12, 2, rng, QnConstruction::kRotated).polytope;
    a.push_back({std::log(p.volume()), static_cast<double>(p.num_vertices())});
    b.push_back({std::log(q.volume()), static_cast<double>(q.num_vertices())});
    fa.push_back(static_cast<long>(p.num_vertices()));
    fb.push_back(static_cast<long>(q.num_vertices()));
  }
  EXPECT_GT(energy_test(a, b, 199, rng).p_value, 1e-3);
  EXPECT_GT(chi_square_homogeneity(fa, fb).p_value, 1e-3);
}

TEST(QnStar, ConditioningMatchesEnumerateAndFilter) {
  // Oracle: enumerate an arrangement, take a uniform cell, a uniform point by
  // cap rejection, and keep the draw iff every ray lies strictly on the point's
  // side; record the vertex count and the unconditional bounded rate.
  const int n = 6, reps = 3000;
  RngStream orng(55, 0);
  std::vector<long> oracle_f0;
  long oracle_trials = 0;
  while (static_cast<int>(oracle_f0.size()) < reps) {
    ++oracle_trials;
    std::vector<Vec> ns;
    for (int i = 0; i < n; ++i) {
      Vec g(3);
      for (int j = 0; j < 3; ++j) g(j) = orng.normal();
      ns.push_back(g.normalized());
    }
    const auto arr = enumerate_cones(make_hyperplanes(ns));
    const PolyhedralCone c = arr.cell(orng.uniform_int(arr.size()));
    const Vec u = sample_uniform_in_cell(c, orng, CellSampler::kCapRejection).coords();
    bool ok = true;
    for (const auto& r : c.generators().rays) ok &= r.direction.coords().dot(u) > 0;
    if (ok) oracle_f0.push_back(static_cast<long>(c.generators().rays.size()));
  }
  RngStream rng(55, 1);
  std::vector<long> f0;
  long attempts = 0;
  for (int i = 0; i < reps; ++i) {
    const ProfileSample s = sample_Qn_star(n, 2, rng);
    f0.push_back(static_cast<long>(s.polytope.num_vertices()));
    attempts += s.attempts;
  }
  EXPECT_GT(chi_square_homogeneity(f0, oracle_f0).p_value, 1e-3);
  const double p1 = static_cast<double>(reps) / static_cast<double>(attempts);
  const double p2 = static_cast<double>(reps) / static_cast<double>(oracle_trials);
  EXPECT_NEAR(p1, p2, 4 * std::sqrt(p1 * (1 - p1) / attempts + p2 * (1 - p2) / oracle_trials));
}
