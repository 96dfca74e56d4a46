#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "conehull/arrangement.hpp"
#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"
#include "conehull/samplers.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace conehull;
using testutil::vec;

namespace {

PolyhedralCone orthant3() {
  return PolyhedralCone(make_hyperplanes({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}), {1, 1, 1});
}

std::vector<Vec> random_normals(int n, int dim, RngStream& rng) {
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) out.push_back(sample_uniform_sphere(dim - 1, rng).coords());
  return out;
}

// Solid angle of a pointed 3-cone from its rays, via a fan of spherical
// triangles around the interior point.
double fan_solid_angle(const PolyhedralCone& c) {
  const Eigen::Vector3d z = testutil::v3(c.interior_point());
  const Eigen::Vector3d a = (std::fabs(z.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY()).cross(z).normalized();
  const Eigen::Vector3d b = z.cross(a);
  std::vector<std::pair<double, Eigen::Vector3d>> rays;
  for (const auto& r : c.generators().rays) {
    const Eigen::Vector3d v = testutil::v3(r.direction.coords());
    rays.emplace_back(std::atan2(v.dot(b), v.dot(a)), v);
  }
  std::sort(rays.begin(), rays.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  double s = 0;
  for (std::size_t i = 0; i < rays.size(); ++i)
    s += oracle::van_oosterom_strackee(z, rays[i].second, rays[(i + 1) % rays.size()].second);
  return s / (4 * M_PI);
}

}  // namespace

TEST(UnitVector, NormalizesAndRejects) {
  const UnitVector u = UnitVector::normalize(vec({3, 4}));
  EXPECT_NEAR(u.coords().norm(), 1.0, 1e-15);
  EXPECT_ERROR_KIND(UnitVector::normalize(vec({0, 0, 0})), ErrorKind::kDegenerateInput);
  EXPECT_ERROR_KIND(UnitVector::from_unit(vec({1, 1e-3})), ErrorKind::kInvalidArgument);
}

TEST(ConvexHull, RotatedSquareDropsCenter) {
  std::vector<Vec> pts;
  for (auto [x, y] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {0.0, 0.0}}) {
    const Eigen::Vector2d r = oracle::rotate({x, y}, 0.3);
    pts.push_back(vec({r.x(), r.y()}));
  }
  const Polytope p = convex_hull(pts, 2);
  ASSERT_EQ(p.num_vertices(), 4u);
  for (const auto& v : p.vertices()) EXPECT_NEAR(v.norm(), std::sqrt(2.0), 1e-12);
  for (std::size_t i = 1; i < p.num_vertices(); ++i) EXPECT_LT(p.vertices()[i - 1](0), p.vertices()[i](0));
  EXPECT_NEAR(p.volume(), 4.0, 1e-12);
}

TEST(ConvexHull, MatchesGiftWrappingOnCauchyPoints) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    RngStream rng(11, s);
    std::vector<Vec> pts;
    std::vector<Eigen::Vector2d> raw;
    for (int i = 0; i < 10; ++i) {
      pts.push_back(sample_cauchy_point(2, rng));
      raw.push_back(testutil::v2(pts.back()));
    }
    const Polytope p = convex_hull(pts, 2);
    std::set<std::pair<double, double>> got, want;
    for (const auto& v : p.vertices()) got.insert({v(0), v(1)});
    for (int i : oracle::gift_wrap(raw)) want.insert({raw[i].x(), raw[i].y()});
    EXPECT_EQ(got, want) << "seed " << s;
    std::vector<Eigen::Vector2d> ccw;
    for (int i : oracle::gift_wrap(raw)) ccw.push_back(raw[i]);
    EXPECT_NEAR(p.volume(), oracle::shoelace(ccw), 1e-9 * std::max(1.0, p.volume()));
    for (const auto& x : pts) EXPECT_TRUE(p.contains(x));
  }
}

TEST(ConvexHull, Errors) {
  EXPECT_ERROR_KIND(convex_hull({vec({0, 0}), vec({1, 1}), vec({2, 2})}, 2), ErrorKind::kDegenerateInput);
  EXPECT_ERROR_KIND(convex_hull({vec({0, 0}), vec({0, 1}), vec({1, 0})}, 2), ErrorKind::kTiedFirstCoordinate);
  EXPECT_ERROR_KIND(convex_hull({vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 0})}, 3),
                    ErrorKind::kDegenerateInput);
}

TEST(ConvexHull, Idempotent) {
  RngStream rng(12, 0);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<Vec> pts;
      for (int i = 0; i < 30; ++i) pts.push_back(sample_cauchy_point(d, rng));
      const Polytope p = convex_hull(pts, d);
      const Polytope q = convex_hull(p.vertices(), d);
      ASSERT_EQ(p.num_vertices(), q.num_vertices());
      for (std::size_t i = 0; i < p.num_vertices(); ++i) EXPECT_EQ(p.vertices()[i], q.vertices()[i]);
    }
  }
}

TEST(ConvexHull, EulerRelationIn3d) {
  RngStream rng(13, 0);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(sample_cauchy_point(3, rng));
    const auto f = convex_hull(pts, 3).f_vector();
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0] - f[1] + f[2], 2);
  }
}

TEST(Polytope, JsonRoundTrip) {
  const Polytope p = convex_hull({vec({-1, 0.2}), vec({0.3, -1}), vec({1, 0.5}), vec({0.1, 1})}, 2);
  const nlohmann::json j = p.to_json();
  EXPECT_EQ(j.at("dim"), 2);
  const Polytope q = Polytope::from_json(j);
  ASSERT_EQ(q.num_vertices(), p.num_vertices());
  for (std::size_t i = 0; i < p.num_vertices(); ++i) EXPECT_EQ(q.vertices()[i], p.vertices()[i]);
}

TEST(PolarPolytope, SquareToDiamond) {
  const Polytope sq = Polytope::from_vertices({vec({-1, -1}), vec({-1, 1}), vec({1, -1}), vec({1, 1})}, 2);
  const Polytope dia = polar_polytope(sq);
  std::set<std::pair<long, long>> got;
  for (const auto& v : dia.vertices()) got.insert({std::lround(v(0)), std::lround(v(1))});
  EXPECT_EQ(got, (std::set<std::pair<long, long>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  for (const auto& v : dia.vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}

TEST(PolarPolytope, RoundTrip) {
  RngStream rng(14, 0);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<Vec> pts;
      for (int i = 0; i < 12; ++i) pts.push_back(sample_uniform_sphere(d - 1, rng).coords() * (1 + rng.uniform()));
      const Polytope p = convex_hull(pts, d);
      if (!p.contains(Vec::Zero(d), -1e-6)) continue;
      const Polytope pp = polar_polytope(polar_polytope(p));
      ASSERT_EQ(pp.num_vertices(), p.num_vertices());
      for (std::size_t i = 0; i < p.num_vertices(); ++i)
        EXPECT_LT((pp.vertices()[i] - p.vertices()[i]).norm(), 1e-9);
    }
  }
}

TEST(PolarPolytope, OriginOutside) {
  const Polytope t = convex_hull({vec({1, 0}), vec({2, 0.5}), vec({1.5, 1})}, 2);
  EXPECT_ERROR_KIND(polar_polytope(t), ErrorKind::kOriginNotInterior);
}

TEST(Cone, OrthantRaysFacesAngle) {
  const PolyhedralCone c = orthant3();
  std::set<std::vector<long>> rays;
  for (const auto& r : extreme_rays(c)) {
    std::vector<long> v;
    for (int i = 0; i < 3; ++i) v.push_back(std::lround(r[i]));
    rays.insert(v);
  }
  EXPECT_EQ(rays, (std::set<std::vector<long>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(face_counts_spherical(c), (std::vector<long>{3, 3, 1}));
  EXPECT_NEAR(solid_angle(c).value, 1.0 / 8, 1e-12);
  EXPECT_TRUE(contains(c, vec({1, 1, 1})));
  EXPECT_FALSE(contains(c, vec({-1, 1, 1})));
  for (const auto& r : extreme_rays(c)) EXPECT_TRUE(contains(c, r.coords()));
}

TEST(Cone, HalfSpace) {
  const PolyhedralCone h(make_hyperplanes({vec({0, 0, 1})}), {1});
  EXPECT_NEAR(solid_angle(h).value, 0.5, 1e-15);
  EXPECT_FALSE(h.pointed());
  EXPECT_ERROR_KIND(face_counts_spherical(h), ErrorKind::kNotPointed);
}

TEST(Cone, InfeasibleCellRejected) {
  EXPECT_ERROR_KIND(PolyhedralCone(make_hyperplanes({vec({1, 0, 0}), vec({1, 0, 0})}), {1, -1}),
                    ErrorKind::kDegenerateInput);
}

TEST(Cone, RaysSatisfyInequalitiesAndAreTight) {
  RngStream rng(15, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto normals = random_normals(4, 3, rng);
    const auto arr = enumerate_cones(make_hyperplanes(normals));
    for (const auto& c : arr.cells()) {
      for (const auto& r : c.generators().rays) {
        EXPECT_EQ(r.tight.size(), 2u);
        for (std::size_t i = 0; i < normals.size(); ++i) {
          const double s = c.signs()[i] * normals[i].dot(r.direction.coords());
          const bool tight = std::find(r.tight.begin(), r.tight.end(), static_cast<int>(i)) != r.tight.end();
          if (tight) EXPECT_NEAR(s, 0.0, 1e-12);
          else EXPECT_GT(s, 0.0);
        }
      }
    }
  }
}

TEST(Cone, SolidAnglesSumToOneAndMatchOracles) {
  RngStream rng(16, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto arr = enumerate_cones(make_hyperplanes(random_normals(6, 3, rng)));
    double sum = 0;
    for (const auto& c : arr.cells()) {
      const double a = solid_angle(c).value;
      EXPECT_NEAR(a, fan_solid_angle(c), 1e-10);
      sum += a;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
  const auto arr = enumerate_cones(make_hyperplanes(random_normals(5, 3, rng)));
  const PolyhedralCone c = arr.cell(0);
  const double exact = solid_angle(c).value;
  const SolidAngle mc = solid_angle(c, SolidAngleMethod::kMonteCarlo, 200000, &rng);
  EXPECT_NEAR(mc.value, exact, 4 * mc.std_error);
}

TEST(Cone, SignFlipInvariance) {
  RngStream rng(17, 0);
  const auto arr = enumerate_cones(make_hyperplanes(random_normals(5, 3, rng)));
  for (const auto& c : arr.cells()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const PolyhedralCone f = c.flipped(i);
      // Rebuilt from scratch from the flipped H-representation.
      std::vector<Vec> ns;
      for (const auto& h : f.hyperplanes()) ns.push_back(h.normal.coords());
      const PolyhedralCone g(make_hyperplanes(ns), f.signs());
      EXPECT_NEAR(solid_angle(g).value, solid_angle(c).value, 1e-12);
      EXPECT_EQ(face_counts_spherical(g), face_counts_spherical(c));
      for (int t = 0; t < 20; ++t) {
        const Vec x = sample_uniform_sphere(2, rng).coords();
        EXPECT_EQ(contains(g, x), contains(c, x));
      }
    }
  }
}

TEST(Cone, EulerRelationSpherical) {
  RngStream rng(18, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const auto arr3 = enumerate_cones(make_hyperplanes(random_normals(6, 3, rng)));
    for (const auto& c : arr3.cells()) {
      const auto f = face_counts_spherical(c);
      EXPECT_EQ(f[0], f[1]);
    }
    const auto arr4 = enumerate_cones(make_hyperplanes(random_normals(7, 4, rng)));
    for (const auto& c : arr4.cells()) {
      const auto f = face_counts_spherical(c);
      EXPECT_EQ(f[0] - f[1] + f[2], 2);
    }
  }
}

TEST(Cone, PositiveHull) {
  const PolyhedralCone c = PolyhedralCone::positive_hull({vec({1, 0, 1}), vec({0, 1, 1}), vec({-1, -1, 1})});
  EXPECT_TRUE(c.pointed());
  EXPECT_EQ(c.generators().rays.size(), 3u);
  EXPECT_TRUE(contains(c, vec({0, 0, 1})));
  EXPECT_FALSE(contains(c, vec({0, 0, -1})));
}
