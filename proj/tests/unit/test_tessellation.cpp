#include <gtest/gtest.h>

#include <cmath>

#include "conehull/constants.hpp"
#include "conehull/samplers.hpp"
#include "conehull/stats.hpp"
#include "conehull/tessellation.hpp"
#include "test_util.hpp"

using namespace conehull;
using testutil::vec;

TEST(Intensity, Values) {
  EXPECT_NEAR(intensity_gamma(2), 0.5, 1e-15);
  EXPECT_NEAR(intensity_gamma(1), 1 / M_PI, 1e-15);
  for (int d = 1; d <= 10; ++d) EXPECT_NEAR(intensity_gamma(d), omega(d) / 2 * (2 / omega(d + 1)), 1e-14);
}

TEST(Pht, CountDirectionsDistances) {
  RngStream rng(61, 0);
  const int N = 4000;
  double count = 0;
  std::vector<double> ang, dist;
  for (int i = 0; i < N; ++i) {
    const auto s = sample_pht(2, 0.5, 10.0, rng);
    count += static_cast<double>(s.hyperplanes.size());
    for (const auto& h : s.hyperplanes) {
      if (ang.size() < 20000) {
        ang.push_back((std::atan2(h.direction[1], h.direction[0]) + M_PI) / (2 * M_PI));
        dist.push_back(h.distance / 10.0);
      }
      ASSERT_GE(h.distance, 0.0);
    }
  }
  EXPECT_NEAR(count / N, 10.0, 4 * std::sqrt(10.0 / N));
  EXPECT_GT(ks_uniform(ang).p_value, 1e-3);
  EXPECT_GT(ks_uniform(dist).p_value, 1e-3);
}

TEST(Pht, SegmentHitsLinearInLength) {
  // Mean number of lines hitting a segment of length L is 2 gamma L / pi.
  RngStream rng(62, 0);
  const int N = 4000;
  for (double L : {2.0, 6.0}) {
    double hits = 0;
    for (int i = 0; i < N; ++i)
      for (const auto& h : sample_pht(2, 0.5, 10.0, rng).hyperplanes) {
        const double a = -0.5 * L * h.direction[0] - h.distance, b = 0.5 * L * h.direction[0] - h.distance;
        hits += (a < 0) != (b < 0);
      }
    const double mean = 2 * 0.5 * L / M_PI;
    EXPECT_NEAR(hits / N, mean, 4 * std::sqrt(mean / N)) << L;
  }
}

TEST(CellFeatures, SquareAndTriangle) {
  const Polytope sq = Polytope::from_vertices({vec({0, 0}), vec({0, 1}), vec({1, 0}), vec({1, 1})}, 2);
  const CellFeatures f = cell_features(sq);
  EXPECT_NEAR(f.volume, 1.0, 1e-15);
  EXPECT_EQ(f.f_vector, (std::vector<long>{4, 4}));
  EXPECT_NEAR(f.inradius, 0.5, 1e-12);
  EXPECT_NEAR(f.diameter, std::sqrt(2.0), 1e-15);
  const Polytope tri = Polytope::from_vertices({vec({0, 0}), vec({1, 0}), vec({0.5, 1})}, 2);
  EXPECT_NEAR(tri.volume(), 0.5, 1e-15);
  const Polytope cube = Polytope::hull_of({vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}),
                                           vec({1, 1, 0}), vec({1, 0, 1}), vec({0, 1, 1}), vec({1, 1, 1})}, 3);
  const CellFeatures c = cell_features(cube);
  EXPECT_NEAR(c.volume, 1.0, 1e-12);
  EXPECT_EQ(c.f_vector, (std::vector<long>{8, 12, 6}));
  EXPECT_NEAR(c.inradius, 0.5, 1e-12);
  EXPECT_NEAR(c.diameter, std::sqrt(3.0), 1e-15);
}

TEST(CellFeatures, UniformPointHasCentroidMean) {
  const Polytope tri = Polytope::from_vertices({vec({0, 0}), vec({3, 0}), vec({0.5, 2})}, 2);
  RngStream rng(63, 0);
  const int N = 40000;
  Vec s = Vec::Zero(2);
  for (int i = 0; i < N; ++i) {
    const Vec x = sample_uniform_in_polytope(tri, rng);
    ASSERT_TRUE(tri.contains(x));
    s += x;
  }
  EXPECT_NEAR(s(0) / N, 3.5 / 3, 0.02);
  EXPECT_NEAR(s(1) / N, 2.0 / 3, 0.02);
}

TEST(Window, CellsTileTheBox) {
  RngStream rng(64, 0);
  for (int rep = 0; rep < 5; ++rep) {
    const auto s = sample_pht(2, 0.5, 10.0, rng);
    const auto cells = tessellate_window(s);
    double area = 0;
    for (const auto& c : cells) {
      area += c.polytope.volume();
      if (!c.complete) continue;
      for (const auto& v : c.polytope.vertices()) EXPECT_LE(v.norm(), 10.0 + 1e-9);
      // Every facet of a complete cell lies on a sample line.
      for (const auto& f : c.polytope.facets()) {
        bool found = false;
        for (const auto& h : s.hyperplanes)
          found |= std::fabs(std::fabs(f.normal.dot(h.direction.coords())) - 1) < 1e-9 &&
                   std::fabs(std::fabs(f.offset) - h.distance) < 1e-7;
        EXPECT_TRUE(found);
      }
    }
    EXPECT_NEAR(area, 400.0, 1e-6);
  }
}

TEST(ZeroCell, OriginInteriorAndExactness) {
  RngStream rng(65, 0);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 100; ++rep) {
      const ZeroCellSample z = sample_zero_cell_full(d, intensity_gamma(d), rng);
      ASSERT_TRUE(z.cell.contains(Vec::Zero(d), -1e-12));
      // Hyperplanes farther out than the final radius cannot cut the cell.
      auto hs = z.hyperplanes;
      for (int k = 0; k < 20; ++k)
        hs.push_back({sample_uniform_sphere(d - 1, rng), z.radius * (1 + 3 * rng.uniform())});
      const auto again = zero_cell_of(hs, d);
      ASSERT_TRUE(again.has_value());
      ASSERT_EQ(again->num_vertices(), z.cell.num_vertices());
      for (std::size_t i = 0; i < z.cell.num_vertices(); ++i)
        EXPECT_LT((again->vertices()[i] - z.cell.vertices()[i]).norm(), 1e-9);
    }
  }
}

TEST(ZeroCell, ImportanceIdentity) {
  // E[1 / vol Z_0] * E vol Z = 1 with E vol Z = c_2.
  RngStream rng(66, 0);
  std::vector<double> w;
  for (int i = 0; i < 4000; ++i) w.push_back(1.0 / sample_zero_cell(2, 0.5, rng).volume());
  const MeanEstimate m = mean_estimate(w);
  EXPECT_NEAR(m.mean * c_d(2), 1.0, 4 * m.std_error * c_d(2));
}

TEST(ZeroCell, ScalingCovariance) {
  RngStream rng(67, 0);
  std::vector<double> a, b;
  for (int i = 0; i < 3000; ++i) {
    a.push_back(sample_zero_cell(2, 0.5, rng).volume());
    b.push_back(4.0 * sample_zero_cell(2, 1.0, rng).volume());
  }
  const MeanEstimate ma = mean_estimate(a), mb = mean_estimate(b);
  EXPECT_NEAR(ma.mean, mb.mean, 4 * joint_std_error(ma, mb));
  EXPECT_GT(ks_two_sample(a, b).p_value, 1e-3);
}

TEST(TypicalCell, ImportanceWeights) {
  RngStream rng(68, 0);
  for (int i = 0; i < 50; ++i) {
    const TypicalCellSample t = sample_typical_cell(2, 0.5, rng);
    EXPECT_NEAR(t.weight * t.polytope.volume(), 1.0, 1e-12);
  }
}

TEST(TypicalCell, WindowAndImportanceAgree) {
  RngStream rng(69, 0);
  const int N = 1500;
  std::vector<double> wf0, warea, zf0, zw, zarea;
  TypicalCellOptions win{TypicalMethod::kWindow, 20.0};
  for (int i = 0; i < N; ++i) {
    const TypicalCellSample t = sample_typical_cell(2, 0.5, rng, win);
    EXPECT_TRUE(t.polytope.contains(Vec::Zero(2)));
    wf0.push_back(static_cast<double>(t.polytope.num_vertices()));
    warea.push_back(t.polytope.volume());
    const TypicalCellSample z = sample_typical_cell(2, 0.5, rng);
    zf0.push_back(static_cast<double>(z.polytope.num_vertices()) * z.weight);
    zarea.push_back(1.0);
    zw.push_back(z.weight);
  }
  const MeanEstimate wf = mean_estimate(wf0), wa = mean_estimate(warea);
  const MeanEstimate zf = ratio_estimate(zf0, zw), za = ratio_estimate(zarea, zw);
  EXPECT_NEAR(wf.mean, zf.mean, 4 * joint_std_error(wf, zf));
  EXPECT_NEAR(wa.mean, za.mean, 4 * joint_std_error(wa, za));
  EXPECT_NEAR(wf.mean, 4.0, 4 * wf.std_error);
  EXPECT_NEAR(wa.mean, c_d(2), 4 * wa.std_error);
}

TEST(TypicalCell, WindowRadiusDoubling) {
  RngStream rng(70, 0);
  auto mean_f0 = [&](double R) {
    std::vector<double> f;
    for (int i = 0; i < 400; ++i)
      f.push_back(static_cast<double>(sample_typical_cell(2, 0.5, rng, {TypicalMethod::kWindow, R}).polytope.num_vertices()));
    return mean_estimate(f);
  };
  const MeanEstimate a = mean_f0(40.0), b = mean_f0(80.0);
  EXPECT_LT(std::fabs(a.mean - b.mean), 2 * 4 * std::max(a.std_error, b.std_error));
}
