#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <stdexcept>

#include "conehull/harness.hpp"
#include "conehull/tessellation.hpp"
#include "test_util.hpp"

using namespace conehull;
using testutil::vec;

namespace {

int count_substr(const std::string& s, const std::string& sub) {
  int n = 0;
  for (auto p = s.find(sub); p != std::string::npos; p = s.find(sub, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Config, JsonAndKeyValue) {
  const ExperimentConfig a = ExperimentConfig::parse(R"({"experiment": "wendel", "d": 2, "n": [6, 4], "reps": 100})");
  EXPECT_EQ(a.experiment, "wendel");
  EXPECT_EQ(a.n, (std::vector<long>{6, 4}));
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(a.k, 4.0);
  const ExperimentConfig b = ExperimentConfig::parse("# comment\nexperiment = wendel\nd = 2\nn = 6, 4\nreps = 100 # trailing\n");
  EXPECT_EQ(b.to_json(), a.to_json());
  const ExperimentConfig c = ExperimentConfig::from_json(a.to_json());
  EXPECT_EQ(c.to_json(), a.to_json());
}

TEST(Config, ErrorsCarryFieldPath) {
  auto message = [](const std::string& text) {
    try {
      ExperimentConfig::parse(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kConfigError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"experiment": "wendel", "reps": "many"})").find("config.reps"), std::string::npos);
  EXPECT_NE(message(R"({"experiment": "nope"})").find("config.experiment"), std::string::npos);
  EXPECT_NE(message(R"({"experiment": "wendel", "n": [3, -1]})").find("config.n[1]"), std::string::npos);
  EXPECT_NE(message(R"({"experiment": "wendel", "bogus": 1})").find("config.bogus"), std::string::npos);
  EXPECT_NE(message("experiment wendel").find("config.line1"), std::string::npos);
  EXPECT_NE(message(R"({"experiment": "wendel", "typical": "other"})").find("config.typical"), std::string::npos);
}

TEST(Config, SeedOverrideFromEnvironment) {
  const std::string path = ::testing::TempDir() + "/conehull_cfg.txt";
  {
    std::ofstream f(path);
    f << "experiment = wendel\nseed = 5\n";
  }
  unsetenv("CONEHULL_SEED");
  EXPECT_EQ(load_config(path).seed, 5u);
  setenv("CONEHULL_SEED", "1234", 1);
  EXPECT_EQ(load_config(path).seed, 1234u);
  setenv("CONEHULL_SEED", "x1", 1);
  EXPECT_ERROR_KIND(load_config(path), ErrorKind::kConfigError);
  unsetenv("CONEHULL_SEED");
  EXPECT_ERROR_KIND(load_config(path + ".missing"), ErrorKind::kIoError);
}

TEST(Records, PassRuleAndCsv) {
  ExperimentConfig cfg;
  cfg.experiment = "wendel";
  cfg.d = 2;
  cfg.reps = 10;
  const ResultRecord in = make_record("x", cfg, 6, 0.515, 0.005, 0.5);
  EXPECT_TRUE(*in.pass);
  EXPECT_DOUBLE_EQ(in.ci_low, 0.515 - 0.02);
  EXPECT_DOUBLE_EQ(in.ci_high, 0.515 + 0.02);
  const ResultRecord out = make_record("x", cfg, 6, 0.53, 0.005, 0.5);
  EXPECT_FALSE(*out.pass);
  const ResultRecord none = make_record("x", cfg, 6, 0.53, 0.005);
  EXPECT_FALSE(none.pass.has_value());
  EXPECT_EQ(csv_header(), "experiment,d,n,reps,seed,estimate,std_error,ci_low,ci_high,exact_target,pass,runtime_ms");
  ResultRecord r = in;
  r.runtime_ms = 12.25;
  const std::string row = to_csv_row(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 11);
  const std::string bare = to_csv_row(r, false);
  EXPECT_EQ(row.substr(0, bare.size()), bare);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("experiment"), "x");
  EXPECT_EQ(j.at("pass"), true);
}

TEST(ParallelMap, OrderAndErrors) {
  const auto v = parallel_map(100, 8, [](long i) { return i * i; });
  for (long i = 0; i < 100; ++i) EXPECT_EQ(v[i], i * i);
  try {
    parallel_map(50, 4, [](long i) -> int {
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    ADD_FAILURE();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Streams, ReplicateStreamsIndependentOfScheduling) {
  RngStream a = replicate_stream(42, "tag", 3), b = replicate_stream(42, "tag", 3);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(replicate_stream(42, "tag", 3).next_u64(), replicate_stream(42, "other", 3).next_u64());
  EXPECT_NE(replicate_stream(42, "tag", 3).next_u64(), replicate_stream(42, "tag", 4).next_u64());
}

TEST(Experiments, WendelExample) {
  ExperimentConfig cfg = ExperimentConfig::parse(R"({"experiment": "wendel", "d": 2, "n": 6, "reps": 100000})");
  const auto rs = run_experiment(cfg);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_NEAR(rs[0].estimate, 0.5, 0.01);
  EXPECT_EQ(*rs[0].exact_target, 0.5);
  EXPECT_TRUE(*rs[0].pass);
}

TEST(Experiments, FaceFormulaIsExact) {
  const auto rs = run_experiment(ExperimentConfig::parse(R"({"experiment": "face-formula", "d": 2, "n": 5, "reps": 20})"));
  ASSERT_FALSE(rs.empty());
  for (const auto& r : rs) {
    EXPECT_EQ(r.std_error, 0.0) << r.experiment;
    EXPECT_TRUE(r.pass.value_or(false)) << r.experiment;
  }
}

TEST(Experiments, WorkerCountDoesNotChangeOutput) {
  for (const char* text : {R"({"experiment": "size-bias", "d": 2, "n": [4, 8], "reps": 400})",
                           R"({"experiment": "cone-count", "d": 2, "n": [3, 7], "reps": 30})",
                           R"({"experiment": "beta-prime-limit", "d": 2, "n": 200, "reps": 60, "permutations": 49})"}) {
    ExperimentConfig cfg = ExperimentConfig::parse(text);
    cfg.workers = 1;
    const std::string one = to_csv(run_experiment(cfg), false);
    cfg.workers = 8;
    const std::string eight = to_csv(run_experiment(cfg), false);
    EXPECT_EQ(one, eight) << text;
    EXPECT_FALSE(one.empty());
  }
}

TEST(Experiments, AcceptanceConfigsCoverEachCriterionOnce) {
  const auto cfgs = acceptance_configs(42, 1);
  std::set<std::string> names;
  for (const auto& c : cfgs) names.insert(c.experiment);
  const std::set<std::string> want = {"cone-count", "face-formula", "wendel", "size-bias", "duality-chain",
                                      "main-theorem", "density-convergence", "closed-form", "beta-prime-limit"};
  for (const auto& w : want) EXPECT_TRUE(names.count(w)) << w;
  const auto all = experiment_names();
  for (const auto& n : names) EXPECT_NE(std::find(all.begin(), all.end(), n), all.end());
}

TEST(Features, VectorOfFour) {
  const Polytope sq = Polytope::from_vertices({vec({0, 0}), vec({0, 1}), vec({1, 0}), vec({1, 1})}, 2);
  const auto f = feature_vector(sq);
  ASSERT_EQ(f.size(), 4u);
  EXPECT_NEAR(f[0], 0.0, 1e-15);
  EXPECT_EQ(f[1], 4.0);
  EXPECT_NEAR(f[2], std::log(0.5), 1e-12);
  EXPECT_NEAR(f[3], std::log(std::sqrt(2.0)), 1e-15);
}

TEST(Svg, ChordsDeterminismAndEmptyCanvas) {
  auto scene_for = [](std::uint64_t seed) {
    RngStream rng(seed, 0);
    HyperplaneProcessSample s = sample_pht(2, 0.5, 10.0, rng);
    s.hyperplanes.erase(s.hyperplanes.begin() + std::min<std::ptrdiff_t>(s.hyperplanes.size(), 10), s.hyperplanes.end());
    return scene_from_process(s);
  };
  const SvgScene sc = scene_for(91);
  const std::string svg = render_svg(sc);
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(count_substr(svg, "<path"), static_cast<int>(sc.chords.size() + sc.polygons.size()));
  EXPECT_EQ(sc.chords.size(), 10u);
  EXPECT_EQ(render_svg(scene_for(91)), svg);
  const std::string empty = render_svg(SvgScene{});
  EXPECT_NE(empty.find("</svg>"), std::string::npos);
  EXPECT_EQ(count_substr(empty, "<path"), 0);
  EXPECT_ERROR_KIND(write_svg(sc, "/nonexistent-dir/x.svg"), ErrorKind::kIoError);
  const std::string path = ::testing::TempDir() + "/conehull_scene.svg";
  write_svg(sc, path);
  std::ifstream in(path);
  const std::string back((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(back, svg);
}
