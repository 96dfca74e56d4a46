#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"
#include "conehull/tessellation.hpp"

namespace conehull {

struct ExperimentConfig {
  std::string experiment;
  int d = 2;
  std::vector<long> n;  // a single value or a sweep
  double gamma = 0.0;   // 0: the isotropic default intensity_gamma(d)
  double R = 40.0;
  long reps = 1000;
  std::uint64_t seed = 42;
  int workers = 1;
  double k = 4.0;  // pass band in standard errors
  int permutations = 199;
  std::string typical = "importance";  // window | importance
  double volume_floor = 1.0;           // conditioning level for the main-theorem comparison
  long pointwise_n = 100000;

  static ExperimentConfig from_json(const nlohmann::json& j);
  // JSON object or "key = value" lines ('#' starts a comment).
  static ExperimentConfig parse(const std::string& text);
  nlohmann::json to_json() const;
};

// Reads a config file and applies the CONEHULL_SEED override.
ExperimentConfig load_config(const std::string& path);
void apply_env_overrides(ExperimentConfig& cfg);

struct ResultRecord {
  std::string experiment;
  int d = 0;
  long n = 0;
  long reps = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> exact_target;
  std::optional<bool> pass;
  double runtime_ms = 0.0;
};

// Fills ci_low/ci_high as estimate -/+ k se and, when a target is present,
// pass = |estimate - target| <= k se.
ResultRecord make_record(std::string name, const ExperimentConfig& cfg, long n, double estimate, double std_error,
                         std::optional<double> exact_target = std::nullopt, std::optional<bool> pass = std::nullopt);

std::string csv_header();
std::string to_csv_row(const ResultRecord& r, bool with_runtime = true);
std::string to_csv(const std::vector<ResultRecord>& rs, bool with_runtime = true);
nlohmann::json to_json(const ResultRecord& r);

// Stream for replicate r of a named sub-experiment: RngStream(seed, r) split by
// the tag hash, so distinct tags are independent and results do not depend on
// scheduling.
RngStream replicate_stream(std::uint64_t seed, const char* tag, std::uint64_t r);

// Deterministic parallel map over [0, count): results are stored by index.
template <class F>
auto parallel_map(long count, int workers, F&& f) -> std::vector<decltype(f(0L))> {
  using T = decltype(f(0L));
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
  std::atomic<long> next{0};
  std::exception_ptr error;
  long error_index = count;
  std::mutex mu;
  auto work = [&] {
    for (long i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  const int w = std::max(1, std::min<int>(workers, static_cast<int>(std::max(1L, count))));
  if (w == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// Energy-test features of a cell: log area, vertex count, log inradius, log diameter.
std::vector<double> feature_vector(const Polytope& p);

std::vector<std::string> experiment_names();
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg);

// The acceptance configurations, one experiment per criterion.
std::vector<ExperimentConfig> acceptance_configs(std::uint64_t seed, int workers);
std::vector<ResultRecord> verify(std::uint64_t seed, int workers,
                                 const std::function<void(const ResultRecord&)>& on_record = {});

struct SvgScene {
  double window_radius = 1.0;
  std::vector<std::pair<Vec, Vec>> chords;
  std::vector<Polytope> polygons;
};

SvgScene scene_from_process(const HyperplaneProcessSample& s);
std::string render_svg(const SvgScene& scene);
void write_svg(const SvgScene& scene, const std::string& path);

}  // namespace conehull
