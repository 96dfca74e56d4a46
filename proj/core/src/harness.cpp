#include "conehull/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conehull/errors.hpp"

namespace conehull {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kConfigError, "config." + path + ": " + what);
}

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(key, "wrong type");
  }
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) config_error("<root>", "expected an object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "experiment") c.experiment = get_as<std::string>(v, key);
    else if (key == "d") c.d = get_as<int>(v, key);
    else if (key == "n") {
      c.n.clear();
      if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) c.n.push_back(get_as<long>(v[i], "n[" + std::to_string(i) + "]"));
      } else {
        c.n.push_back(get_as<long>(v, key));
      }
    } else if (key == "gamma") c.gamma = get_as<double>(v, key);
    else if (key == "R") c.R = get_as<double>(v, key);
    else if (key == "reps") c.reps = get_as<long>(v, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "workers") c.workers = get_as<int>(v, key);
    else if (key == "k") c.k = get_as<double>(v, key);
    else if (key == "permutations") c.permutations = get_as<int>(v, key);
    else if (key == "typical") c.typical = get_as<std::string>(v, key);
    else if (key == "volume_floor") c.volume_floor = get_as<double>(v, key);
    else if (key == "pointwise_n") c.pointwise_n = get_as<long>(v, key);
    else config_error(key, "unknown field");
  }
  const auto names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end())
    config_error("experiment", "unknown experiment '" + c.experiment + "'");
  if (c.d < 1 || c.d > kMaxDim) config_error("d", "must be in 1..8");
  if (c.reps < 1) config_error("reps", "must be positive");
  if (c.workers < 1) config_error("workers", "must be positive");
  if (!(c.R > 0)) config_error("R", "must be positive");
  if (c.gamma < 0) config_error("gamma", "must be nonnegative");
  if (c.typical != "window" && c.typical != "importance") config_error("typical", "window or importance");
  for (std::size_t i = 0; i < c.n.size(); ++i)
    if (c.n[i] < 1) config_error("n[" + std::to_string(i) + "]", "must be positive");
  return c;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      config_error("<root>", std::string("invalid JSON: ") + e.what());
    }
    return from_json(j);
  }
  nlohmann::json j = nlohmann::json::object();
  std::istringstream in(t);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error("line" + std::to_string(lineno), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    nlohmann::json v = nlohmann::json::parse(val, nullptr, false);
    if (v.is_discarded()) {
      if (val.find(',') != std::string::npos) {
        v = nlohmann::json::array();
        std::istringstream items(val);
        for (std::string item; std::getline(items, item, ',');) {
          auto x = nlohmann::json::parse(trim(item), nullptr, false);
          v.push_back(x.is_discarded() ? nlohmann::json(trim(item)) : x);
        }
      } else {
        v = val;
      }
    }
    j[key] = v;
  }
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"experiment", experiment}, {"d", d}, {"n", n}, {"gamma", gamma}, {"R", R}, {"reps", reps},
          {"seed", seed}, {"workers", workers}, {"k", k}, {"permutations", permutations}, {"typical", typical},
          {"volume_floor", volume_floor}, {"pointwise_n", pointwise_n}};
}

void apply_env_overrides(ExperimentConfig& cfg) {
  if (const char* s = std::getenv("CONEHULL_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 0);
    if (end == s || *end != '\0') config_error("seed", "CONEHULL_SEED is not an integer");
    cfg.seed = v;
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg = ExperimentConfig::parse(ss.str());
  apply_env_overrides(cfg);
  return cfg;
}

ResultRecord make_record(std::string name, const ExperimentConfig& cfg, long n, double estimate, double std_error,
                         std::optional<double> exact_target, std::optional<bool> pass) {
  ResultRecord r;
  r.experiment = std::move(name);
  r.d = cfg.d;
  r.n = n;
  r.reps = cfg.reps;
  r.seed = cfg.seed;
  r.estimate = estimate;
  r.std_error = std_error;
  r.ci_low = estimate - cfg.k * std_error;
  r.ci_high = estimate + cfg.k * std_error;
  r.exact_target = exact_target;
  if (pass) r.pass = pass;
  else if (exact_target) r.pass = std::fabs(estimate - *exact_target) <= cfg.k * std_error;
  return r;
}

std::string csv_header() {
  return "experiment,d,n,reps,seed,estimate,std_error,ci_low,ci_high,exact_target,pass,runtime_ms";
}

std::string to_csv_row(const ResultRecord& r, bool with_runtime) {
  std::string s = r.experiment + "," + std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::to_string(r.reps) +
                  "," + std::to_string(r.seed) + "," + fmt_double(r.estimate) + "," + fmt_double(r.std_error) + "," +
                  fmt_double(r.ci_low) + "," + fmt_double(r.ci_high) + "," +
                  (r.exact_target ? fmt_double(*r.exact_target) : "") + "," +
                  (r.pass ? (*r.pass ? "true" : "false") : "");
  if (with_runtime) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", r.runtime_ms);
    s += ",";
    s += buf;
  }
  return s;
}

std::string to_csv(const std::vector<ResultRecord>& rs, bool with_runtime) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rs) out += to_csv_row(r, with_runtime) + "\n";
  return out;
}

nlohmann::json to_json(const ResultRecord& r) {
  nlohmann::json j = {{"experiment", r.experiment}, {"d", r.d},         {"n", r.n},
                      {"reps", r.reps},             {"seed", r.seed},   {"estimate", r.estimate},
                      {"std_error", r.std_error},   {"ci_low", r.ci_low}, {"ci_high", r.ci_high}};
  j["exact_target"] = r.exact_target ? nlohmann::json(*r.exact_target) : nlohmann::json(nullptr);
  j["pass"] = r.pass ? nlohmann::json(*r.pass) : nlohmann::json(nullptr);
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

RngStream replicate_stream(std::uint64_t seed, const char* tag, std::uint64_t r) {
  return RngStream(seed, r).split(fnv1a64(tag));
}

std::vector<double> feature_vector(const Polytope& p) {
  const CellFeatures f = cell_features(p);
  return {std::log(f.volume), static_cast<double>(f.f_vector.front()), std::log(f.inradius), std::log(f.diameter)};
}

std::vector<ExperimentConfig> acceptance_configs(std::uint64_t seed, int workers) {
  auto cfg = [&](std::string name, int d, std::vector<long> n, long reps) {
    ExperimentConfig c;
    c.experiment = std::move(name);
    c.d = d;
    c.n = std::move(n);
    c.reps = reps;
    c.seed = seed;
    c.workers = workers;
    return c;
  };
  std::vector<long> one_to_ten;
  for (long i = 1; i <= 10; ++i) one_to_ten.push_back(i);
  std::vector<ExperimentConfig> out;
  for (int d = 1; d <= 3; ++d) out.push_back(cfg("cone-count", d, one_to_ten, 100));
  out.push_back(cfg("face-formula", 2, {3, 4, 5, 6, 7, 8}, 100));
  out.push_back(cfg("wendel", 1, {3}, 100000));
  out.push_back(cfg("wendel", 2, {6, 4}, 100000));
  out.push_back(cfg("size-bias", 2, {4, 8, 16}, 20000));
  out.push_back(cfg("duality-chain", 2, {10000}, 2000));
  auto main = cfg("main-theorem", 2, {256}, 2000);
  main.gamma = 0.5;
  out.push_back(main);
  out.push_back(cfg("density-convergence", 2, {100, 1000, 10000}, 2000));
  out.push_back(cfg("closed-form", 2, {}, 1));
  out.push_back(cfg("beta-prime-limit", 2, {10000}, 2000));
  return out;
}

std::vector<ResultRecord> verify(std::uint64_t seed, int workers,
                                 const std::function<void(const ResultRecord&)>& on_record) {
  std::vector<ResultRecord> all;
  for (const auto& c : acceptance_configs(seed, workers)) {
    for (auto& r : run_experiment(c)) {
      if (on_record) on_record(r);
      all.push_back(std::move(r));
    }
  }
  return all;
}

}  // namespace conehull
