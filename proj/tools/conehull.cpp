// conehull command line: sampling, enumeration, densities, experiments.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "conehull/arrangement.hpp"
#include "conehull/densities.hpp"
#include "conehull/errors.hpp"
#include "conehull/harness.hpp"
#include "conehull/profiles.hpp"
#include "conehull/samplers.hpp"
#include "conehull/stats.hpp"
#include "conehull/tessellation.hpp"

using namespace conehull;
using json = nlohmann::json;

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec json_vec(const json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

std::uint64_t effective_seed(const CLI::Option* opt, std::uint64_t seed) {
  if (opt->count() == 0) {
    if (const char* s = std::getenv("CONEHULL_SEED")) return std::strtoull(s, nullptr, 0);
  }
  return seed;
}

json cone_json(const ConeSample& s) {
  json j = {{"kind", to_string(s.kind)}, {"trials", s.trials}, {"full_dimensional", s.full_dimensional}};
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(vec_json(g));
  j["generators"] = gens;
  if (s.cone) {
    const PolyhedralCone& c = *s.cone;
    j["signs"] = json(std::vector<int>(c.signs().begin(), c.signs().end()));
    json rays = json::array();
    for (const auto& r : c.generators().rays) rays.push_back(vec_json(r.direction.coords()));
    j["rays"] = rays;
    j["pointed"] = c.pointed();
    if (c.pointed()) {
      j["f_spherical"] = face_counts_spherical(c);
      if (c.ambient_dim() <= 3) j["solid_angle"] = solid_angle(c).value;
    }
  }
  if (s.cell_count) j["cell_count"] = s.cell_count;
  return j;
}

json features_json(const Polytope& p) {
  const CellFeatures f = cell_features(p);
  return {{"volume", f.volume}, {"f_vector", f.f_vector}, {"inradius", f.inradius}, {"diameter", f.diameter}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_records(const std::vector<ResultRecord>& rs, const std::string& out) {
  const std::string csv = to_csv(rs);
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error(ErrorKind::kIoError, "cannot write " + out);
    f << csv;
  }
}

bool all_pass(const std::vector<ResultRecord>& rs) {
  for (const auto& r : rs)
    if (r.pass && !*r.pass) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conehull: random conical tessellations and Poisson hyperplane tessellations"};
  app.require_subcommand(1);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance experiments; exit 1 if any check fails");
  std::uint64_t verify_seed = 42;
  int verify_workers = 1;
  std::string verify_out;
  auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed, "Master seed");
  verify_cmd->add_option("--workers", verify_workers, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify_out, "CSV output file (default stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one experiment from a config file (JSON or key = value)");
  std::string run_config, run_out;
  int run_workers = 0;
  run_cmd->add_option("--config", run_config, "Config file")->required();
  run_cmd->add_option("--workers", run_workers, "Override the configured worker count");
  run_cmd->add_option("--out", run_out, "CSV output file (default stdout)");

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Sample random cones or the point process Pi (JSON lines)");
  std::string kind = "schlaefli";
  int d = 2, n = 4;
  long reps = 1;
  std::uint64_t seed = 42;
  sample_cmd->add_option("--kind", kind, "schlaefli|cover-efron|rn|s-minus-e|pi")
      ->check(CLI::IsMember({"schlaefli", "cover-efron", "rn", "s-minus-e", "pi"}));
  sample_cmd->add_option("--d", d, "Sphere dimension d (cones live in R^{d+1}); Pi lives in R^d");
  sample_cmd->add_option("--n", n, "Number of hyperplanes / points");
  sample_cmd->add_option("--reps", reps, "Replicates");
  auto* sample_seed_opt = sample_cmd->add_option("--seed", seed, "Master seed");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate the cells of a random conical arrangement (JSON)");
  int enum_dim = 3, enum_n = 4;
  std::uint64_t enum_seed = 42;
  bool enum_cells = false;
  enum_cmd->add_option("--dim", enum_dim, "Ambient dimension D = d + 1");
  enum_cmd->add_option("--n", enum_n, "Number of hyperplanes (1..64)");
  auto* enum_seed_opt = enum_cmd->add_option("--seed", enum_seed, "Seed");
  enum_cmd->add_flag("--cells", enum_cells, "Also list sign vectors and rays of every cell");

  // pht
  auto* pht_cmd = app.add_subcommand("pht", "Poisson hyperplane tessellation cells (JSON lines of features)");
  int pht_d = 2;
  double pht_gamma = 0.0, pht_R = 10.0;
  long pht_reps = 1;
  std::uint64_t pht_seed = 42;
  std::string pht_typical;
  bool pht_process = false, pht_zero = false;
  pht_cmd->add_option("--d", pht_d, "Dimension (2 or 3)");
  pht_cmd->add_option("--gamma", pht_gamma, "Intensity (default: the isotropic gamma_d)");
  pht_cmd->add_option("--R", pht_R, "Window radius");
  pht_cmd->add_option("--reps", pht_reps, "Replicates");
  auto* pht_seed_opt = pht_cmd->add_option("--seed", pht_seed, "Master seed");
  pht_cmd->add_option("--typical", pht_typical, "Emit one typical cell per replicate: window|importance")
      ->check(CLI::IsMember({"window", "importance"}));
  pht_cmd->add_flag("--zero", pht_zero, "Emit the zero cell per replicate");
  pht_cmd->add_flag("--process", pht_process, "Emit the hyperplanes of each window sample (input for plot)");

  // profile
  auto* prof_cmd = app.add_subcommand("profile", "Rescaled profiles P_n* / Q_n* (JSON lines)");
  std::string prof_kind = "qn";
  int prof_d = 2, prof_n = 16;
  long prof_reps = 1;
  std::uint64_t prof_seed = 42;
  prof_cmd->add_option("--kind", prof_kind, "pn|qn")->check(CLI::IsMember({"pn", "qn"}));
  prof_cmd->add_option("--d", prof_d, "Dimension of the profile");
  prof_cmd->add_option("--n", prof_n, "Number of hyperplanes");
  prof_cmd->add_option("--reps", prof_reps, "Replicates");
  auto* prof_seed_opt = prof_cmd->add_option("--seed", prof_seed, "Master seed");

  // density
  auto* dens_cmd = app.add_subcommand("density", "Evaluate phi, phi_n, PC or the exterior integral");
  std::string dens_eval = "phi", dens_config;
  long dens_n = 0;
  dens_cmd->add_option("--eval", dens_eval, "phi|phin|pc|exterior")
      ->check(CLI::IsMember({"phi", "phin", "pc", "exterior"}));
  dens_cmd->add_option("--config", dens_config,
                       "JSON file with \"points\" (or \"vertices\") and optionally \"n\"")
      ->required();
  dens_cmd->add_option("--n", dens_n, "n for phin (overrides the file)");

  // converge
  auto* conv_cmd = app.add_subcommand("converge", "n-sweep of the L1 distance between phi_n and phi (CSV)");
  int conv_d = 2;
  std::vector<long> conv_n = {100, 1000, 10000};
  long conv_reps = 2000;
  std::uint64_t conv_seed = 42;
  int conv_workers = 1;
  conv_cmd->add_option("--d", conv_d, "Dimension (2 or 3)");
  conv_cmd->add_option("--n", conv_n, "Values of n")->delimiter(',');
  conv_cmd->add_option("--reps", conv_reps, "Samples of conv(Pi)");
  auto* conv_seed_opt = conv_cmd->add_option("--seed", conv_seed, "Master seed");
  conv_cmd->add_option("--workers", conv_workers, "Worker threads");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "Render d=2 hyperplanes and polygons as SVG");
  std::string plot_in, plot_svg;
  plot_cmd->add_option("--input", plot_in, "JSON or JSON-lines file (pht --process / polytopes)")->required();
  plot_cmd->add_option("--svg", plot_svg, "Output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) {
      const std::uint64_t s = effective_seed(verify_seed_opt, verify_seed);
      const auto rs = verify(s, verify_workers, [](const ResultRecord& r) {
        std::fprintf(stderr, "%-45s %s\n", (r.experiment + " n=" + std::to_string(r.n)).c_str(),
                     r.pass ? (*r.pass ? "pass" : "FAIL") : "-");
      });
      print_records(rs, verify_out);
      return all_pass(rs) ? 0 : 1;
    }
    if (run_cmd->parsed()) {
      ExperimentConfig cfg = load_config(run_config);
      if (run_workers > 0) cfg.workers = run_workers;
      const auto rs = run_experiment(cfg);
      print_records(rs, run_out);
      return all_pass(rs) ? 0 : 1;
    }
    if (sample_cmd->parsed()) {
      const std::uint64_t s = effective_seed(sample_seed_opt, seed);
      for (long r = 0; r < reps; ++r) {
        RngStream rng(s, static_cast<std::uint64_t>(r));
        json j;
        if (kind == "pi") {
          const auto pts = sample_poisson_Pi(d, rng);
          json p = json::array();
          for (const auto& x : pts) p.push_back(vec_json(x));
          const Polytope hull = Polytope::hull_of(pts, d);
          j = {{"kind", "pi"}, {"points", p}, {"hull", hull.to_json()}, {"features", features_json(hull)}};
        } else if (kind == "schlaefli") {
          j = cone_json(sample_schlaefli_cone(n, d, rng));
        } else if (kind == "cover-efron") {
          j = cone_json(sample_cover_efron(n, d, rng));
        } else if (kind == "rn") {
          j = cone_json(sample_r_n(n, d, rng));
        } else {
          j = cone_json(sample_s_minus_e(n, d, rng));
        }
        j["rep"] = r;
        std::cout << j.dump() << "\n";
      }
      return 0;
    }
    if (enum_cmd->parsed()) {
      RngStream rng(effective_seed(enum_seed_opt, enum_seed), 0);
      std::vector<Vec> normals;
      for (int i = 0; i < enum_n; ++i) normals.push_back(sample_uniform_sphere(enum_dim - 1, rng).coords());
      const ConicalArrangement arr = enumerate_cones(make_hyperplanes(normals));
      json j = {{"ambient_dim", enum_dim}, {"n", enum_n}, {"cells", arr.size()},
                {"expected_cells", schlaefli_count(enum_n, enum_dim)}};
      if (enum_n >= enum_dim && enum_dim >= 3) {
        const FaceCensus c = arrangement_face_census(arr);
        j["faces"] = c.faces;
        j["faces_formula"] = c.faces_formula;
        j["incidence_sum"] = c.incidence_sum;
        j["incidence_identity"] = c.incidence_identity;
        j["spherical_sum"] = c.spherical_sum;
        j["spherical_formula"] = c.spherical_formula;
        j["spherical_match"] = c.spherical_match;
      }
      if (enum_cells) {
        json cells = json::array();
        for (const auto& cell : arr.raw_cells()) {
          json rays = json::array();
          for (const auto& r : cell.generators.rays) rays.push_back(vec_json(r.direction.coords()));
          cells.push_back({{"signs", std::vector<int>(cell.signs.begin(), cell.signs.end())}, {"rays", rays}});
        }
        j["cell_list"] = cells;
      }
      std::cout << j.dump() << "\n";
      return 0;
    }
    if (pht_cmd->parsed()) {
      const std::uint64_t s = effective_seed(pht_seed_opt, pht_seed);
      const double g = pht_gamma > 0 ? pht_gamma : intensity_gamma(pht_d);
      for (long r = 0; r < pht_reps; ++r) {
        RngStream rng(s, static_cast<std::uint64_t>(r));
        if (!pht_typical.empty()) {
          TypicalCellOptions opt;
          opt.method = pht_typical == "window" ? TypicalMethod::kWindow : TypicalMethod::kImportance;
          opt.window_radius = pht_R;
          const auto t = sample_typical_cell(pht_d, g, rng, opt);
          json j = features_json(t.polytope);
          j["rep"] = r;
          j["weight"] = t.weight;
          j["polytope"] = t.polytope.to_json();
          std::cout << j.dump() << "\n";
        } else if (pht_zero) {
          const auto z = sample_zero_cell_full(pht_d, g, rng);
          json j = features_json(z.cell);
          j["rep"] = r;
          j["radius"] = z.radius;
          j["polytope"] = z.cell.to_json();
          std::cout << j.dump() << "\n";
        } else {
          const auto proc = sample_pht(pht_d, g, pht_R, rng);
          if (pht_process) {
            json hs = json::array();
            for (const auto& h : proc.hyperplanes)
              hs.push_back({{"direction", vec_json(h.direction.coords())}, {"distance", h.distance}});
            std::cout << json{{"rep", r}, {"d", pht_d}, {"gamma", g}, {"window_radius", pht_R}, {"hyperplanes", hs}}.dump()
                      << "\n";
            continue;
          }
          for (const auto& c : tessellate_window(proc)) {
            if (!c.complete) continue;
            json j = features_json(c.polytope);
            j["rep"] = r;
            std::cout << j.dump() << "\n";
          }
        }
      }
      return 0;
    }
    if (prof_cmd->parsed()) {
      const std::uint64_t s = effective_seed(prof_seed_opt, prof_seed);
      for (long r = 0; r < prof_reps; ++r) {
        RngStream rng(s, static_cast<std::uint64_t>(r));
        const ProfileSample p =
            prof_kind == "pn" ? sample_Pn_star(prof_n, prof_d, rng) : sample_Qn_star(prof_n, prof_d, rng);
        json j = features_json(p.polytope);
        j["rep"] = r;
        j["polytope"] = p.polytope.to_json();
        j["source_f0"] = p.source_f0;
        j["attempts"] = p.attempts;
        j["bounded_fraction"] = 1.0 / static_cast<double>(p.attempts);
        std::cout << j.dump() << "\n";
      }
      return 0;
    }
    if (dens_cmd->parsed()) {
      const json cfg = json::parse(read_file(dens_config));
      const json& pts = cfg.contains("points") ? cfg.at("points") : cfg.at("vertices");
      std::vector<Vec> points;
      for (const auto& p : pts) points.push_back(json_vec(p));
      const int dim = static_cast<int>(points.front().size());
      json out = {{"eval", dens_eval}};
      if (dens_eval == "phi" || dens_eval == "phin") {
        const CoordinateRep x = CoordinateRep::from_points(points);
        DensityValue v;
        if (dens_eval == "phi") {
          v = eval_phi(x);
        } else {
          const long nn = dens_n > 0 ? dens_n : cfg.value("n", 0L);
          if (nn <= 0) throw Error(ErrorKind::kConfigError, "config.n: required for phin");
          v = eval_phi_n(x, nn);
          out["n"] = nn;
        }
        out["value"] = v.value;
        out["log_value"] = v.log_value;
        out["origin_interior"] = v.origin_interior;
        out["error"] = v.quadrature_error;
      } else {
        const Polytope p = Polytope::hull_of(points, dim);
        const Estimate e = dens_eval == "pc"
                               ? pc_beta_prime(p, dim == 2 ? PcMode::kExact : PcMode::kQuadrature)
                               : exterior_inverse_power_integral(p);
        out["value"] = e.value;
        out["error"] = e.error;
      }
      std::cout << out.dump() << "\n";
      return 0;
    }
    if (conv_cmd->parsed()) {
      ExperimentConfig cfg;
      cfg.experiment = "density-convergence";
      cfg.d = conv_d;
      cfg.n = conv_n;
      cfg.reps = conv_reps;
      cfg.seed = effective_seed(conv_seed_opt, conv_seed);
      cfg.workers = conv_workers;
      print_records(run_experiment(cfg), "-");
      return 0;
    }
    if (plot_cmd->parsed()) {
      SvgScene scene;
      scene.window_radius = 0.0;
      std::istringstream in(read_file(plot_in));
      for (std::string line; std::getline(in, line);) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const json j = json::parse(line);
        if (j.contains("hyperplanes")) {
          HyperplaneProcessSample s;
          s.d = j.value("d", 2);
          s.window_radius = j.at("window_radius").get<double>();
          for (const auto& h : j.at("hyperplanes"))
            s.hyperplanes.push_back({UnitVector::normalize(json_vec(h.at("direction"))), h.at("distance").get<double>()});
          const SvgScene part = scene_from_process(s);
          scene.window_radius = std::max(scene.window_radius, part.window_radius);
          scene.chords.insert(scene.chords.end(), part.chords.begin(), part.chords.end());
        }
        const json* poly = j.contains("polytope") ? &j.at("polytope") : (j.contains("vertices") ? &j : nullptr);
        if (poly) {
          Polytope p = Polytope::from_json(*poly);
          for (const auto& v : p.vertices()) scene.window_radius = std::max(scene.window_radius, 1.05 * v.norm());
          scene.polygons.push_back(std::move(p));
        }
      }
      if (scene.window_radius <= 0) scene.window_radius = 1.0;
      write_svg(scene, plot_svg);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "conehull: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "conehull: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
