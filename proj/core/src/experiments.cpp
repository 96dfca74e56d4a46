#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include "conehull/arrangement.hpp"
#include "conehull/constants.hpp"
#include "conehull/densities.hpp"
#include "conehull/errors.hpp"
#include "conehull/harness.hpp"
#include "conehull/profiles.hpp"
#include "conehull/samplers.hpp"
#include "conehull/stats.hpp"
#include "conehull/tessellation.hpp"

namespace conehull {
namespace {

using Records = std::vector<ResultRecord>;

std::string tag(const std::string& base, const ExperimentConfig& c, long n) {
  return base + "/d" + std::to_string(c.d) + "/n" + std::to_string(n);
}

std::vector<Vec> sphere_points(int n, int d, RngStream& rng) {
  std::vector<Vec> u;
  u.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u.push_back(sample_uniform_sphere(d, rng).coords());
  return u;
}

long require_n(const ExperimentConfig& c, std::size_t i = 0) {
  if (c.n.size() <= i) throw Error(ErrorKind::kConfigError, "config.n: missing value for " + c.experiment);
  return c.n[i];
}

double gamma_of(const ExperimentConfig& c) { return c.gamma > 0 ? c.gamma : intensity_gamma(c.d); }

// --- 1 -------------------------------------------------------------------
Records cone_count(const ExperimentConfig& c) {
  Records out;
  for (long n : c.n) {
    const std::string t = tag("cone-count", c, n);
    const auto counts = parallel_map(c.reps, c.workers, [&](long r) {
      RngStream rng = replicate_stream(c.seed, t.c_str(), static_cast<std::uint64_t>(r));
      return static_cast<double>(enumerate_cones(make_hyperplanes(sphere_points(static_cast<int>(n), c.d, rng))).size());
    });
    const double target = static_cast<double>(schlaefli_count(static_cast<int>(n), c.d + 1));
    bool all = true;
    for (double x : counts) all = all && x == target;
    const MeanEstimate m = mean_estimate(counts);
    out.push_back(make_record("cone-count/cells", c, n, m.mean, m.std_error, target, all));
  }
  return out;
}

// --- 2 -------------------------------------------------------------------
Records face_formula(const ExperimentConfig& c) {
  Records out;
  for (long n : c.n) {
    const std::string t = tag("face-formula", c, n);
    const auto census = parallel_map(c.reps, c.workers, [&](long r) {
      RngStream rng = replicate_stream(c.seed, t.c_str(), static_cast<std::uint64_t>(r));
      return arrangement_face_census(enumerate_cones(make_hyperplanes(sphere_points(static_cast<int>(n), c.d, rng))));
    });
    const double cells = static_cast<double>(schlaefli_count(static_cast<int>(n), c.d + 1));
    for (int k = 0; k < c.d; ++k) {
      std::vector<double> means;
      bool all = true;
      for (const auto& f : census) {
        means.push_back(static_cast<double>(f.spherical_sum[static_cast<std::size_t>(k)]) / cells);
        all = all && f.spherical_sum[static_cast<std::size_t>(k)] == f.spherical_formula[static_cast<std::size_t>(k)];
      }
      const double target = static_cast<double>(spherical_face_total(static_cast<int>(n), c.d, k)) / cells;
      const MeanEstimate m = mean_estimate(means);
      out.push_back(make_record("face-formula/f" + std::to_string(k), c, n, m.mean, m.std_error, target, all));
    }
    std::vector<double> ok;
    for (const auto& f : census) ok.push_back(f.incidence_identity && f.faces_match_formula ? 1.0 : 0.0);
    const MeanEstimate m = mean_estimate(ok);
    out.push_back(make_record("face-formula/incidence", c, n, m.mean, m.std_error, 1.0, m.mean == 1.0));
  }
  return out;
}

// --- 3 -------------------------------------------------------------------
Records wendel(const ExperimentConfig& c) {
  Records out;
  for (long n : c.n) {
    const std::string t = tag("wendel", c, n);
    const auto hits = parallel_map(c.reps, c.workers, [&](long r) {
      RngStream rng = replicate_stream(c.seed, t.c_str(), static_cast<std::uint64_t>(r));
      return positive_hull_is_proper(sphere_points(static_cast<int>(n), c.d, rng)) ? 1.0 : 0.0;
    });
    const double p0 = std::ldexp(static_cast<double>(schlaefli_count(static_cast<int>(n), c.d + 1)), -static_cast<int>(n));
    const double est = mean_estimate(hits).mean;
    const double se = std::sqrt(p0 * (1 - p0) / static_cast<double>(c.reps));
    out.push_back(make_record("wendel/acceptance", c, n, est, se, p0));
  }
  return out;
}

// --- 4 -------------------------------------------------------------------
Records size_bias(const ExperimentConfig& c) {
  Records out;
  struct Rep {
    double w, alpha_rot, f0_rot, alpha_s;
    double alpha_e, f0_e;
  };
  for (long n : c.n) {
    const std::string ta = tag("size-bias/schlaefli", c, n), tb = tag("size-bias/s-minus-e", c, n);
    const auto reps = parallel_map(c.reps, c.workers, [&](long r) {
      Rep x{};
      RngStream ra = replicate_stream(c.seed, ta.c_str(), static_cast<std::uint64_t>(r));
      const ConeSample s = sample_schlaefli_cone(static_cast<int>(n), c.d, ra);
      const UnitVector u = sample_uniform_in_cell(*s.cone, ra);
      const PolyhedralCone rotated = s.cone->transformed(tangent_frame(u).rotation());
      x.w = size_bias_weight(*s.cone, static_cast<int>(n), c.d);
      x.alpha_s = solid_angle(*s.cone).value;
      x.alpha_rot = solid_angle(rotated).value;
      x.f0_rot = static_cast<double>(face_counts_spherical(rotated).front());
      RngStream rb = replicate_stream(c.seed, tb.c_str(), static_cast<std::uint64_t>(r));
      const ConeSample e = sample_s_minus_e(static_cast<int>(n), c.d, rb);
      x.alpha_e = solid_angle(*e.cone).value;
      x.f0_e = static_cast<double>(face_counts_spherical(*e.cone).front());
      return x;
    });
    std::vector<double> a1, aa, af, ba, bf, alpha;
    for (const auto& x : reps) {
      a1.push_back(x.w);
      aa.push_back(x.w * x.alpha_rot);
      af.push_back(x.w * x.f0_rot);
      ba.push_back(x.alpha_e);
      bf.push_back(x.f0_e);
      alpha.push_back(x.alpha_s);
    }
    const MeanEstimate m1 = mean_estimate(a1);
    out.push_back(make_record("size-bias/one", c, n, m1.mean - 1.0, m1.std_error, 0.0));
    const MeanEstimate ma = mean_estimate(aa), mb = mean_estimate(ba);
    out.push_back(make_record("size-bias/alpha", c, n, ma.mean - mb.mean, joint_std_error(ma, mb), 0.0));
    const MeanEstimate mf = mean_estimate(af), mg = mean_estimate(bf);
    out.push_back(make_record("size-bias/f0", c, n, mf.mean - mg.mean, joint_std_error(mf, mg), 0.0));
    const MeanEstimate mal = mean_estimate(alpha);
    out.push_back(make_record("size-bias/mean-alpha", c, n, mal.mean, mal.std_error,
                              1.0 / static_cast<double>(schlaefli_count(static_cast<int>(n), c.d + 1))));
  }
  return out;
}

std::vector<Polytope> polar_pi_samples(const ExperimentConfig& c, const std::string& t) {
  return parallel_map(c.reps, c.workers, [&](long r) {
    RngStream rng = replicate_stream(c.seed, t.c_str(), static_cast<std::uint64_t>(r));
    return polar_polytope(Polytope::hull_of(sample_poisson_Pi(c.d, rng), c.d));
  });
}

std::vector<std::vector<double>> features(const std::vector<Polytope>& ps) {
  std::vector<std::vector<double>> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(feature_vector(p));
  return out;
}

std::vector<double> vertex_counts(const std::vector<Polytope>& ps) {
  std::vector<double> out;
  for (const auto& p : ps) out.push_back(static_cast<double>(p.num_vertices()));
  return out;
}

// --- 5 -------------------------------------------------------------------
Records duality_chain(const ExperimentConfig& c) {
  Records out;
  const long n = require_n(c);
  const std::string tp = tag("duality-chain/pn", c, n);
  std::vector<double> bounded;
  std::vector<Polytope> pn;
  {
    auto s = parallel_map(c.reps, c.workers, [&](long r) {
      RngStream rng = replicate_stream(c.seed, tp.c_str(), static_cast<std::uint64_t>(r));
      return sample_Pn_star(static_cast<int>(n), c.d, rng);
    });
    for (auto& x : s) {
      bounded.push_back(1.0 / static_cast<double>(x.attempts));
      pn.push_back(std::move(x.polytope));
    }
  }
  const auto pi_a = polar_pi_samples(c, tag("duality-chain/pi-a", c, n));
  const auto pi_b = polar_pi_samples(c, tag("duality-chain/pi-b", c, n));
  const std::string tz = tag("duality-chain/z0", c, n);
  const double g = gamma_of(c);
  const auto z0 = parallel_map(c.reps, c.workers, [&](long r) {
    RngStream rng = replicate_stream(c.seed, tz.c_str(), static_cast<std::uint64_t>(r));
    return sample_zero_cell(c.d, g, rng);
  });

  RngStream perm_a = replicate_stream(c.seed, "duality-chain/perm-a", 0);
  const EnergyTest ta = energy_test(features(pn), features(pi_a), c.permutations, perm_a);
  out.push_back(make_record("duality-chain/pn-vs-polar-pi-p", c, n, ta.p_value, 0.0, std::nullopt, ta.p_value >= 0.01));
  RngStream perm_b = replicate_stream(c.seed, "duality-chain/perm-b", 0);
  const EnergyTest tb = energy_test(features(z0), features(pi_b), c.permutations, perm_b);
  out.push_back(make_record("duality-chain/z0-vs-polar-pi-p", c, n, tb.p_value, 0.0, std::nullopt, tb.p_value >= 0.01));

  const MeanEstimate mb = mean_estimate(bounded);
  out.push_back(make_record("duality-chain/pn-bounded-fraction", c, n, mb.mean, mb.std_error));
  for (const auto& [name, ps] : {std::pair{"pn", static_cast<const std::vector<Polytope>*>(&pn)}, std::pair{"polar-pi", &pi_a}, std::pair{"z0", &z0}}) {
    const MeanEstimate m = mean_estimate(vertex_counts(*ps));
    out.push_back(make_record(std::string("duality-chain/") + name + "-mean-f0", c, n, m.mean, m.std_error));
  }
  return out;
}

// --- 6 -------------------------------------------------------------------
Records main_theorem(const ExperimentConfig& c) {
  Records out;
  const long n = require_n(c);
  const double g = gamma_of(c);
  const double v0 = c.volume_floor;
  struct Rep {
    Polytope q_first, q_cond, z_first, z_cond;
  };
  const std::string tq = tag("main-theorem/qn", c, n), tz = tag("main-theorem/typical", c, n);
  constexpr long kCap = 100000;
  const auto reps = parallel_map(c.reps, c.workers, [&](long r) {
    RngStream rq = replicate_stream(c.seed, tq.c_str(), static_cast<std::uint64_t>(r));
    Polytope q_first = sample_Qn_star(static_cast<int>(n), c.d, rq).polytope;
    std::optional<Polytope> q_cond;
    if (q_first.volume() >= v0) q_cond = q_first;
    for (long i = 0; !q_cond; ++i) {
      if (i > kCap) throw Error(ErrorKind::kIterationCap, "main-theorem: Q_n volume conditioning");
      Polytope q = sample_Qn_star(static_cast<int>(n), c.d, rq).polytope;
      if (q.volume() >= v0) q_cond = std::move(q);
    }
    // Typical cell given vol >= v0, exactly: Z_0 accepted with probability v0 / vol.
    RngStream rz = replicate_stream(c.seed, tz.c_str(), static_cast<std::uint64_t>(r));
    Polytope z_first = sample_zero_cell(c.d, g, rz);
    std::optional<Polytope> z_cond;
    const Polytope* cand = &z_first;
    std::optional<Polytope> fresh;
    for (long i = 0;; ++i) {
      if (i > kCap) throw Error(ErrorKind::kIterationCap, "main-theorem: typical cell conditioning");
      const double vol = cand->volume();
      if (vol >= v0 && rz.uniform() < v0 / vol) {
        z_cond = *cand;
        break;
      }
      fresh = sample_zero_cell(c.d, g, rz);
      cand = &*fresh;
    }
    return Rep{std::move(q_first), std::move(*q_cond), std::move(z_first), std::move(*z_cond)};
  });

  std::vector<double> qf0, zf0w, zw, ones, qarea;
  std::vector<Polytope> qc, zc;
  for (const auto& x : reps) {
    qf0.push_back(static_cast<double>(x.q_first.num_vertices()));
    qarea.push_back(x.q_first.volume());
    const double w = 1.0 / x.z_first.volume();
    zw.push_back(w);
    zf0w.push_back(w * static_cast<double>(x.z_first.num_vertices()));
    ones.push_back(1.0);
    qc.push_back(x.q_cond);
    zc.push_back(x.z_cond);
  }
  const double f0_target = std::ldexp(1.0, c.d);  // 2^{d-k} binom(d, k) at k = 0
  const MeanEstimate mq = mean_estimate(qf0);
  out.push_back(make_record("main-theorem/qn-mean-f0", c, n, mq.mean, mq.std_error, f0_target));
  // E_Z f0 = (d+1) + c_d E_{Z_0}[(f0 - (d+1)) / vol]: importance weights with the
  // exact normalizer and the minimal vertex count as control variate. Tiny
  // cells are simplices, so this removes the heaviest part of the 1/vol tail.
  std::vector<double> cv;
  const double scale_cd = c_d(c.d) * std::pow(intensity_gamma(c.d) / g, c.d);
  for (std::size_t i = 0; i < zw.size(); ++i) cv.push_back(scale_cd * (zf0w[i] - (c.d + 1) * zw[i]));
  const MeanEstimate mcv = mean_estimate(cv);
  out.push_back(make_record("main-theorem/typical-mean-f0", c, n, c.d + 1 + mcv.mean, mcv.std_error, f0_target));
  const MeanEstimate mz = ratio_estimate(zf0w, zw);
  out.push_back(make_record("main-theorem/typical-mean-f0-selfnormalized", c, n, mz.mean, mz.std_error));
  // Mean area of Z: N / sum(1/vol Z_0), scaled for a non-default intensity.
  const MeanEstimate ma = ratio_estimate(ones, zw);
  const double area_target = scale_cd;
  ExperimentConfig three = c;
  three.k = 3.0;
  out.push_back(make_record("main-theorem/typical-mean-area", three, n, ma.mean, ma.std_error, area_target));
  RngStream perm = replicate_stream(c.seed, "main-theorem/perm", 0);
  const EnergyTest t = energy_test(features(qc), features(zc), c.permutations, perm);
  out.push_back(make_record("main-theorem/energy-p", c, n, t.p_value, 0.0, std::nullopt, t.p_value >= 0.01));
  const MeanEstimate mqa = mean_estimate(qarea);
  out.push_back(make_record("main-theorem/qn-mean-area", c, n, mqa.mean, mqa.std_error));
  return out;
}

// --- 7 -------------------------------------------------------------------
CoordinateRep rotated_square(double angle) {
  std::vector<Vec> pts;
  for (int i = 0; i < 4; ++i) {
    const double a = angle + M_PI / 4 + i * M_PI / 2;
    Vec v(2);
    v << std::sqrt(2.0) * std::cos(a), std::sqrt(2.0) * std::sin(a);
    pts.push_back(v);
  }
  return CoordinateRep::from_points(pts);
}

Records density_convergence(const ExperimentConfig& c) {
  Records out;
  if (c.d != 2 && c.d != 3) throw Error(ErrorKind::kConfigError, "config.d: density-convergence needs d in {2,3}");
  if (c.d == 2) {
    const CoordinateRep x = rotated_square(0.2);
    const double dev = std::fabs(std::expm1(eval_phi_n(x, c.pointwise_n).log_value - eval_phi(x).log_value));
    out.push_back(make_record("density-convergence/pointwise", c, c.pointwise_n, dev, 0.0, std::nullopt, dev <= 1e-2));
  }
  const std::string t = "density-convergence/l1/d" + std::to_string(c.d);
  const auto terms = parallel_map(c.reps, c.workers, [&](long r) {
    RngStream rng = replicate_stream(c.seed, t.c_str(), static_cast<std::uint64_t>(r));
    const CoordinateRep x = coordinate_representation(Polytope::hull_of(sample_poisson_Pi(c.d, rng), c.d));
    const double lphi = eval_phi(x).log_value;
    std::vector<double> v;
    for (long n : c.n) v.push_back(n >= x.m() ? std::fabs(std::expm1(eval_phi_n(x, n).log_value - lphi)) : 1.0);
    return v;
  });
  std::vector<double> est;
  for (std::size_t k = 0; k < c.n.size(); ++k) {
    std::vector<double> col;
    for (const auto& v : terms) col.push_back(v[k]);
    const MeanEstimate m = mean_estimate(col);
    const long n = c.n[k];
    const double wendel_term =
        n > 2000 ? 0.0 : std::ldexp(static_cast<double>(schlaefli_count(static_cast<int>(n), c.d)), -static_cast<int>(n));
    est.push_back(m.mean + wendel_term);
    out.push_back(make_record("density-convergence/l1", c, n, m.mean + wendel_term, m.std_error));
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < est.size(); ++k) decreasing = decreasing && est[k] < est[k - 1];
  out.push_back(make_record("density-convergence/l1-decreasing", c, 0, decreasing ? 1.0 : 0.0, 0.0, 1.0, decreasing));
  return out;
}

// --- 8 -------------------------------------------------------------------
Records closed_form(const ExperimentConfig& c) {
  Records out;
  auto exact = [&](const std::string& name, double value, double target, double tol) {
    out.push_back(make_record(name, c, 0, value, 0.0, target, std::fabs(value - target) <= tol));
  };
  for (double r : {0.5, 1.0, 2.0}) {
    const double v = exterior_inverse_power_integral([r](double) { return r; }).value;
    exact("closed-form/exterior-disc-r" + std::to_string(static_cast<int>(r * 10)), v, 2 * M_PI / r, 1e-9);
  }
  std::vector<Vec> sq;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1}) {
      Vec v(2);
      v << sx, sy;
      sq.push_back(v);
    }
  exact("closed-form/exterior-square", exterior_inverse_power_integral(Polytope::from_vertices(sq, 2)).value,
        4 * std::sqrt(2.0), 1e-9);
  for (int d = 1; d <= 3; ++d) {
    Vec u = Vec::Zero(d);
    u(0) = 1.0;
    exact("closed-form/pc-half-space-d" + std::to_string(d), pc_beta_prime(HalfSpace{u, 0.0}), 0.5, 0.0);
  }
  double dev1 = 0.0, dev2 = 0.0;
  for (int d = 1; d <= 10; ++d) {
    const double lf = log_factorial(d);
    const double rhs = std::exp((d + 1) * std::log(2.0) + d * std::log(M_PI) - lf);
    dev1 = std::max(dev1, std::fabs(kappa(d) * omega(d + 1) / rhs - 1.0));
    dev2 = std::max(dev2, std::fabs(2 * c_d(d) / (std::exp(lf) * omega(d + 1)) - 1.0));
  }
  exact("closed-form/kappa-omega-identity", dev1, 0.0, 1e-12);
  exact("closed-form/c_d-identity", dev2, 0.0, 1e-12);
  return out;
}

// --- 9 -------------------------------------------------------------------
Records beta_prime_limit(const ExperimentConfig& c) {
  Records out;
  const long n = require_n(c);
  const std::string ta = tag("beta-prime-limit/cauchy", c, n), tb = tag("beta-prime-limit/pi", c, n);
  const auto a = parallel_map(c.reps, c.workers, [&](long r) {
    RngStream rng = replicate_stream(c.seed, ta.c_str(), static_cast<std::uint64_t>(r));
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) pts.push_back(sample_cauchy_point(c.d, rng) / static_cast<double>(n));
    return static_cast<double>(Polytope::hull_of(pts, c.d).num_vertices());
  });
  const auto b = parallel_map(c.reps, c.workers, [&](long r) {
    RngStream rng = replicate_stream(c.seed, tb.c_str(), static_cast<std::uint64_t>(r));
    return static_cast<double>(Polytope::hull_of(sample_poisson_Pi(c.d, rng), c.d).num_vertices());
  });
  std::vector<std::vector<double>> fa, fb;
  for (double x : a) fa.push_back({x});
  for (double x : b) fb.push_back({x});
  RngStream perm = replicate_stream(c.seed, "beta-prime-limit/perm", 0);
  const EnergyTest t = energy_test(fa, fb, c.permutations, perm);
  out.push_back(make_record("beta-prime-limit/energy-p", c, n, t.p_value, 0.0, std::nullopt, t.p_value >= 0.01));
  const MeanEstimate ma = mean_estimate(a), mb = mean_estimate(b);
  out.push_back(make_record("beta-prime-limit/cauchy-mean-f0", c, n, ma.mean, ma.std_error));
  out.push_back(make_record("beta-prime-limit/pi-mean-f0", c, n, mb.mean, mb.std_error));
  return out;
}

using Runner = Records (*)(const ExperimentConfig&);

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"cone-count", cone_count},       {"face-formula", face_formula},
      {"wendel", wendel},               {"size-bias", size_bias},
      {"duality-chain", duality_chain}, {"main-theorem", main_theorem},
      {"density-convergence", density_convergence}, {"closed-form", closed_form},
      {"beta-prime-limit", beta_prime_limit},
  };
  return r;
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
  const auto it = registry().find(cfg.experiment);
  if (it == registry().end()) throw Error(ErrorKind::kConfigError, "config.experiment: unknown '" + cfg.experiment + "'");
  const auto t0 = std::chrono::steady_clock::now();
  Records rs = it->second(cfg);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (auto& r : rs) r.runtime_ms = ms;
  return rs;
}

}  // namespace conehull
