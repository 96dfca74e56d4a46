#include "conehull/densities.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "conehull/arrangement.hpp"
#include "conehull/errors.hpp"
#include "conehull/samplers.hpp"

namespace conehull {
namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

bool origin_interior(const Polytope& p) {
  for (const auto& f : p.facets())
    if (!(f.offset > 0)) return false;
  return true;
}

// Edge of a counter-clockwise polygon seen from the origin: distance h of its
// line and the signed angles of its endpoints from the foot of the
// perpendicular. The signed sum over edges of any angular integral bounded by
// the edge reproduces the integral over the polygon, wherever the origin is.
struct EdgeView {
  double h = 0.0;
  double psi_a = 0.0;
  double psi_b = 0.0;
  bool degenerate = true;
};

EdgeView edge_view(const Vec& a, const Vec& b) {
  EdgeView e;
  const Vec ab = b - a;
  const double t = -a.dot(ab) / ab.squaredNorm();
  const Vec foot = a + t * ab;
  e.h = foot.norm();
  if (!(e.h > 1e-300)) return e;
  const Vec u = foot / e.h;
  auto psi = [&](const Vec& x) { return std::atan2(u(0) * x(1) - u(1) * x(0), u.dot(x)); };
  e.psi_a = psi(a);
  e.psi_b = psi(b);
  e.degenerate = false;
  return e;
}

std::vector<EdgeView> edge_views(const Polytope& p) {
  std::vector<EdgeView> out;
  for (const auto& f : p.facets()) out.push_back(edge_view(p.vertices()[f.vertices[0]], p.vertices()[f.vertices[1]]));
  return out;
}

// Degree-5, 7-point rule on triangles, refined adaptively by 4-way splits.
struct TriRule {
  static constexpr double w[3] = {0.225, 0.132394152788506, 0.125939180544827};
  static constexpr double a1 = 0.059715871789770, b1 = 0.470142064105115;
  static constexpr double a2 = 0.797426985353087, b2 = 0.101286507323456;
};

template <class F>
double tri_rule(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c, const F& f) {
  const double area = 0.5 * (b - a).cross(c - a).norm();
  auto at = [&](double x, double y, double z) { return f(x * a + y * b + z * c); };
  double s = TriRule::w[0] * at(1.0 / 3, 1.0 / 3, 1.0 / 3);
  s += TriRule::w[1] * (at(TriRule::a1, TriRule::b1, TriRule::b1) + at(TriRule::b1, TriRule::a1, TriRule::b1) +
                        at(TriRule::b1, TriRule::b1, TriRule::a1));
  s += TriRule::w[2] * (at(TriRule::a2, TriRule::b2, TriRule::b2) + at(TriRule::b2, TriRule::a2, TriRule::b2) +
                        at(TriRule::b2, TriRule::b2, TriRule::a2));
  return area * s;
}

template <class F>
double tri_adapt(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c, const F& f,
                 double coarse, double tol, int depth, double* err) {
  const Eigen::Vector3d ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  const double t1 = tri_rule(a, ab, ca, f), t2 = tri_rule(ab, b, bc, f);
  const double t3 = tri_rule(ca, bc, c, f), t4 = tri_rule(ab, bc, ca, f);
  const double fine = t1 + t2 + t3 + t4;
  const double diff = std::fabs(fine - coarse);
  if (diff <= tol || depth >= 12) {
    *err += diff / 63.0;  // Richardson estimate for an O(h^6) rule
    return fine;
  }
  return tri_adapt(a, ab, ca, f, t1, tol / 4, depth + 1, err) + tri_adapt(ab, b, bc, f, t2, tol / 4, depth + 1, err) +
         tri_adapt(ca, bc, c, f, t3, tol / 4, depth + 1, err) + tri_adapt(ab, bc, ca, f, t4, tol / 4, depth + 1, err);
}

// ∫ over the boundary facets of p of f(x) dA(x); each facet fanned from its
// first vertex. f receives the point and the facet offset.
template <class F>
Estimate facet_integral(const Polytope& p, const F& f, double tol) {
  Estimate out;
  for (const auto& fc : p.facets()) {
    const double h = fc.offset;
    const auto& vs = fc.vertices;
    const Eigen::Vector3d a = p.vertices()[vs[0]].head<3>();
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
      const Eigen::Vector3d b = p.vertices()[vs[i]].head<3>();
      const Eigen::Vector3d c = p.vertices()[vs[i + 1]].head<3>();
      auto g = [&](const Eigen::Vector3d& x) { return f(x, h); };
      out.value += tri_adapt(a, b, c, g, tri_rule(a, b, c, g), tol, 0, &out.error);
    }
  }
  return out;
}

}  // namespace

CoordinateRep CoordinateRep::from_points(std::vector<Vec> points) {
  if (points.empty()) throw Error(ErrorKind::kInvalidArgument, "CoordinateRep: no points");
  const int d = static_cast<int>(points.front().size());
  if (static_cast<int>(points.size()) < d + 1) throw Error(ErrorKind::kInvalidArgument, "CoordinateRep: need m >= d+1");
  Polytope p = Polytope::from_vertices(std::move(points), d);
  if (p.has_tied_first_coordinates())
    throw Error(ErrorKind::kTiedFirstCoordinate, "CoordinateRep: first coordinates must be strictly increasing");
  std::vector<Vec> pts = p.vertices();
  return CoordinateRep(std::move(pts), std::move(p));
}

CoordinateRep coordinate_representation(const Polytope& p) { return CoordinateRep::from_points(p.vertices()); }

double pc_beta_prime(const FullSpace&) { return 1.0; }

double pc_beta_prime(const Ball& b) {
  if (!(b.radius >= 0)) throw Error(ErrorKind::kInvalidArgument, "pc: negative radius");
  if (b.radius == 0) return 0.0;
  // |X|^2 / (1 + |X|^2) ~ Beta(d/2, 1/2).
  const double r2 = b.radius * b.radius;
  return boost::math::ibeta(b.d / 2.0, 0.5, r2 / (1.0 + r2));
}

double pc_beta_prime(const HalfSpace& h) {
  // The marginal of the d-dimensional Cauchy law along a unit vector is the
  // standard 1-dimensional Cauchy law.
  if (h.offset == 0.0) return 0.5;
  return 0.5 + std::atan(h.offset) / M_PI;
}

Estimate pc_beta_prime(const Polytope& p, PcMode mode, RngStream* rng, long samples) {
  const int d = p.dim();
  if (mode == PcMode::kMonteCarlo) {
    if (!rng || samples <= 0) throw Error(ErrorKind::kInvalidArgument, "pc: Monte Carlo needs rng and samples");
    long hit = 0;
    for (long i = 0; i < samples; ++i)
      if (p.contains(sample_cauchy_point(d, *rng), 0.0)) ++hit;
    const double q = static_cast<double>(hit) / static_cast<double>(samples);
    return {q, std::sqrt(q * (1 - q) / static_cast<double>(samples))};
  }
  if (d == 1) return {(std::atan(p.vertices().back()(0)) - std::atan(p.vertices().front()(0))) / M_PI, 0.0};
  if (d == 2 && mode == PcMode::kExact) {
    double s = 0.0;
    for (const auto& e : edge_views(p)) {
      if (e.degenerate) continue;
      const double q = std::sqrt(1.0 + e.h * e.h);
      s += (e.psi_b - e.psi_a) - (std::asin(std::sin(e.psi_b) / q) - std::asin(std::sin(e.psi_a) / q));
    }
    return {s / (2.0 * M_PI), 0.0};
  }
  if (!origin_interior(p)) throw Error(ErrorKind::kOriginNotInterior, "pc quadrature: origin must be interior");
  if (d == 2) {
    Estimate out;
    for (const auto& e : edge_views(p)) {
      const double h2 = e.h * e.h;
      double err = 0.0;
      out.value += GK::integrate(
          [&](double psi) {
            const double c = std::cos(psi);
            return 1.0 - c / std::sqrt(c * c + h2);
          },
          e.psi_a, e.psi_b, 15, 1e-13, &err);
      out.error += err;
    }
    out.value /= 2.0 * M_PI;
    out.error /= 2.0 * M_PI;
    return out;
  }
  const Estimate c = pc_complement_scaled(p, 1.0);
  return {1.0 - c.value, c.error};
}

Estimate pc_complement_scaled(const Polytope& p, double n) {
  const int d = p.dim();
  if (d == 2) {
    if (!origin_interior(p)) {
      const Estimate pc = pc_beta_prime(p.scaled(n), PcMode::kExact);
      return {1.0 - pc.value, 0.0};
    }
    double s = 0.0;
    for (const auto& e : edge_views(p)) {
      const double q = std::sqrt(1.0 + n * n * e.h * e.h);
      s += std::asin(std::sin(e.psi_b) / q) - std::asin(std::sin(e.psi_a) / q);
    }
    return {s / (2.0 * M_PI), 0.0};
  }
  if (d == 3) {
    if (!origin_interior(p)) throw Error(ErrorKind::kOriginNotInterior, "pc complement (d=3): origin must be interior");
    const double w4 = omega(4);
    auto f = [&](const Eigen::Vector3d& x, double h) {
      const double r = x.norm();
      const double a = n * r;
      return h / (r * r * r) * (M_PI / 2 - std::atan(a) + a / (1.0 + a * a)) / w4;
    };
    return facet_integral(p, f, 1e-13);
  }
  if (d == 1) return {1.0 - pc_beta_prime(p.scaled(n), PcMode::kExact).value, 0.0};
  throw Error(ErrorKind::kInvalidArgument, "pc complement: d must be 1..3");
}

Estimate exterior_inverse_power_integral(const Polytope& p) {
  if (!origin_interior(p)) throw Error(ErrorKind::kOriginNotInterior, "exterior integral: origin must be interior");
  const int d = p.dim();
  if (d == 2) {
    double s = 0.0;
    for (const auto& e : edge_views(p)) s += (std::sin(e.psi_b) - std::sin(e.psi_a)) / e.h;
    return {s, 0.0};
  }
  if (d == 3) {
    auto f = [](const Eigen::Vector3d& x, double h) {
      const double r2 = x.squaredNorm();
      return h / (r2 * r2);
    };
    return facet_integral(p, f, 1e-12);
  }
  throw Error(ErrorKind::kInvalidArgument, "exterior integral: d must be 2 or 3");
}

Estimate exterior_inverse_power_integral(const std::function<double(double)>& rho) {
  Estimate out;
  out.value = GK::integrate([&](double t) { return 1.0 / rho(t); }, 0.0, 2.0 * M_PI, 15, 1e-14, &out.error);
  return out;
}

DensityValue eval_phi(const CoordinateRep& x) {
  const int d = x.dim();
  const Polytope& p = x.polytope();
  DensityValue out;
  if (!origin_interior(p)) {
    out.origin_interior = false;
    return out;
  }
  const double c = 2.0 / omega(d + 1);
  const Estimate e = exterior_inverse_power_integral(p);
  double lg = x.m() * std::log(c) - c * e.value;
  for (const auto& v : x.points()) lg -= (d + 1) * std::log(v.norm());
  out.log_value = lg;
  out.value = std::exp(lg);
  out.quadrature_error = e.error;
  return out;
}

DensityValue eval_phi_n(const CoordinateRep& x, long n) {
  const int d = x.dim();
  const int m = x.m();
  if (n < m) throw Error(ErrorKind::kInvalidArgument, "eval_phi_n: n < m");
  const double nd = static_cast<double>(n);
  const double c = 2.0 / omega(d + 1);
  double lg = std::lgamma(nd + 1.0) - std::lgamma(nd - m + 1.0);
  for (const auto& v : x.points()) lg += d * std::log(nd) + std::log(c) - 0.5 * (d + 1) * std::log1p(nd * nd * v.squaredNorm());
  const Estimate ext = pc_complement_scaled(x.polytope(), nd);
  DensityValue out;
  out.origin_interior = origin_interior(x.polytope());
  if (n > m) lg += static_cast<double>(n - m) * std::log1p(-ext.value);
  out.log_value = lg;
  out.value = std::exp(lg);
  out.quadrature_error = ext.error;
  return out;
}

double size_bias_weight(const PolyhedralCone& cone, int n, int d) {
  return static_cast<double>(schlaefli_count(n, d + 1)) * solid_angle(cone).value;
}

double size_bias_weight_from_profile(const Polytope& scaled_profile, int n, int d) {
  const Estimate pc = pc_beta_prime(scaled_profile.scaled(1.0 / n), d == 2 ? PcMode::kExact : PcMode::kQuadrature);
  return 0.5 * static_cast<double>(schlaefli_count(n, d + 1)) * pc.value;
}

double limit_density_factor(const Polytope& p, int d) {
  const double vol = p.volume();
  if (!(vol > 0)) throw Error(ErrorKind::kZeroVolume, "limit_density_factor: zero volume");
  return std::exp(log_factorial(d)) * omega(d + 1) / (2.0 * vol);
}

double typical_over_zero_density(const Polytope& p, int d) {
  const double vol = p.volume();
  if (!(vol > 0)) throw Error(ErrorKind::kZeroVolume, "typical_over_zero_density: zero volume");
  return c_d(d) / vol;
}

std::vector<L1Estimate> l1_distance(int d, const std::vector<long>& ns, long samples, RngStream& rng) {
  std::vector<double> sum(ns.size(), 0.0), sum2(ns.size(), 0.0);
  for (long s = 0; s < samples; ++s) {
    const Polytope hull = Polytope::hull_of(sample_poisson_Pi(d, rng), d);
    const CoordinateRep x = coordinate_representation(hull);
    const DensityValue phi = eval_phi(x);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      double t = 1.0;
      if (ns[k] >= x.m()) t = std::fabs(std::expm1(eval_phi_n(x, ns[k]).log_value - phi.log_value));
      sum[k] += t;
      sum2[k] += t * t;
    }
  }
  std::vector<L1Estimate> out;
  const double ns_d = static_cast<double>(samples);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    L1Estimate e;
    e.n = ns[k];
    const double mean = sum[k] / ns_d;
    const double var = std::max(0.0, sum2[k] / ns_d - mean * mean) * ns_d / std::max(1.0, ns_d - 1);
    e.wendel_term = std::ldexp(static_cast<double>(schlaefli_count(static_cast<int>(ns[k]), d)), -static_cast<int>(std::min<long>(ns[k], 100000)));
    e.estimate = mean + e.wendel_term;
    e.std_error = std::sqrt(var / ns_d);
    out.push_back(e);
  }
  return out;
}

}  // namespace conehull
