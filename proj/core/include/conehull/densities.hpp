#pragma once

#include <functional>
#include <vector>

#include "conehull/constants.hpp"
#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"

namespace conehull {

// Polytope vertices with strictly increasing first coordinates, in convex
// position, m >= d + 1.
class CoordinateRep {
 public:
  // Sorts; TiedFirstCoordinate on exact ties, InvalidArgument if not in
  // convex position.
  static CoordinateRep from_points(std::vector<Vec> points);
  int m() const { return static_cast<int>(points_.size()); }
  int dim() const { return static_cast<int>(points_.front().size()); }
  const std::vector<Vec>& points() const { return points_; }
  const Polytope& polytope() const { return polytope_; }

 private:
  CoordinateRep(std::vector<Vec> pts, Polytope p) : points_(std::move(pts)), polytope_(std::move(p)) {}
  std::vector<Vec> points_;
  Polytope polytope_;
};

CoordinateRep coordinate_representation(const Polytope& p);

struct Ball {
  double radius;
  int d;
};
// {x : <normal, x> <= offset}, normal a unit vector.
struct HalfSpace {
  Vec normal;
  double offset;
};
struct FullSpace {
  int d;
};

enum class PcMode { kExact, kQuadrature, kMonteCarlo };

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate or Monte Carlo standard error
};

// Beta-prime (Cauchy) probability content (2/omega_{d+1}) ∫ (1+|x|^2)^{-(d+1)/2}.
double pc_beta_prime(const FullSpace& r);
double pc_beta_prime(const Ball& b);
double pc_beta_prime(const HalfSpace& h);
// kExact: d=2 polygons (per-edge closed form, origin anywhere);
// kQuadrature: directional quadrature (origin interior; d=2 Gauss-Kronrod,
// d=3 adaptive facet-triangle rule); kMonteCarlo: needs rng and samples.
Estimate pc_beta_prime(const Polytope& p, PcMode mode = PcMode::kExact, RngStream* rng = nullptr,
                       long samples = 0);
// 1 - PC(n P), computed without cancellation.
Estimate pc_complement_scaled(const Polytope& p, double n);

// ∫_{R^d \ P} |y|^{-(d+1)} dy = ∫_{S^{d-1}} 1/rho_P(u) du. d=2 exact per
// edge, d=3 adaptive quadrature. OriginNotInterior otherwise.
Estimate exterior_inverse_power_integral(const Polytope& p);
// d = 2 star body given by its radial function rho(theta).
Estimate exterior_inverse_power_integral(const std::function<double(double)>& rho);

struct DensityValue {
  double value = 0.0;
  double log_value = -INFINITY;
  bool origin_interior = true;
  double quadrature_error = 0.0;
};

// phi(x) = (2/omega_{d+1})^m prod |x_i|^{-(d+1)} exp(-(2/omega_{d+1}) E(conv x));
// zero (flagged) when 0 is not interior to conv x.
DensityValue eval_phi(const CoordinateRep& x);
// phi_n(x) = n!/(n-m)! prod n^d f(n x_i) * PC(n conv x)^{n-m}. InvalidArgument if n < m.
DensityValue eval_phi_n(const CoordinateRep& x, long n);

// C(n, d+1) * alpha(cone) = d mu_{S_n^{-e}} / d mu_{O_u S_n}.
double size_bias_weight(const PolyhedralCone& cone, int n, int d);
// The same weight from a profile at -e scaled by n: (1/2) C(n,d+1) PC(K/n).
double size_bias_weight_from_profile(const Polytope& scaled_profile, int n, int d);
// d! omega_{d+1} / (2 vol p). ZeroVolume if vol p <= 0.
double limit_density_factor(const Polytope& p, int d);
// d mu_Z / d mu_{Z_0} (p) = c_d / vol p.
double typical_over_zero_density(const Polytope& p, int d);

struct L1Estimate {
  long n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double wendel_term = 0.0;  // ∫ phi_n over {0 not interior}, where phi = 0
};
// ∫ |phi_n - phi| dmu = E_phi |phi_n/phi - 1| + P(0 not in int T_n), with one
// set of samples from conv(Π) shared by every n (common random numbers).
std::vector<L1Estimate> l1_distance(int d, const std::vector<long>& ns, long samples, RngStream& rng);

}  // namespace conehull
