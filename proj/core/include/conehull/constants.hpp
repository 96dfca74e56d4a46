#pragma once

namespace conehull {

// omega_d: surface area of S^{d-1} ⊂ R^d. kappa_d: volume of the unit d-ball.
double omega(int d);
double kappa(int d);
// Intensity of the stationary isotropic hyperplane process whose typical cell
// is the weak limit: Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)) = omega_d / omega_{d+1}.
double gamma_intensity(int d);
// (1/kappa_d) (omega_{d+1} / kappa_{d-1})^d = E vol(Z).
double c_d(int d);
double log_factorial(int n);

struct Constants {
  int d;
  double omega;  // omega_d
  double kappa;  // kappa_d
  double gamma_intensity;
  double c_d;
  static Constants of(int d);
};

}  // namespace conehull
