#include "conehull/constants.hpp"

#include <cmath>

#include "conehull/errors.hpp"

namespace conehull {

double omega(int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "omega: d >= 1");
  return 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
}

double kappa(int d) {
  if (d < 0) throw Error(ErrorKind::kInvalidArgument, "kappa: d >= 0");
  return std::pow(M_PI, d / 2.0) / std::tgamma(1.0 + d / 2.0);
}

double gamma_intensity(int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "gamma: d >= 1");
  return std::tgamma((d + 1) / 2.0) / (std::sqrt(M_PI) * std::tgamma(d / 2.0));
}

double c_d(int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidArgument, "c_d: d >= 1");
  return std::pow(omega(d + 1) / kappa(d - 1), d) / kappa(d);
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

Constants Constants::of(int d) {
  return {d, conehull::omega(d), conehull::kappa(d), conehull::gamma_intensity(d), conehull::c_d(d)};
}

}  // namespace conehull
