#pragma once

#include <cstddef>
#include <vector>

#include "conehull/rng.hpp"

namespace conehull {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

MeanEstimate mean_estimate(const std::vector<double>& xs);

// Self-normalized ratio sum(num) / sum(den) with a delta-method standard error.
MeanEstimate ratio_estimate(const std::vector<double>& num, const std::vector<double>& den);

// Standard error of the difference of two per-replicate paired quantities,
// i.e. mean_estimate of (a_i - b_i) when paired, or the root-sum-of-squares
// of the separate errors when independent.
double joint_std_error(const MeanEstimate& a, const MeanEstimate& b);

// Energy distance between two samples of feature vectors after pooled
// standardization of each coordinate; permutation p-value with the usual +1
// correction.
struct EnergyTest {
  double statistic = 0.0;
  double p_value = 1.0;
  int permutations = 0;
};

EnergyTest energy_test(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                       int permutations, RngStream& rng);

// Two-sample Kolmogorov–Smirnov statistic and asymptotic p-value.
struct KsTest {
  double statistic = 0.0;
  double p_value = 1.0;
};
KsTest ks_two_sample(std::vector<double> a, std::vector<double> b);
KsTest ks_uniform(std::vector<double> xs);
double kolmogorov_sf(double lambda);

// Pearson chi-square of observed counts against expected probabilities.
struct ChiSquareTest {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};
ChiSquareTest chi_square_test(const std::vector<long>& observed, const std::vector<double>& probabilities);

// Two-sample chi-square homogeneity test on integer-valued data; cells with
// fewer than five pooled observations are merged into their neighbour.
ChiSquareTest chi_square_homogeneity(const std::vector<long>& a, const std::vector<long>& b);

}  // namespace conehull
