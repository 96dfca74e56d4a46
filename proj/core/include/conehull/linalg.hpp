#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

namespace conehull {

// Ambient dimensions above this are rejected; Monte Carlo paths are the only
// ones that go past 4 anyway.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;

// Sign predicates on unit-normalized quantities.
inline constexpr double kSignEps = 1e-12;
// Comparisons of reconstructed coordinates (round trips, vertex matching).
inline constexpr double kCoordEps = 1e-9;

inline int sign_of(double x, double eps = kSignEps) {
  return x > eps ? 1 : (x < -eps ? -1 : 0);
}

// Vector c with <c, x> = det[v_1; ...; v_{D-1}; x]. Orthogonal to every v_i;
// zero iff the v_i are linearly dependent.
Vec generalized_cross(const std::vector<Vec>& vs);

// Orthonormal basis of the orthogonal complement of span(vs) in R^dim, plus the
// rank of vs. Columns of the returned matrix are the basis vectors.
struct ComplementResult {
  Mat complement;  // dim x (dim - rank)
  Mat range;       // dim x rank, orthonormal basis of span(vs)
  int rank = 0;
};
ComplementResult orthogonal_complement(const std::vector<Vec>& vs, int dim,
                                       double tol = kSignEps);

// Orthonormal basis (columns) of v^perp for a unit v.
Mat perp_basis(const Vec& v);

inline double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Exact binomial; overflows silently past 2^64, callers keep n small.
std::uint64_t binomial_u64(int n, int k);

}  // namespace conehull
