#include "conehull/linalg.hpp"

#include "conehull/errors.hpp"

namespace conehull {

Vec generalized_cross(const std::vector<Vec>& vs) {
  const int dim = static_cast<int>(vs.size()) + 1;
  if (dim < 2 || dim > kMaxDim) throw Error(ErrorKind::kInvalidArgument, "generalized_cross: bad size");
  for (const auto& v : vs)
    if (v.size() != dim) throw Error(ErrorKind::kInvalidArgument, "generalized_cross: dimension mismatch");
  Vec c(dim);
  if (dim == 2) {
    c << -vs[0](1), vs[0](0);
    return c;
  }
  if (dim == 3) {
    c = vs[0].head<3>().cross(vs[1].head<3>());
    return c;
  }
  Mat m(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) m.row(i) = vs[i].transpose();
  for (int k = 0; k < dim; ++k) {
    m.row(dim - 1).setZero();
    m(dim - 1, k) = 1.0;
    c(k) = m.determinant();
  }
  return c;
}

ComplementResult orthogonal_complement(const std::vector<Vec>& vs, int dim, double tol) {
  ComplementResult out;
  if (vs.empty()) {
    out.complement = Mat::Identity(dim, dim);
    out.range = Mat(dim, 0);
    return out;
  }
  Eigen::MatrixXd a(dim, static_cast<Eigen::Index>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = vs[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  int rank = 0;
  const double scale = s.size() > 0 ? std::max(1.0, s(0)) : 1.0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * scale * 1e3) ++rank;
  out.rank = rank;
  out.range = svd.matrixU().leftCols(rank);
  out.complement = svd.matrixU().rightCols(dim - rank);
  return out;
}

Mat perp_basis(const Vec& v) {
  std::vector<Vec> vs{v};
  return orthogonal_complement(vs, static_cast<int>(v.size())).complement;
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

}  // namespace conehull
