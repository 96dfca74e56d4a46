#include "conehull/profiles.hpp"

#include <cmath>

#include "conehull/errors.hpp"

namespace conehull {
namespace {

constexpr long kProfileAttemptCap = 100'000;

}  // namespace

TangentFrame::TangentFrame(const UnitVector& v) : base_(v) {
  const int dim = v.ambient_dim();
  if (std::fabs(v.coords().norm() - 1.0) > kSignEps) throw Error(ErrorKind::kSingularFrame, "tangent_frame: not a unit vector");
  Vec w = v.coords();
  w(dim - 1) += 1.0;
  const double len = w.norm();
  rotation_ = Mat::Identity(dim, dim);
  if (len > kSignEps) {
    w /= len;
    rotation_ -= 2.0 * w * w.transpose();
  }
  basis_ = rotation_.leftCols(dim - 1);
}

Vec TangentFrame::to_tangent(const Vec& x) const { return basis_.transpose() * (x - base_.coords()); }

Vec TangentFrame::from_tangent(const Vec& y) const { return base_.coords() + basis_ * y; }

TangentFrame tangent_frame(const UnitVector& v) { return TangentFrame(v); }

Profile profile(const PolyhedralCone& cone, const UnitVector& v, double scale) {
  if (!(scale > 0)) throw Error(ErrorKind::kInvalidArgument, "profile: scale must be positive");
  if (!cone.contains(v.coords())) throw Error(ErrorKind::kInvalidArgument, "profile: base direction not in the cone");
  Profile out;
  out.scale = scale;
  if (!cone.pointed()) return out;
  const TangentFrame frame(v);
  std::vector<Vec> verts;
  for (const auto& r : cone.generators().rays) {
    const double t = r.direction.coords().dot(v.coords());
    if (!(t > kSignEps)) return out;
    verts.push_back(scale * frame.to_tangent(r.direction.coords() / t));
  }
  out.polytope = Polytope::from_vertices(std::move(verts), frame.dim());
  out.bounded = true;
  return out;
}

ProfileSample sample_Pn_star(int n, int d, RngStream& rng) {
  const UnitVector south = UnitVector::from_unit(-north_pole(d));
  for (long attempt = 1; attempt <= kProfileAttemptCap; ++attempt) {
    const ConeSample s = sample_s_minus_e(n, d, rng);
    Profile p = profile(*s.cone, south, static_cast<double>(n));
    if (p.bounded)
      return {std::move(*p.polytope), attempt, static_cast<long>(s.cone->generators().rays.size())};
  }
  throw Error(ErrorKind::kIterationCap, "sample_Pn_star: no bounded profile");
}

ProfileSample sample_Qn_star(int n, int d, RngStream& rng, QnConstruction how) {
  const UnitVector south = UnitVector::from_unit(-north_pole(d));
  for (long attempt = 1; attempt <= kProfileAttemptCap; ++attempt) {
    const ConeSample s = sample_schlaefli_cone(n, d, rng);
    const PolyhedralCone& cone = *s.cone;
    if (!cone.pointed()) continue;  // n <= d: a cone with lineality has no bounded profile
    const UnitVector u = sample_uniform_in_cell(cone, rng);
    Profile p;
    if (how == QnConstruction::kDirect) {
      p = profile(cone, u, static_cast<double>(n));
    } else {
      const TangentFrame frame(u);
      p = profile(cone.transformed(frame.rotation()), south, static_cast<double>(n));
    }
    if (p.bounded) return {std::move(*p.polytope), attempt, static_cast<long>(cone.generators().rays.size())};
  }
  throw Error(ErrorKind::kIterationCap, "sample_Qn_star: no bounded profile");
}

}  // namespace conehull
