#include "conehull/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "conehull/constants.hpp"
#include "conehull/errors.hpp"

namespace conehull {
namespace {

constexpr long kCellRejectionCap = 10'000'000;
constexpr std::size_t kPiPointCap = 100'000;

Vec gaussian(int dim, RngStream& rng) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  return v;
}

std::vector<Vec> sample_normals(int n, int d, RngStream& rng) {
  std::vector<Vec> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(sample_uniform_sphere(d, rng).coords());
  return out;
}

// Uniform point in the spherical triangle abc: uniform in the flat triangle,
// projected, accepted with probability (h/|x|)^3 where h is the distance of
// the flat triangle's plane. Exact, and well conditioned for tiny cells
// (unlike inverting the area function).
Vec spherical_triangle_sample(const Vec& a, const Vec& b, const Vec& c, RngStream& rng) {
  const Eigen::Vector3d a3 = a.head<3>(), b3 = b.head<3>(), c3 = c.head<3>();
  const double h = std::fabs((b3 - a3).cross(c3 - a3).normalized().dot(a3));
  for (long it = 0; it < 10000000; ++it) {
    double s = rng.uniform(), t = rng.uniform();
    if (s + t > 1.0) {
      s = 1.0 - s;
      t = 1.0 - t;
    }
    const Eigen::Vector3d x = a3 + s * (b3 - a3) + t * (c3 - a3);
    const double q = h / x.norm();
    if (rng.uniform() < q * q * q) return Vec(x.normalized());
  }
  throw Error(ErrorKind::kIterationCap, "spherical triangle sampler");
}

// Van Oosterom–Strackee solid angle of the spherical triangle abc.
double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
  const double num = std::fabs(a.head<3>().dot(b.head<3>().cross(c.head<3>())));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

UnitVector sample_cell_triangles(const PolyhedralCone& cone, RngStream& rng) {
  const auto& rays = cone.generators().rays;
  const Vec& p = cone.interior_point();
  const Mat basis = perp_basis(p);
  std::vector<std::pair<double, Vec>> ordered;
  for (const auto& r : rays) {
    const Vec& x = r.direction.coords();
    ordered.emplace_back(std::atan2(basis.col(1).dot(x), basis.col(0).dot(x)), x);
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  const std::size_t m = ordered.size();
  std::vector<double> cum;
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    total += spherical_triangle_area(ordered[0].second, ordered[i].second, ordered[i + 1].second);
    cum.push_back(total);
  }
  const double pick = rng.uniform() * total;
  std::size_t t = std::upper_bound(cum.begin(), cum.end(), pick) - cum.begin();
  t = std::min(t, cum.size() - 1);
  return UnitVector::normalize(spherical_triangle_sample(ordered[0].second, ordered[t + 1].second, ordered[t + 2].second, rng));
}

UnitVector sample_cell_cap(const PolyhedralCone& cone, RngStream& rng) {
  const int dim = cone.ambient_dim();
  const Vec c = cone.interior_point();
  double tmin = 1.0;
  for (const auto& r : cone.generators().rays) tmin = std::min(tmin, c.dot(r.direction.coords()));
  // A cap of angular radius < pi/2 is spherically convex and holds every ray,
  // hence the cell. Otherwise fall back to the whole sphere.
  const bool use_cap = tmin > 0.0;
  const Mat basis = perp_basis(c);
  const double expo = (dim - 3) / 2.0;  // density of t = <x, c> is (1 - t^2)^{(d-2)/2}, d = dim - 1
  const double tlo = use_cap ? tmin : -1.0;
  const double envelope = std::pow(1.0 - std::max(0.0, tlo) * std::max(0.0, tlo), expo);
  for (long it = 0; it < kCellRejectionCap; ++it) {
    Vec x;
    if (!use_cap) {
      x = gaussian(dim, rng);
    } else {
      const double t = tlo + (1.0 - tlo) * rng.uniform();
      if (expo > 0 && rng.uniform() * envelope > std::pow(1.0 - t * t, expo)) continue;
      Vec w(dim - 1);
      for (int i = 0; i < dim - 1; ++i) w(i) = rng.normal();
      w.normalize();
      x = t * c + std::sqrt(std::max(0.0, 1.0 - t * t)) * (basis * w);
    }
    if (cone.contains(x, 0.0)) return UnitVector::normalize(x);
  }
  throw Error(ErrorKind::kIterationCap, "sample_uniform_in_cell: rejection cap reached");
}

// Builds the cell of `hs` with the given signs; `hint` strictly interior.
PolyhedralCone cell_with_hint(const HyperplaneSet& hs, SignVector signs, const Vec& hint) {
  return PolyhedralCone(hs, std::move(signs), hint);
}

ConeSample schlaefli_by_vertices(const std::vector<Vec>& normals, int d, RngStream& rng) {
  const int n = static_cast<int>(normals.size());
  const int D = d + 1;
  const HyperplaneSet hs = make_hyperplanes(normals);
  std::vector<int> sub;
  std::vector<Vec> rows(D - 1);
  for (long trial = 1; trial <= kCellRejectionCap; ++trial) {
    sub.clear();
    while (static_cast<int>(sub.size()) < D - 1) {
      const int k = static_cast<int>(rng.uniform_int(n));
      if (std::find(sub.begin(), sub.end(), k) == sub.end()) sub.push_back(k);
    }
    std::sort(sub.begin(), sub.end());
    for (int i = 0; i < D - 1; ++i) rows[i] = normals[sub[i]];
    Vec v = generalized_cross(rows);
    if (!(v.norm() > kSignEps)) throw Error(ErrorKind::kNonGeneric, "schlaefli: dependent normals");
    v.normalize();
    if (rng.uniform() < 0.5) v = -v;
    SignVector signs(n);
    Vec rhs = Vec::Zero(D);
    for (int i = 0; i < D - 1; ++i) rhs(i) = rng.uniform() < 0.5 ? 1.0 : -1.0;
    Mat m(D, D);
    for (int i = 0; i < D - 1; ++i) m.row(i) = rows[i].transpose();
    m.row(D - 1) = v.transpose();
    const Vec w = m.partialPivLu().solve(rhs);
    double step = 1.0;
    for (int k = 0, j = 0; k < n; ++k) {
      if (j < D - 1 && sub[j] == k) {
        signs[k] = static_cast<std::int8_t>(rhs(j) > 0 ? 1 : -1);
        ++j;
        continue;
      }
      const double s = normals[k].dot(v);
      if (std::fabs(s) <= kSignEps) throw Error(ErrorKind::kNonGeneric, "schlaefli: vertex on a third hyperplane");
      signs[k] = static_cast<std::int8_t>(s > 0 ? 1 : -1);
      const double sw = std::fabs(normals[k].dot(w));
      if (sw > 0) step = std::min(step, 0.5 * std::fabs(s) / sw);
    }
    const Vec hint = v + step * w;
    PolyhedralCone cone = cell_with_hint(hs, std::move(signs), hint);
    const double f0 = static_cast<double>(cone.generators().rays.size());
    if (rng.uniform() * f0 < D) {
      ConeSample out;
      out.cone = std::move(cone);
      out.generators = normals;
      out.kind = ConeKind::kSchlaefli;
      out.trials = trial;
      out.cell_count = schlaefli_count(n, D);
      return out;
    }
  }
  throw Error(ErrorKind::kIterationCap, "schlaefli: vertex rejection cap reached");
}

}  // namespace

Vec north_pole(int d) { return Vec::Unit(d + 1, d); }

UnitVector sample_uniform_sphere(int d, RngStream& rng) {
  if (d < 1 || d + 1 > kMaxDim) throw Error(ErrorKind::kInvalidArgument, "sphere dimension out of range");
  for (;;) {
    const Vec g = gaussian(d + 1, rng);
    if (g.norm() > 1e-150) return UnitVector::normalize(g);
  }
}

UnitVector sample_uniform_half_sphere(int d, RngStream& rng) {
  const UnitVector u = sample_uniform_sphere(d, rng);
  return u[d] < 0 ? -u : u;
}

Vec gnomonic(const Vec& u) {
  const int d = static_cast<int>(u.size()) - 1;
  return u.head(d) / u(d);
}

Vec sample_cauchy_point(int d, RngStream& rng) {
  return gnomonic(sample_uniform_half_sphere(d, rng).coords());
}

const char* to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::kSchlaefli: return "schlaefli";
    case ConeKind::kCoverEfron: return "cover_efron";
    case ConeKind::kRn: return "r_n";
    case ConeKind::kSMinusE: return "s_minus_e";
  }
  return "?";
}

ConeSample sample_schlaefli_cell(const ConicalArrangement& arr, RngStream& rng) {
  ConeSample out;
  out.cell_count = arr.size();
  out.cell_index = static_cast<std::size_t>(rng.uniform_int(arr.size()));
  out.cone = arr.cell(out.cell_index);
  for (const auto& h : arr.hyperplanes()) out.generators.push_back(h.normal.coords());
  out.kind = ConeKind::kSchlaefli;
  return out;
}

ConeSample sample_schlaefli_cone(int n, int d, RngStream& rng) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "schlaefli: n >= 1");
  if (d < 1 || d > 3) throw Error(ErrorKind::kInvalidArgument, "schlaefli: d must be 1..3");
  for (int attempt = 0;; ++attempt) {
    const std::vector<Vec> normals = sample_normals(n, d, rng);
    try {
      if (n <= 64) return sample_schlaefli_cell(enumerate_cones(make_hyperplanes(normals)), rng);
      return schlaefli_by_vertices(normals, d, rng);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNonGeneric || attempt >= 3) throw;
    }
  }
}

bool positive_hull_is_proper(const std::vector<Vec>& u) {
  std::vector<Vec> neg(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) neg[i] = -u[i];
  try {
    (void)enumerate_generators(neg, static_cast<int>(u[0].size()));
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDegenerateInput) return false;
    throw;
  }
}

ConeSample sample_cover_efron(int n, int d, RngStream& rng) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "cover_efron: n >= 1");
  const double accept = static_cast<double>(schlaefli_count(n, d + 1)) / std::ldexp(1.0, n);
  if (1.0 / accept > 1e6) throw Error(ErrorKind::kIterationCap, "cover_efron: expected trials exceed 1e6");
  ConeSample out;
  out.kind = ConeKind::kCoverEfron;
  for (long trial = 1;; ++trial) {
    std::vector<Vec> u = sample_normals(n, d, rng);
    if (!positive_hull_is_proper(u)) continue;
    out.trials = trial;
    out.generators = std::move(u);
    break;
  }
  if (n >= d + 1) {
    out.cone = PolyhedralCone::positive_hull(out.generators);
  } else {
    out.full_dimensional = false;
  }
  return out;
}

ConeSample sample_s_minus_e(int n, int d, RngStream& rng) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "s_minus_e: n >= 1");
  const Vec south = -north_pole(d);
  for (int attempt = 0;; ++attempt) {
    std::vector<Vec> u = sample_normals(n, d, rng);
    SignVector signs(n);
    for (int i = 0; i < n; ++i) signs[i] = static_cast<std::int8_t>(u[i].dot(south) >= 0 ? 1 : -1);
    try {
      ConeSample out;
      out.kind = ConeKind::kSMinusE;
      out.cone = PolyhedralCone(make_hyperplanes(u), std::move(signs), south);
      out.generators = std::move(u);
      return out;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNonGeneric || attempt >= 3) throw;
    }
  }
}

ConeSample sample_r_n(int n, int d, RngStream& rng) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "r_n: n >= 1");
  ConeSample out;
  out.kind = ConeKind::kRn;
  for (int i = 0; i < n; ++i) out.generators.push_back(sample_uniform_half_sphere(d, rng).coords());
  if (n < d + 1) {
    out.full_dimensional = false;
    return out;
  }
  if (d > 3) {
    out.cone = PolyhedralCone::positive_hull(out.generators);
    return out;
  }
  std::vector<Vec> chart;
  Vec centroid = Vec::Zero(d + 1);
  for (const auto& x : out.generators) {
    chart.push_back(gnomonic(x));
    centroid += x;
  }
  HullResult h;
  try {
    h = compute_hull(chart, d);
  } catch (const Error&) {
    out.full_dimensional = false;
    return out;
  }
  std::vector<Vec> normals;
  for (const auto& f : h.facets) {
    Vec a(d + 1);
    a.head(d) = -f.normal;
    a(d) = f.offset;
    normals.push_back(a);
  }
  SignVector signs(normals.size(), 1);
  out.cone = PolyhedralCone(make_hyperplanes(normals), std::move(signs), centroid);
  return out;
}

UnitVector sample_uniform_in_cell(const PolyhedralCone& cone, RngStream& rng, CellSampler method) {
  if (!cone.pointed()) throw Error(ErrorKind::kNotPointed, "sample_uniform_in_cell: cone is not pointed");
  const int dim = cone.ambient_dim();
  if (method == CellSampler::kAuto) method = dim <= 3 ? CellSampler::kTriangles : CellSampler::kCapRejection;
  if (method == CellSampler::kCapRejection) return sample_cell_cap(cone, rng);
  if (dim == 2) {
    const Vec& r1 = cone.generators().rays[0].direction.coords();
    const Vec& r2 = cone.generators().rays[1].direction.coords();
    const double theta = std::acos(std::clamp(r1.dot(r2), -1.0, 1.0));
    const Vec w = (r2 - r1.dot(r2) * r1).normalized();
    const double phi = rng.uniform() * theta;
    return UnitVector::normalize(static_cast<Vec>(std::cos(phi) * r1 + std::sin(phi) * w));
  }
  if (dim == 3) return sample_cell_triangles(cone, rng);
  throw Error(ErrorKind::kInvalidArgument, "triangle sampler needs ambient dimension <= 3");
}

std::vector<Vec> sample_poisson_Pi(int d, RngStream& rng) {
  if (d < 1 || d > 3) throw Error(ErrorKind::kInvalidArgument, "sample_poisson_Pi: d must be 1..3");
  const double lambda = 2.0 * omega(d) / omega(d + 1);  // mass outside radius r is lambda / r
  std::vector<Vec> pts;
  double arrival = rng.exponential();
  std::size_t next_check = d + 1;
  for (;;) {
    const double r = lambda / arrival;
    if (pts.size() >= next_check) {
      try {
        const HullResult h = compute_hull(pts, d);
        double inner = INFINITY;
        for (const auto& f : h.facets) inner = std::min(inner, f.offset);
        if (inner >= r) return pts;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegenerateInput) throw;
      }
      next_check = std::max(pts.size() + 1, static_cast<std::size_t>(std::ceil(1.25 * pts.size())));
    }
    if (pts.size() >= kPiPointCap) throw Error(ErrorKind::kIterationCap, "sample_poisson_Pi: point cap reached");
    Vec dir = gaussian(d, rng);
    dir.normalize();
    pts.push_back(r * dir);
    arrival += rng.exponential();
  }
}

}  // namespace conehull
