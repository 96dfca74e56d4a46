#include <algorithm>
#include <cmath>
#include <set>

#include "conehull/errors.hpp"
#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"

namespace conehull {
namespace {

constexpr std::size_t kExhaustiveLimit = 64;

// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  if (k > n) return;
  for (;;) {
    fn(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

Vec sum_of_rays(const ConeGenerators& g, int dim) {
  Vec p = Vec::Zero(dim);
  for (const auto& r : g.rays) p += r.direction.coords();
  return p;
}

// Rays from the dual hull in the chart {<., hint> = 1}; requires full rank.
std::optional<ConeGenerators> chart_generators(const std::vector<Vec>& g, int dim, const Vec& hint) {
  if (dim > 4 || static_cast<int>(g.size()) < dim) return std::nullopt;
  const Vec ph = hint.normalized();
  const Mat basis = perp_basis(ph);
  std::vector<Vec> chart;
  chart.reserve(g.size());
  for (const auto& gi : g) {
    const double t = gi.dot(hint);
    if (!(t > 0)) throw Error(ErrorKind::kInvalidArgument, "cone: interior hint violates an inequality");
    chart.push_back(basis.transpose() * (gi / t));
  }
  HullResult h;
  try {
    h = compute_hull(chart, dim - 1);
  } catch (const Error&) {
    return std::nullopt;
  }
  ConeGenerators out;
  const double hn = hint.norm();
  for (const auto& f : h.facets) {
    Vec r = f.offset * hn * ph - basis * f.normal;
    const double len = r.norm();
    if (!(len > 0)) throw Error(ErrorKind::kNonGeneric, "cone: degenerate chart facet");
    std::vector<int> tight = f.vertices;
    std::sort(tight.begin(), tight.end());
    if (static_cast<int>(tight.size()) != dim - 1)
      throw Error(ErrorKind::kNonGeneric, "cone: ray lies on too many hyperplanes");
    out.rays.push_back({UnitVector::normalize(r), std::move(tight)});
  }
  return out;
}

}  // namespace

UnitVector UnitVector::normalize(const Vec& v) {
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) throw Error(ErrorKind::kDegenerateInput, "UnitVector: zero vector");
  return UnitVector(v / n);
}

UnitVector UnitVector::from_unit(const Vec& v) {
  if (std::fabs(v.norm() - 1.0) > kSignEps) throw Error(ErrorKind::kInvalidArgument, "UnitVector: not unit length");
  return UnitVector(v);
}

HyperplaneSet make_hyperplanes(std::vector<LinearHyperplane> hs) {
  return std::make_shared<const std::vector<LinearHyperplane>>(std::move(hs));
}

HyperplaneSet make_hyperplanes(const std::vector<Vec>& normals) {
  std::vector<LinearHyperplane> hs;
  hs.reserve(normals.size());
  for (const auto& n : normals) hs.push_back({UnitVector::normalize(n)});
  return make_hyperplanes(std::move(hs));
}

ConeGenerators enumerate_generators(const std::vector<Vec>& g, int dim) {
  ConeGenerators out;
  const ComplementResult comp = orthogonal_complement(g, dim);
  for (int j = 0; j < comp.complement.cols(); ++j) out.lines.push_back(comp.complement.col(j));
  const int r = comp.rank;
  const int n = static_cast<int>(g.size());
  if (r == 0) return out;
  const Mat& b = comp.range;
  std::vector<Vec> h(n);
  for (int i = 0; i < n; ++i) h[i] = b.transpose() * g[i];
  if (r == 1) {
    const int s = sign_of(h[0](0));
    for (int i = 0; i < n; ++i)
      if (sign_of(h[i](0)) != s || s == 0) throw Error(ErrorKind::kDegenerateInput, "cone: empty interior");
    out.rays.push_back({UnitVector::normalize(static_cast<Vec>(s * b.col(0))), {}});
    return out;
  }
  const double work = binomial(n, r - 1) * n;
  if (work > 5e7) throw Error(ErrorKind::kInvalidArgument, "cone: too many hyperplanes for exhaustive enumeration");
  std::vector<Vec> sub(r - 1);
  std::vector<double> val(n);
  for_each_subset(n, r - 1, [&](const std::vector<int>& s) {
    for (int i = 0; i < r - 1; ++i) sub[i] = h[s[i]];
    Vec c = generalized_cross(sub);
    const double len = c.norm();
    if (!(len > kSignEps)) throw Error(ErrorKind::kNonGeneric, "cone: dependent hyperplane normals");
    c /= len;
    for (int i = 0; i < n; ++i) val[i] = h[i].dot(c);
    for (int sgn : {1, -1}) {
      bool ok = true;
      int tight = 0;
      for (int i = 0; i < n && ok; ++i) {
        const double v = sgn * val[i];
        if (v < -kSignEps) ok = false;
        else if (v <= kSignEps) ++tight;
      }
      if (!ok) continue;
      if (tight > r - 1) throw Error(ErrorKind::kNonGeneric, "cone: ray lies on too many hyperplanes");
      out.rays.push_back({UnitVector::normalize(static_cast<Vec>(b * (sgn * c))), s});
    }
  });
  if (out.rays.empty()) throw Error(ErrorKind::kDegenerateInput, "cone: empty interior");
  return out;
}

PolyhedralCone::PolyhedralCone(HyperplaneSet hyperplanes, SignVector signs, std::optional<Vec> hint)
    : hyperplanes_(std::move(hyperplanes)), signs_(std::move(signs)) {
  if (!hyperplanes_ || hyperplanes_->empty()) throw Error(ErrorKind::kInvalidArgument, "cone: no hyperplanes");
  if (signs_.size() != hyperplanes_->size()) throw Error(ErrorKind::kInvalidArgument, "cone: sign vector length");
  dim_ = (*hyperplanes_)[0].normal.ambient_dim();
  if (dim_ < 2 || dim_ > kMaxDim) throw Error(ErrorKind::kInvalidArgument, "cone: ambient dimension");
  std::vector<Vec> g(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (signs_[i] != 1 && signs_[i] != -1) throw Error(ErrorKind::kInvalidArgument, "cone: sign entries must be +1/-1");
    if ((*hyperplanes_)[i].normal.ambient_dim() != dim_) throw Error(ErrorKind::kInvalidArgument, "cone: mixed dimensions");
    g[i] = oriented_normal(i);
  }
  std::optional<ConeGenerators> gens;
  if (size() > kExhaustiveLimit) {
    if (!hint) throw Error(ErrorKind::kInvalidArgument, "cone: more than 64 hyperplanes need an interior hint");
    gens = chart_generators(g, dim_, *hint);
  }
  if (!gens) gens = enumerate_generators(g, dim_);
  gens_ = std::move(*gens);
  Vec p = sum_of_rays(gens_, dim_);
  if (p.norm() == 0.0) {
    // Only lines (no inequality binds): impossible with >= 1 hyperplane.
    throw Error(ErrorKind::kDegenerateInput, "cone: empty interior");
  }
  p.normalize();
  for (const auto& gi : g)
    if (!(gi.dot(p) > kSignEps)) {
      if (hint && std::all_of(g.begin(), g.end(), [&](const Vec& x) { return x.dot(*hint) > 0; })) {
        p = hint->normalized();
        break;
      }
      throw Error(ErrorKind::kDegenerateInput, "cone: empty interior");
    }
  interior_ = p;
}

PolyhedralCone PolyhedralCone::with_generators(HyperplaneSet hyperplanes, SignVector signs,
                                               ConeGenerators generators, Vec interior) {
  PolyhedralCone c;
  c.dim_ = (*hyperplanes)[0].normal.ambient_dim();
  c.hyperplanes_ = std::move(hyperplanes);
  c.signs_ = std::move(signs);
  c.gens_ = std::move(generators);
  c.interior_ = interior.normalized();
  return c;
}

PolyhedralCone PolyhedralCone::positive_hull(const std::vector<Vec>& gens) {
  if (gens.empty()) throw Error(ErrorKind::kInvalidArgument, "positive_hull: no generators");
  const int dim = static_cast<int>(gens[0].size());
  // The polar {y : <g_i, y> <= 0} has empty interior iff pos(g) is all of space
  // or not full-dimensional.
  std::vector<Vec> neg(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) neg[i] = -gens[i];
  const ConeGenerators polar = enumerate_generators(neg, dim);
  if (!polar.lines.empty())
    throw Error(ErrorKind::kDegenerateInput, "positive_hull: generators do not span");
  std::vector<LinearHyperplane> hs;
  SignVector signs;
  for (const auto& r : polar.rays) {
    hs.push_back({r.direction});
    signs.push_back(-1);
  }
  Vec hint = Vec::Zero(dim);
  for (const auto& g : gens) hint += g.normalized();
  return PolyhedralCone(make_hyperplanes(std::move(hs)), std::move(signs), hint);
}

Vec PolyhedralCone::oriented_normal(std::size_t i) const {
  return static_cast<double>(signs_[i]) * (*hyperplanes_)[i].normal.coords();
}

bool PolyhedralCone::contains(const Vec& x, double eps) const {
  if (x.size() != dim_) throw Error(ErrorKind::kInvalidArgument, "contains: dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    if (signs_[i] * (*hyperplanes_)[i].normal.coords().dot(x) < -eps) return false;
  return true;
}

PolyhedralCone PolyhedralCone::transformed(const Mat& q) const {
  std::vector<LinearHyperplane> hs;
  hs.reserve(size());
  for (const auto& h : *hyperplanes_) hs.push_back({UnitVector::normalize(q * h.normal.coords())});
  ConeGenerators g;
  for (const auto& l : gens_.lines) g.lines.push_back(q * l);
  for (const auto& r : gens_.rays) g.rays.push_back({UnitVector::normalize(q * r.direction.coords()), r.tight});
  return with_generators(make_hyperplanes(std::move(hs)), signs_, std::move(g), q * interior_);
}

PolyhedralCone PolyhedralCone::flipped(std::size_t i) const {
  std::vector<LinearHyperplane> hs = *hyperplanes_;
  hs[i] = {-hs[i].normal};
  SignVector s = signs_;
  s[i] = static_cast<std::int8_t>(-s[i]);
  return with_generators(make_hyperplanes(std::move(hs)), std::move(s), gens_, interior_);
}

std::vector<UnitVector> extreme_rays(const PolyhedralCone& cone) {
  if (!cone.pointed()) throw Error(ErrorKind::kNotPointed, "extreme_rays: cone contains a line");
  std::vector<UnitVector> out;
  for (const auto& r : cone.generators().rays) out.push_back(r.direction);
  return out;
}

bool contains(const PolyhedralCone& cone, const Vec& x) { return cone.contains(x); }

std::vector<long> face_counts_spherical(const PolyhedralCone& cone) {
  if (!cone.pointed()) throw Error(ErrorKind::kNotPointed, "face counts are undefined for cones with lineality");
  const int dim = cone.ambient_dim();
  std::vector<long> f(dim, 0);
  f[0] = static_cast<long>(cone.generators().rays.size());
  f[dim - 1] = 1;
  for (int k = 1; k + 1 < dim; ++k) {
    const int sz = dim - 1 - k;
    std::set<std::vector<int>> faces;
    for (const auto& r : cone.generators().rays) {
      if (static_cast<int>(r.tight.size()) != dim - 1)
        throw Error(ErrorKind::kNonGeneric, "face counts need simple cones");
      for_each_subset(dim - 1, sz, [&](const std::vector<int>& s) {
        std::vector<int> t(sz);
        for (int i = 0; i < sz; ++i) t[i] = r.tight[s[i]];
        faces.insert(std::move(t));
      });
    }
    f[k] = static_cast<long>(faces.size());
  }
  return f;
}

SolidAngle solid_angle(const PolyhedralCone& cone, SolidAngleMethod method, long samples, RngStream* rng) {
  const int dim = cone.ambient_dim();
  if (method == SolidAngleMethod::kMonteCarlo) {
    if (!rng || samples <= 0) throw Error(ErrorKind::kInvalidArgument, "solid_angle: MC needs rng and samples");
    long hits = 0;
    Vec x(dim);
    for (long s = 0; s < samples; ++s) {
      for (int i = 0; i < dim; ++i) x(i) = rng->normal();
      if (cone.contains(x, 0.0)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(samples))};
  }
  const auto& g = cone.generators();
  const int rank = dim - static_cast<int>(g.lines.size());
  if (rank == 1) return {0.5, 0.0};
  if (rank == 2) {
    const double c = std::clamp(g.rays[0].direction.coords().dot(g.rays[1].direction.coords()), -1.0, 1.0);
    return {std::acos(c) / (2.0 * M_PI), 0.0};
  }
  if (rank == 3) {
    // Gauss-Bonnet: area = sum of interior angles - (m - 2) pi; the interior
    // angle at a ray is pi minus the angle between its two inward normals.
    double sum = 0.0;
    for (const auto& r : g.rays) {
      if (r.tight.size() != 2) throw Error(ErrorKind::kNonGeneric, "solid_angle: non-simple vertex");
      const Vec a = cone.oriented_normal(r.tight[0]);
      const Vec b = cone.oriented_normal(r.tight[1]);
      sum += M_PI - std::acos(std::clamp(a.dot(b), -1.0, 1.0));
    }
    const double m = static_cast<double>(g.rays.size());
    return {(sum - (m - 2.0) * M_PI) / (4.0 * M_PI), 0.0};
  }
  throw Error(ErrorKind::kInvalidArgument, "solid_angle: exact mode needs pointed rank <= 3");
}

}  // namespace conehull
