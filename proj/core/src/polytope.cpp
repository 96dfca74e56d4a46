#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "conehull/errors.hpp"
#include "conehull/geom_core.hpp"

namespace conehull {
namespace {

bool coord_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

}  // namespace

void Polytope::build(std::vector<Vec> pts, bool require_convex_position) {
  HullResult h = compute_hull(pts, dim_);
  if (require_convex_position && h.vertices.size() != pts.size())
    throw Error(ErrorKind::kInvalidArgument, "polytope: vertices are not in convex position");
  std::vector<int> keep = h.vertices;
  std::vector<Vec> kept;
  std::vector<int> remap(pts.size(), -1);
  for (int i : keep) {
    remap[i] = static_cast<int>(kept.size());
    kept.push_back(pts[i]);
  }
  for (auto& f : h.facets)
    for (int& v : f.vertices) v = remap[v];
  adopt(std::move(kept), std::move(h.facets));
}

void Polytope::adopt(std::vector<Vec> pts, std::vector<HullFacet> facets) {
  std::vector<int> order(pts.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return coord_less(pts[a], pts[b]); });
  std::vector<int> remap(pts.size(), -1);
  vertices_.clear();
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    remap[order[i]] = i;
    vertices_.push_back(pts[order[i]]);
  }
  facets_ = std::move(facets);
  for (auto& f : facets_)
    for (int& v : f.vertices) v = remap[v];
}

Polytope Polytope::from_vertices(std::vector<Vec> vertices, int dim) {
  Polytope p;
  p.dim_ = dim;
  p.build(std::move(vertices), true);
  return p;
}

Polytope Polytope::hull_of(const std::vector<Vec>& points, int dim) {
  Polytope p;
  p.dim_ = dim;
  p.build(points, false);
  return p;
}

Polytope Polytope::from_json(const nlohmann::json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<Vec> pts;
  for (const auto& row : j.at("vertices")) {
    Vec v(dim);
    if (static_cast<int>(row.size()) != dim) throw Error(ErrorKind::kInvalidArgument, "polytope json: bad vertex");
    for (int i = 0; i < dim; ++i) v(i) = row.at(i).get<double>();
    pts.push_back(v);
  }
  return from_vertices(std::move(pts), dim);
}

std::vector<int> Polytope::cycle() const {
  std::vector<int> c;
  if (dim_ != 2) return c;
  for (const auto& f : facets_) c.push_back(f.vertices[0]);
  return c;
}

double Polytope::volume() const {
  if (dim_ == 1) return vertices_.back()(0) - vertices_.front()(0);
  if (dim_ == 2) {
    double a = 0.0;
    for (const auto& f : facets_) {
      const Vec& p = vertices_[f.vertices[0]];
      const Vec& q = vertices_[f.vertices[1]];
      a += p(0) * q(1) - p(1) * q(0);
    }
    return 0.5 * a;
  }
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& v : vertices_) c += Eigen::Vector3d(v(0), v(1), v(2));
  c /= static_cast<double>(vertices_.size());
  double vol = 0.0;
  for (const auto& f : facets_) {
    const Vec& a0 = vertices_[f.vertices[0]];
    const Eigen::Vector3d a(a0(0), a0(1), a0(2));
    for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
      const Vec& b0 = vertices_[f.vertices[i]];
      const Vec& c0 = vertices_[f.vertices[i + 1]];
      const Eigen::Vector3d b(b0(0), b0(1), b0(2)), cc(c0(0), c0(1), c0(2));
      vol += (a - c).dot((b - c).cross(cc - c));
    }
  }
  return vol / 6.0;
}

bool Polytope::contains(const Vec& x, double eps) const {
  for (const auto& f : facets_)
    if (f.normal.dot(x) > f.offset + eps) return false;
  return true;
}

bool Polytope::has_tied_first_coordinates() const {
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i](0) == vertices_[i - 1](0)) return true;
  return false;
}

std::vector<long> Polytope::f_vector() const {
  const long v = static_cast<long>(vertices_.size());
  if (dim_ == 1) return {2};
  if (dim_ == 2) return {v, v};
  long e2 = 0;
  for (const auto& f : facets_) e2 += static_cast<long>(f.vertices.size());
  return {v, e2 / 2, static_cast<long>(facets_.size())};
}

Polytope Polytope::scaled(double s) const {
  std::vector<Vec> pts = vertices_;
  for (auto& v : pts) v *= s;
  return from_vertices(std::move(pts), dim_);
}

Polytope Polytope::translated(const Vec& t) const {
  Polytope p = *this;
  for (auto& v : p.vertices_) v += t;
  for (auto& f : p.facets_) f.offset += f.normal.dot(t);
  return p;
}

nlohmann::json Polytope::to_json() const {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : vertices_) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
    verts.push_back(row);
  }
  return {{"dim", dim_}, {"vertices", verts}};
}

Polytope convex_hull(const std::vector<Vec>& points, int dim) {
  Polytope p = Polytope::hull_of(points, dim);
  if (p.has_tied_first_coordinates())
    throw Error(ErrorKind::kTiedFirstCoordinate, "convex_hull: two hull vertices share a first coordinate");
  return p;
}

Polytope polar_polytope(const Polytope& p) {
  const int d = p.dim();
  if (d < 2 || d > 3) throw Error(ErrorKind::kInvalidArgument, "polar_polytope: dimension must be 2 or 3");
  double scale = 0.0;
  for (const auto& v : p.vertices()) scale = std::max(scale, v.norm());
  std::vector<Vec> pts;
  std::vector<std::vector<int>> incident(p.num_vertices());
  for (int i = 0; i < static_cast<int>(p.facets().size()); ++i) {
    const HullFacet& f = p.facets()[i];
    if (!(f.offset > kSignEps * std::max(1.0, scale)))
      throw Error(ErrorKind::kOriginNotInterior, "polar_polytope: origin is not an interior point");
    pts.push_back(f.normal / f.offset);
    for (int v : f.vertices) incident[v].push_back(i);
  }
  // Vertex w of p becomes the facet {<w, x> <= 1}, whose vertices are the
  // polars of the facets through w, ordered counter-clockwise seen from outside.
  std::vector<int> order(p.num_vertices());
  for (int w = 0; w < static_cast<int>(order.size()); ++w) order[w] = w;
  if (d == 2) order = p.cycle();  // keeps the facets of the polar counter-clockwise
  std::vector<HullFacet> facets;
  for (int w : order) {
    const Vec& x = p.vertices()[w];
    const double r = x.norm();
    const Vec u = x / r;
    std::vector<std::pair<double, int>> ring;
    if (d == 2) {
      Vec t(2);
      t << -u(1), u(0);
      for (int i : incident[w]) ring.emplace_back(pts[i].dot(t), i);
    } else {
      const Mat b = perp_basis(u);
      Vec e1 = b.col(0), e2 = b.col(1);
      Vec c(3);
      c << e1(1) * e2(2) - e1(2) * e2(1), e1(2) * e2(0) - e1(0) * e2(2), e1(0) * e2(1) - e1(1) * e2(0);
      if (c.dot(u) < 0) e2 = -e2;
      for (int i : incident[w]) ring.emplace_back(std::atan2(pts[i].dot(e2), pts[i].dot(e1)), i);
    }
    std::sort(ring.begin(), ring.end());
    HullFacet f{u, 1.0 / r, {}};
    for (const auto& [key, i] : ring) f.vertices.push_back(i);
    facets.push_back(std::move(f));
  }
  Polytope out;
  out.dim_ = d;
  out.adopt(std::move(pts), std::move(facets));
  return out;
}

}  // namespace conehull
