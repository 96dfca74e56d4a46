#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "conehull/errors.hpp"
#include "conehull/geom_core.hpp"

namespace conehull {
namespace {

double max_abs_coord(const std::vector<Vec>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

HullResult hull1(const std::vector<Vec>& pts) {
  int lo = 0, hi = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (pts[i](0) < pts[lo](0)) lo = i;
    if (pts[i](0) > pts[hi](0)) hi = i;
  }
  if (!(pts[hi](0) > pts[lo](0))) throw Error(ErrorKind::kDegenerateInput, "hull: points coincide");
  HullResult r;
  r.dim = 1;
  r.vertices = {std::min(lo, hi), std::max(lo, hi)};
  Vec m(1), p(1);
  m << -1.0;
  p << 1.0;
  r.facets.push_back({m, -pts[lo](0), {lo}});
  r.facets.push_back({p, pts[hi](0), {hi}});
  return r;
}

inline double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

// Left turn o -> a -> b, with collinearity judged by the sine of the turn so
// that hulls mixing very different scales keep their small features.
inline bool left_turn(const Vec& o, const Vec& a, const Vec& b, double rel) {
  const double la = std::hypot(a(0) - o(0), a(1) - o(1));
  const double lb = std::hypot(b(0) - o(0), b(1) - o(1));
  return cross2(o, a, b) > rel * la * lb;
}

// Andrew's monotone chain; returns counter-clockwise cycle without collinear points.
std::vector<int> chain2(const std::vector<Vec>& pts, const std::vector<int>& idx, double rel) {
  std::vector<int> order = idx;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a](0) != pts[b](0)) return pts[a](0) < pts[b](0);
    return pts[a](1) < pts[b](1);
  });
  const int n = static_cast<int>(order.size());
  std::vector<int> h(2 * n + 1);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && !left_turn(pts[h[k - 2]], pts[h[k - 1]], pts[order[i]], rel)) --k;
    h[k++] = order[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && !left_turn(pts[h[k - 2]], pts[h[k - 1]], pts[order[i]], rel)) --k;
    h[k++] = order[i];
  }
  h.resize(std::max(0, k - 1));
  return h;
}

HullResult hull2(const std::vector<Vec>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::vector<int> cyc = chain2(pts, idx, 1e-12);
  if (cyc.size() < 3) throw Error(ErrorKind::kDegenerateInput, "hull: points are collinear");
  HullResult r;
  r.dim = 2;
  r.vertices = cyc;
  std::sort(r.vertices.begin(), r.vertices.end());
  const int m = static_cast<int>(cyc.size());
  for (int i = 0; i < m; ++i) {
    const Vec& a = pts[cyc[i]];
    const Vec& b = pts[cyc[(i + 1) % m]];
    Vec nrm(2);
    nrm << b(1) - a(1), a(0) - b(0);
    nrm.normalize();
    r.facets.push_back({nrm, nrm.dot(a), {cyc[i], cyc[(i + 1) % m]}});
  }
  return r;
}

struct Face {
  int v[3];
  Eigen::Vector3d n;
  double off;
  bool alive;
};

inline Eigen::Vector3d p3(const Vec& v) { return Eigen::Vector3d(v(0), v(1), v(2)); }

HullResult hull3(const std::vector<Vec>& in) {
  const int n = static_cast<int>(in.size());
  std::vector<Eigen::Vector3d> p(n);
  for (int i = 0; i < n; ++i) p[i] = p3(in[i]);
  const double scale = max_abs_coord(in);
  const double eps = 1e-12 * scale;

  // Initial simplex from extreme-ish points.
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (p[i].x() < p[i0].x()) i0 = i;
  int i1 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (p[i] - p[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (i1 < 0 || best <= eps) throw Error(ErrorKind::kDegenerateInput, "hull: points coincide");
  int i2 = -1;
  best = 0.0;
  const Eigen::Vector3d dir = (p[i1] - p[i0]).normalized();
  for (int i = 0; i < n; ++i) {
    const double d = (p[i] - p[i0]).cross(dir).norm();
    if (d > best) best = d, i2 = i;
  }
  if (i2 < 0 || best <= eps) throw Error(ErrorKind::kDegenerateInput, "hull: points are collinear");
  int i3 = -1;
  best = 0.0;
  const Eigen::Vector3d pn = (p[i1] - p[i0]).cross(p[i2] - p[i0]).normalized();
  for (int i = 0; i < n; ++i) {
    const double d = std::fabs((p[i] - p[i0]).dot(pn));
    if (d > best) best = d, i3 = i;
  }
  if (i3 < 0 || best <= eps) throw Error(ErrorKind::kDegenerateInput, "hull: points are coplanar");

  std::vector<Face> faces;
  std::unordered_map<std::uint64_t, int> edge_face;
  auto key = [n](int a, int b) { return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + b; };
  const Eigen::Vector3d inside = (p[i0] + p[i1] + p[i2] + p[i3]) / 4.0;
  auto add_face = [&](int a, int b, int c) {
    Face f{{a, b, c}, (p[b] - p[a]).cross(p[c] - p[a]), 0.0, true};
    const double len = f.n.norm();
    if (len > 0) f.n /= len;
    f.off = f.n.dot(p[a]);
    const int id = static_cast<int>(faces.size());
    faces.push_back(f);
    edge_face[key(a, b)] = id;
    edge_face[key(b, c)] = id;
    edge_face[key(c, a)] = id;
  };
  auto add_oriented = [&](int a, int b, int c) {
    const Eigen::Vector3d nn = (p[b] - p[a]).cross(p[c] - p[a]);
    if (nn.dot(inside - p[a]) > 0) std::swap(b, c);
    add_face(a, b, c);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  std::vector<int> visible;
  std::vector<std::pair<int, int>> horizon;
  for (int q = 0; q < n; ++q) {
    if (q == i0 || q == i1 || q == i2 || q == i3) continue;
    visible.clear();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      if (faces[f].alive && faces[f].n.dot(p[q]) - faces[f].off > eps) visible.push_back(f);
    if (visible.empty()) continue;
    for (int f : visible) faces[f].alive = false;
    horizon.clear();
    for (int f : visible) {
      for (int e = 0; e < 3; ++e) {
        const int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        const auto it = edge_face.find(key(b, a));
        if (it != edge_face.end() && faces[it->second].alive) horizon.emplace_back(a, b);
      }
    }
    for (int f : visible)
      for (int e = 0; e < 3; ++e) {
        const auto it = edge_face.find(key(faces[f].v[e], faces[f].v[(e + 1) % 3]));
        if (it != edge_face.end() && it->second == f) edge_face.erase(it);
      }
    for (const auto& [a, b] : horizon) add_face(a, b, q);
  }

  // Merge coplanar triangles into facets.
  struct Group {
    Eigen::Vector3d n;
    double off;
    std::vector<int> pts;
  };
  std::vector<Group> groups;
  for (const Face& f : faces) {
    if (!f.alive) continue;
    Group* g = nullptr;
    for (auto& cand : groups)
      if (cand.n.dot(f.n) > 1.0 - 1e-10 && std::fabs(cand.off - f.off) <= 1e-9 * scale) {
        g = &cand;
        break;
      }
    if (!g) {
      groups.push_back({f.n, f.off, {}});
      g = &groups.back();
    }
    for (int v : f.v) g->pts.push_back(v);
  }

  HullResult r;
  r.dim = 3;
  std::vector<char> is_vertex(n, 0);
  for (auto& g : groups) {
    std::sort(g.pts.begin(), g.pts.end());
    g.pts.erase(std::unique(g.pts.begin(), g.pts.end()), g.pts.end());
    // In-plane basis with e1 x e2 = n, so counter-clockwise in (e1, e2) is
    // counter-clockwise seen from outside.
    Eigen::Vector3d e1 = (std::fabs(g.n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY())
                             .cross(g.n)
                             .normalized();
    Eigen::Vector3d e2 = g.n.cross(e1);
    std::vector<Vec> flat(n);
    for (int v : g.pts) {
      Vec w(2);
      w << p[v].dot(e1), p[v].dot(e2);
      flat[v] = w;
    }
    std::vector<int> cyc = chain2(flat, g.pts, 1e-12);
    if (cyc.size() < 3) continue;
    Vec nrm(3);
    nrm << g.n.x(), g.n.y(), g.n.z();
    for (int v : cyc) is_vertex[v] = 1;
    r.facets.push_back({nrm, g.off, cyc});
  }
  for (int i = 0; i < n; ++i)
    if (is_vertex[i]) r.vertices.push_back(i);
  return r;
}

}  // namespace

HullResult compute_hull(const std::vector<Vec>& points, int dim) {
  if (dim < 1 || dim > 3) throw Error(ErrorKind::kInvalidArgument, "hull: dimension must be 1, 2 or 3");
  if (static_cast<int>(points.size()) < dim + 1)
    throw Error(ErrorKind::kDegenerateInput, "hull: need at least dim+1 points");
  for (const auto& p : points)
    if (p.size() != dim) throw Error(ErrorKind::kInvalidArgument, "hull: point dimension mismatch");
  switch (dim) {
    case 1: return hull1(points);
    case 2: return hull2(points);
    default: return hull3(points);
  }
}

}  // namespace conehull
