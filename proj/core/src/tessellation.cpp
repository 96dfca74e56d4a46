#include "conehull/tessellation.hpp"

#include <algorithm>
#include <cmath>

#include "conehull/arrangement.hpp"
#include "conehull/constants.hpp"
#include "conehull/errors.hpp"
#include "conehull/samplers.hpp"

namespace conehull {
namespace {

constexpr int kMaxDoublings = 20;
constexpr int kWindowRetries = 10;
constexpr long kWindowAttemptCap = 100000;

UnitVector random_direction(int d, RngStream& rng) {
  for (;;) {
    Vec g(d);
    for (int i = 0; i < d; ++i) g(i) = rng.normal();
    if (g.norm() > 1e-150) return UnitVector::normalize(g);
  }
}

void check_dim(int d) {
  if (d < 2 || d > 3) throw Error(ErrorKind::kInvalidArgument, "tessellation: d must be 2 or 3");
}

}  // namespace

double intensity_gamma(int d) { return gamma_intensity(d); }

HyperplaneProcessSample sample_pht(int d, double gamma, double R, RngStream& rng) {
  if (!(R > 0) || !(gamma > 0)) throw Error(ErrorKind::kInvalidArgument, "sample_pht: gamma and R must be positive");
  if (d < 1 || d > kMaxDim) throw Error(ErrorKind::kInvalidArgument, "sample_pht: bad dimension");
  HyperplaneProcessSample s;
  s.d = d;
  s.intensity = gamma;
  s.window_radius = R;
  const std::uint64_t count = rng.poisson(2.0 * gamma * R);
  for (std::uint64_t i = 0; i < count; ++i) {
    UnitVector u = random_direction(d, rng);
    const double t = R * rng.uniform();
    s.hyperplanes.push_back({std::move(u), t});
  }
  return s;
}

std::vector<Cell> tessellate_window(const HyperplaneProcessSample& sample) {
  const int d = sample.d;
  check_dim(d);
  const double R = sample.window_radius;
  const int D = d + 1;
  std::vector<Vec> normals;
  // Box facets: index 2i is x_i <= R, 2i+1 is x_i >= -R; inward normals.
  for (int i = 0; i < d; ++i) {
    Vec a = Vec::Zero(D), b = Vec::Zero(D);
    a(i) = -1.0;
    a(d) = R;
    b(i) = 1.0;
    b(d) = R;
    normals.push_back(a.normalized());
    normals.push_back(b.normalized());
  }
  ArrangementCell box;
  box.signs.assign(2 * d, 1);
  for (int corner = 0; corner < (1 << d); ++corner) {
    Vec x(D);
    std::vector<int> tight;
    for (int i = 0; i < d; ++i) {
      const bool plus = corner & (1 << i);
      x(i) = plus ? R : -R;
      tight.push_back(plus ? 2 * i : 2 * i + 1);
    }
    x(d) = 1.0;
    std::sort(tight.begin(), tight.end());
    box.generators.rays.push_back({UnitVector::normalize(x), tight});
  }
  for (const auto& h : sample.hyperplanes) {
    Vec a(D);
    a.head(d) = h.direction.coords();
    a(d) = -h.distance;
    normals.push_back(a.normalized());
  }
  const auto cells = refine_cells(D, normals, box);
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    std::vector<Vec> verts;
    bool complete = true;
    for (const auto& r : c.generators.rays) {
      const Vec& x = r.direction.coords();
      Vec v = x.head(d) / x(d);
      if (r.tight.front() < 2 * d) complete = false;
      if (v.norm() > R) complete = false;
      verts.push_back(std::move(v));
    }
    out.push_back({Polytope::from_vertices(std::move(verts), d), complete});
  }
  return out;
}

std::optional<Polytope> zero_cell_of(const std::vector<AffineHyperplane>& hs, int d) {
  if (static_cast<int>(hs.size()) < d + 1) return std::nullopt;
  std::vector<Vec> poles;
  poles.reserve(hs.size());
  for (const auto& h : hs) poles.push_back(h.direction.coords() / h.distance);
  try {
    const Polytope hull = Polytope::hull_of(poles, d);
    for (const auto& f : hull.facets())
      if (!(f.offset > 0)) return std::nullopt;
    return polar_polytope(hull);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDegenerateInput || e.kind() == ErrorKind::kOriginNotInterior) return std::nullopt;
    throw;
  }
}

ZeroCellSample sample_zero_cell_full(int d, double gamma, RngStream& rng) {
  check_dim(d);
  if (!(gamma > 0)) throw Error(ErrorKind::kInvalidArgument, "sample_zero_cell: gamma must be positive");
  const double rate = 2.0 * gamma;  // hyperplanes per unit of distance
  double R = 4.0 / gamma;
  std::vector<AffineHyperplane> hs;
  double next = rng.exponential() / rate;
  for (int doubling = 0; doubling <= kMaxDoublings; ++doubling) {
    while (next <= R) {
      hs.push_back({random_direction(d, rng), next});
      next += rng.exponential() / rate;
    }
    if (auto cell = zero_cell_of(hs, d)) {
      double reach = 0.0;
      for (const auto& v : cell->vertices()) reach = std::max(reach, v.norm());
      if (reach <= R) return {std::move(*cell), R, doubling, std::move(hs)};
    }
    R *= 2.0;
  }
  throw Error(ErrorKind::kIterationCap, "sample_zero_cell: cell did not close after 20 doublings");
}

Polytope sample_zero_cell(int d, double gamma, RngStream& rng) {
  return sample_zero_cell_full(d, gamma, rng).cell;
}

TypicalCellSample sample_typical_cell(int d, double gamma, RngStream& rng, const TypicalCellOptions& opts) {
  check_dim(d);
  if (opts.method == TypicalMethod::kImportance) {
    Polytope z = sample_zero_cell(d, gamma, rng);
    const double vol = z.volume();
    if (!(vol > 0)) throw Error(ErrorKind::kZeroVolume, "typical cell: zero cell of zero volume");
    return {std::move(z), 1.0 / vol, 0, 0};
  }
  const double R = opts.window_radius;
  // Taking one eligible cell uniformly from each window would weight windows
  // equally and favour sparse ones, whose cells are large. Windows are instead
  // accepted with probability k / k_ref (k eligible cells), i.e. size-biased by
  // k, with k_ref twice the expected count; exact unless k > k_ref.
  const double mean_vol = c_d(d) * std::pow(intensity_gamma(d) / gamma, d);
  const double k_ref = 2.0 * kappa(d) * std::pow(0.5 * R, d) / mean_vol;
  int empty = 0;
  for (long attempt = 0; attempt < kWindowAttemptCap; ++attempt) {
    const auto cells = tessellate_window(sample_pht(d, gamma, R, rng));
    std::vector<const Cell*> eligible;
    long bias = 0;
    for (const auto& c : cells) {
      const Vec center = sample_uniform_in_polytope(c.polytope, rng);
      if (center.norm() > 0.5 * R) continue;
      if (c.complete) eligible.push_back(&c);
      else ++bias;
    }
    if (eligible.empty()) {
      if (++empty >= kWindowRetries) break;
      continue;
    }
    if (rng.uniform() * k_ref >= static_cast<double>(eligible.size())) continue;
    const Cell& pick = *eligible[rng.uniform_int(eligible.size())];
    const Vec origin = sample_uniform_in_polytope(pick.polytope, rng);
    return {pick.polytope.translated(-origin), 1.0, static_cast<long>(eligible.size()), bias};
  }
  throw Error(ErrorKind::kEmptyWindow, "typical cell: no complete cell in the window");
}

double diameter(const Polytope& p) {
  double best = 0.0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, (v[i] - v[j]).norm());
  return best;
}

double inradius(const Polytope& p) {
  // Chebyshev centre LP max r s.t. <n_i, x> + r <= h_i, solved by visiting
  // every basic solution ((d+1)-subsets of facets).
  const int d = p.dim();
  const auto& f = p.facets();
  const int m = static_cast<int>(f.size());
  double best = 0.0;
  std::vector<int> s(d + 1);
  for (int i = 0; i <= d; ++i) s[i] = i;
  Mat a(d + 1, d + 1);
  Vec b(d + 1);
  for (;;) {
    for (int i = 0; i <= d; ++i) {
      a.row(i).head(d) = f[s[i]].normal.transpose();
      a(i, d) = 1.0;
      b(i) = f[s[i]].offset;
    }
    const auto lu = a.fullPivLu();
    if (lu.isInvertible()) {
      const Vec sol = lu.solve(b);
      const Vec x = sol.head(d);
      const double r = sol(d);
      if (r > best) {
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) ok = f[k].normal.dot(x) + r <= f[k].offset + 1e-12 * (1.0 + std::fabs(f[k].offset));
        if (ok) best = r;
      }
    }
    int i = d;
    while (i >= 0 && s[i] == m - (d + 1) + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j <= d; ++j) s[j] = s[j - 1] + 1;
  }
  return best;
}

CellFeatures cell_features(const Polytope& p) {
  if (p.dim() < 2 || p.dim() > 3) throw Error(ErrorKind::kInvalidArgument, "cell_features: d must be 2 or 3");
  return {p.volume(), p.f_vector(), inradius(p), diameter(p)};
}

Vec sample_uniform_in_polytope(const Polytope& p, RngStream& rng) {
  const auto& v = p.vertices();
  const int d = p.dim();
  if (d == 1) return v.front() + rng.uniform() * (v.back() - v.front());
  std::vector<std::vector<int>> simplices;
  std::vector<double> cum;
  double total = 0.0;
  if (d == 2) {
    const auto cyc = p.cycle();
    for (std::size_t i = 1; i + 1 < cyc.size(); ++i) {
      const Vec& a = v[cyc[0]];
      const Vec& b = v[cyc[i]];
      const Vec& c = v[cyc[i + 1]];
      total += 0.5 * std::fabs((b(0) - a(0)) * (c(1) - a(1)) - (b(1) - a(1)) * (c(0) - a(0)));
      cum.push_back(total);
      simplices.push_back({cyc[0], cyc[i], cyc[i + 1]});
    }
  } else {
    for (const auto& f : p.facets()) {
      if (std::find(f.vertices.begin(), f.vertices.end(), 0) != f.vertices.end()) continue;
      for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
        const Eigen::Vector3d a = v[0].head<3>(), b = v[f.vertices[0]].head<3>();
        const Eigen::Vector3d c = v[f.vertices[i]].head<3>(), e = v[f.vertices[i + 1]].head<3>();
        total += std::fabs((b - a).dot((c - a).cross(e - a))) / 6.0;
        cum.push_back(total);
        simplices.push_back({0, f.vertices[0], f.vertices[i], f.vertices[i + 1]});
      }
    }
  }
  const double pick = rng.uniform() * total;
  std::size_t t = std::upper_bound(cum.begin(), cum.end(), pick) - cum.begin();
  t = std::min(t, cum.size() - 1);
  // Flat Dirichlet weights via normalized exponentials.
  std::vector<double> w(d + 1);
  double sum = 0.0;
  for (auto& x : w) sum += (x = rng.exponential());
  Vec out = Vec::Zero(d);
  for (int i = 0; i <= d; ++i) out += (w[i] / sum) * v[simplices[t][i]];
  return out;
}

}  // namespace conehull
