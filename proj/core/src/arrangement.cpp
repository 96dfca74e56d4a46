#include "conehull/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "conehull/errors.hpp"

namespace conehull {
namespace {

struct ERay {
  Vec x;
  std::vector<int> tight;
};

int common_count(const std::vector<int>& a, const std::vector<int>& b) {
  int c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) ++c, ++i, ++j;
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return c;
}

std::vector<int> common(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_generic(const ERay& r, const std::vector<Vec>& normals, int upto) {
  std::size_t t = 0;
  for (int k = 0; k < upto; ++k) {
    if (t < r.tight.size() && r.tight[t] == k) {
      ++t;
      continue;
    }
    if (std::fabs(normals[k].dot(r.x)) <= kSignEps)
      throw Error(ErrorKind::kNonGeneric, "arrangement: ray lies on too many hyperplanes");
  }
}

}  // namespace

std::uint64_t schlaefli_count(int n, int D) {
  if (n < 1 || D < 1) throw Error(ErrorKind::kInvalidArgument, "schlaefli_count: n, D >= 1");
  std::uint64_t s = 0;
  for (int m = 0; m < D; ++m) s += binomial_u64(n - 1, m);
  return 2 * s;
}

std::vector<ArrangementCell> refine_cells(int dim, const std::vector<Vec>& normals,
                                          const std::optional<ArrangementCell>& initial) {
  if (dim < 2 || dim > 4) throw Error(ErrorKind::kInvalidArgument, "arrangement: ambient dimension must be 2..4");
  struct ECell {
    std::vector<ERay> rays;
    SignVector signs;
  };
  std::vector<ECell> cells(1);
  std::vector<Vec> lines;
  int start = 0;
  if (initial) {
    if (!initial->generators.lines.empty())
      throw Error(ErrorKind::kInvalidArgument, "arrangement: initial cell must be pointed");
    for (const auto& r : initial->generators.rays) cells[0].rays.push_back({r.direction.coords(), r.tight});
    cells[0].signs = initial->signs;
    start = static_cast<int>(initial->signs.size());
  } else {
    for (int i = 0; i < dim; ++i) lines.push_back(Vec::Unit(dim, i));
  }

  std::vector<ECell> next;
  std::vector<double> s;
  for (int m = start; m < static_cast<int>(normals.size()); ++m) {
    const Vec& a = normals[m];
    if (a.size() != dim) throw Error(ErrorKind::kInvalidArgument, "arrangement: normal dimension mismatch");
    next.clear();
    if (!lines.empty()) {
      int best = 0;
      for (int i = 1; i < static_cast<int>(lines.size()); ++i)
        if (std::fabs(a.dot(lines[i])) > std::fabs(a.dot(lines[best]))) best = i;
      const Vec l0 = lines[best];
      const double t0 = a.dot(l0);
      if (std::fabs(t0) <= kSignEps)
        throw Error(ErrorKind::kNonGeneric, "arrangement: normal in the span of earlier normals");
      std::vector<Vec> projected;
      for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
        if (i == best) continue;
        Vec l = lines[i] - (a.dot(lines[i]) / t0) * l0;
        for (const auto& q : projected) l -= q.dot(l) * q;
        l.normalize();
        projected.push_back(l);
      }
      lines = std::move(projected);
      std::vector<int> all_prev(m);
      for (int k = 0; k < m; ++k) all_prev[k] = k;
      const Vec up = (t0 > 0 ? 1.0 : -1.0) * l0;
      for (auto& c : cells) {
        std::vector<ERay> base;
        for (auto& r : c.rays) {
          ERay nr{(r.x - (a.dot(r.x) / t0) * l0).normalized(), r.tight};
          nr.tight.push_back(m);
          base.push_back(std::move(nr));
        }
        for (int sgn : {1, -1}) {
          ECell nc{base, c.signs};
          nc.rays.push_back({sgn * up, all_prev});
          nc.signs.push_back(static_cast<std::int8_t>(sgn));
          next.push_back(std::move(nc));
        }
      }
      cells.swap(next);
      continue;
    }

    for (auto& c : cells) {
      s.resize(c.rays.size());
      bool pos = false, neg = false;
      for (std::size_t i = 0; i < c.rays.size(); ++i) {
        s[i] = a.dot(c.rays[i].x);
        if (std::fabs(s[i]) <= kSignEps) throw Error(ErrorKind::kNonGeneric, "arrangement: ray on a new hyperplane");
        (s[i] > 0 ? pos : neg) = true;
      }
      if (!(pos && neg)) {
        c.signs.push_back(static_cast<std::int8_t>(pos ? 1 : -1));
        next.push_back(std::move(c));
        continue;
      }
      ECell plus, minus;
      for (std::size_t i = 0; i < c.rays.size(); ++i) (s[i] > 0 ? plus : minus).rays.push_back(c.rays[i]);
      std::vector<Vec> sub(dim - 1);
      for (std::size_t i = 0; i < c.rays.size(); ++i) {
        if (s[i] <= 0) continue;
        for (std::size_t j = 0; j < c.rays.size(); ++j) {
          if (s[j] >= 0) continue;
          const auto& p = c.rays[i];
          const auto& q = c.rays[j];
          if (common_count(p.tight, q.tight) < dim - 2) continue;
          ERay nr;
          nr.tight = common(p.tight, q.tight);
          if (static_cast<int>(nr.tight.size()) != dim - 2)
            throw Error(ErrorKind::kNonGeneric, "arrangement: adjacent rays share too many hyperplanes");
          nr.tight.push_back(m);
          for (int k = 0; k < dim - 1; ++k) sub[k] = normals[nr.tight[k]];
          Vec x = generalized_cross(sub);
          const Vec edge = s[i] * q.x - s[j] * p.x;
          if (x.dot(edge) < 0) x = -x;
          const double len = x.norm();
          if (!(len > kSignEps)) throw Error(ErrorKind::kNonGeneric, "arrangement: dependent normals");
          nr.x = x / len;
          check_generic(nr, normals, m);
          plus.rays.push_back(nr);
          minus.rays.push_back(std::move(nr));
        }
      }
      plus.signs = c.signs;
      plus.signs.push_back(1);
      minus.signs = std::move(c.signs);
      minus.signs.push_back(-1);
      next.push_back(std::move(plus));
      next.push_back(std::move(minus));
    }
    cells.swap(next);
  }

  std::vector<ArrangementCell> out;
  out.reserve(cells.size());
  for (auto& c : cells) {
    ArrangementCell ac;
    ac.signs = std::move(c.signs);
    ac.generators.lines = lines;
    for (auto& r : c.rays) ac.generators.rays.push_back({UnitVector::normalize(r.x), std::move(r.tight)});
    out.push_back(std::move(ac));
  }
  return out;
}

ConicalArrangement::ConicalArrangement(HyperplaneSet hyperplanes, std::vector<ArrangementCell> cells)
    : hyperplanes_(std::move(hyperplanes)), raw_(std::move(cells)) {}

PolyhedralCone ConicalArrangement::cell(std::size_t i) const {
  const auto& c = raw_.at(i);
  Vec p = Vec::Zero(ambient_dim());
  for (const auto& r : c.generators.rays) p += r.direction.coords();
  return PolyhedralCone::with_generators(hyperplanes_, c.signs, c.generators, p);
}

std::vector<PolyhedralCone> ConicalArrangement::cells() const {
  std::vector<PolyhedralCone> out;
  out.reserve(raw_.size());
  for (std::size_t i = 0; i < raw_.size(); ++i) out.push_back(cell(i));
  return out;
}

std::optional<std::size_t> ConicalArrangement::locate(const Vec& x) const {
  SignVector sv(num_hyperplanes());
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const int sg = sign_of((*hyperplanes_)[i].normal.coords().dot(x), 0.0);
    if (sg == 0) return std::nullopt;
    sv[i] = static_cast<std::int8_t>(sg);
  }
  for (std::size_t i = 0; i < raw_.size(); ++i)
    if (raw_[i].signs == sv) return i;
  return std::nullopt;
}

ConicalArrangement enumerate_cones(const HyperplaneSet& hyperplanes) {
  if (!hyperplanes || hyperplanes->empty() || hyperplanes->size() > 64)
    throw Error(ErrorKind::kInvalidArgument, "enumerate_cones: need 1..64 hyperplanes");
  const int dim = hyperplanes->front().normal.ambient_dim();
  std::vector<Vec> normals;
  for (const auto& h : *hyperplanes) normals.push_back(h.normal.coords());
  return ConicalArrangement(hyperplanes, refine_cells(dim, normals));
}

std::uint64_t spherical_face_total(int n, int d, int k) {
  const std::uint64_t c = n - d + k >= 1 ? schlaefli_count(n - d + k, k + 1) : 0;
  return (std::uint64_t{1} << (d - k)) * binomial_u64(n, d - k) * c;
}

FaceCensus arrangement_face_census(const ConicalArrangement& arr) {
  const int D = arr.ambient_dim();
  const int n = static_cast<int>(arr.num_hyperplanes());
  FaceCensus fc;
  fc.n = n;
  fc.ambient_dim = D;
  fc.cells = arr.size();
  fc.faces.assign(D + 1, 0);
  fc.incidence_sum.assign(D + 1, 0);
  fc.faces_formula.assign(D + 1, 0);
  std::vector<std::set<SignVector>> keys(D + 1);
  for (const auto& c : arr.raw_cells()) {
    if (!c.generators.lines.empty())
      throw Error(ErrorKind::kNotPointed, "face census: arrangement has non-pointed cells");
    for (int j = 1; j <= D; ++j) {
      const int sz = D - j;
      std::set<std::vector<int>> subsets;
      for (const auto& r : c.generators.rays) {
        if (static_cast<int>(r.tight.size()) != D - 1) throw Error(ErrorKind::kNonGeneric, "face census: non-simple ray");
        // Subsets of size sz of the ray's tight set (at most 3 elements).
        const int t = D - 1;
        for (int mask = 0; mask < (1 << t); ++mask) {
          if (__builtin_popcount(mask) != sz) continue;
          std::vector<int> sub;
          for (int b = 0; b < t; ++b)
            if (mask & (1 << b)) sub.push_back(r.tight[b]);
          subsets.insert(std::move(sub));
        }
      }
      fc.incidence_sum[j] += subsets.size();
      for (const auto& sub : subsets) {
        SignVector key = c.signs;
        for (int i : sub) key[i] = 0;
        keys[j].insert(std::move(key));
      }
    }
  }
  fc.incidence_identity = true;
  fc.faces_match_formula = true;
  for (int j = 1; j <= D; ++j) {
    fc.faces[j] = keys[j].size();
    fc.faces_formula[j] = binomial_u64(n, D - j) * (n - D + j >= 1 ? schlaefli_count(n - D + j, j) : 0);
    if (fc.incidence_sum[j] != (std::uint64_t{1} << (D - j)) * fc.faces[j]) fc.incidence_identity = false;
    if (fc.faces[j] != fc.faces_formula[j]) fc.faces_match_formula = false;
  }
  const int d = D - 1;
  fc.spherical_match = true;
  for (int k = 0; k < d; ++k) {
    fc.spherical_sum.push_back(fc.incidence_sum[k + 1]);
    fc.spherical_formula.push_back(spherical_face_total(n, d, k));
    if (fc.spherical_sum.back() != fc.spherical_formula.back()) fc.spherical_match = false;
  }
  return fc;
}

}  // namespace conehull
