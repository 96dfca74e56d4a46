#include "conehull/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <numeric>

#include "conehull/errors.hpp"

namespace conehull {

MeanEstimate mean_estimate(const std::vector<double>& xs) {
  MeanEstimate e;
  e.count = xs.size();
  if (xs.empty()) return e;
  const double n = static_cast<double>(xs.size());
  // Constant data: exact mean and zero error, free of rounding in the sums.
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
    e.mean = xs.front();
    return e;
  }
  // Two-pass for stability; the sum order is fixed so results are reproducible.
  double s = 0.0;
  for (double x : xs) s += x;
  e.mean = s / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - e.mean) * (x - e.mean);
  if (xs.size() > 1) e.std_error = std::sqrt(ss / (n - 1) / n);
  return e;
}

MeanEstimate ratio_estimate(const std::vector<double>& num, const std::vector<double>& den) {
  if (num.size() != den.size() || num.empty()) throw Error(ErrorKind::kInvalidArgument, "ratio_estimate: size mismatch");
  const double n = static_cast<double>(num.size());
  const double sn = std::accumulate(num.begin(), num.end(), 0.0);
  const double sd = std::accumulate(den.begin(), den.end(), 0.0);
  MeanEstimate e;
  e.count = num.size();
  e.mean = sn / sd;
  double ss = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double r = num[i] - e.mean * den[i];
    ss += r * r;
  }
  const double dbar = sd / n;
  if (num.size() > 1) e.std_error = std::sqrt(ss / (n - 1) / n) / std::fabs(dbar);
  return e;
}

double joint_std_error(const MeanEstimate& a, const MeanEstimate& b) { return std::hypot(a.std_error, b.std_error); }

namespace {

std::vector<std::vector<double>> standardized(const std::vector<std::vector<double>>& a,
                                              const std::vector<std::vector<double>>& b) {
  const std::size_t dim = a.front().size();
  std::vector<std::vector<double>> all(a);
  all.insert(all.end(), b.begin(), b.end());
  for (const auto& x : all)
    if (x.size() != dim) throw Error(ErrorKind::kInvalidArgument, "energy_test: feature dimension mismatch");
  const double n = static_cast<double>(all.size());
  for (std::size_t j = 0; j < dim; ++j) {
    double m = 0.0;
    for (const auto& x : all) m += x[j];
    m /= n;
    double v = 0.0;
    for (const auto& x : all) v += (x[j] - m) * (x[j] - m);
    const double sd = std::sqrt(v / n);
    for (auto& x : all) x[j] = sd > 0 ? (x[j] - m) / sd : 0.0;
  }
  return all;
}

}  // namespace

EnergyTest energy_test(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                       int permutations, RngStream& rng) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::kInvalidArgument, "energy_test: empty sample");
  const auto z = standardized(a, b);
  const std::size_t N = z.size(), na = a.size(), nb = b.size();
  const std::size_t dim = z.front().size();

  std::vector<float> D(N * N, 0.0f);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += (z[i][k] - z[j][k]) * (z[i][k] - z[j][k]);
      D[i * N + j] = D[j * N + i] = static_cast<float>(std::sqrt(s));
    }
  std::vector<double> c(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += D[i * N + j];
    c[i] = s;
  }
  const double total = std::accumulate(c.begin(), c.end(), 0.0);
  const double fa = static_cast<double>(na), fb = static_cast<double>(nb);

  // With indicator m of group A: S_AA = m'Dm, S_AB = m'c - S_AA,
  // S_BB = total - 2 m'c + S_AA.
  auto stat = [&](const std::vector<std::size_t>& idx_a) {
    double s_aa = 0.0, mc = 0.0;
    std::vector<char> in(N, 0);
    for (auto i : idx_a) in[i] = 1;
    for (auto i : idx_a) {
      mc += c[i];
      const float* row = &D[i * N];
      double r = 0.0;
      for (std::size_t j = 0; j < N; ++j)
        if (in[j]) r += row[j];
      s_aa += r;
    }
    const double s_ab = mc - s_aa;
    const double s_bb = total - 2.0 * mc + s_aa;
    const double e = 2.0 * s_ab / (fa * fb) - s_aa / (fa * fa) - s_bb / (fb * fb);
    return fa * fb / (fa + fb) * e;
  };

  std::vector<std::size_t> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  EnergyTest out;
  out.statistic = stat(std::vector<std::size_t>(perm.begin(), perm.begin() + static_cast<long>(na)));
  out.permutations = permutations;
  long ge = 0;
  for (int p = 0; p < permutations; ++p) {
    // Partial Fisher–Yates: only the first na positions are needed.
    for (std::size_t i = 0; i < na; ++i) {
      const std::size_t j = i + rng.uniform_int(N - i);
      std::swap(perm[i], perm[j]);
    }
    const double t = stat(std::vector<std::size_t>(perm.begin(), perm.begin() + static_cast<long>(na)));
    if (t >= out.statistic) ++ge;
  }
  out.p_value = static_cast<double>(ge + 1) / static_cast<double>(permutations + 1);
  return out;
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsTest ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::kInvalidArgument, "ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double sq = std::sqrt(ne);
  return {d, kolmogorov_sf((sq + 0.12 + 0.11 / sq) * d)};
}

KsTest ks_uniform(std::vector<double> xs) {
  if (xs.empty()) throw Error(ErrorKind::kInvalidArgument, "ks: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::clamp(xs[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  const double sq = std::sqrt(n);
  return {d, kolmogorov_sf((sq + 0.12 + 0.11 / sq) * d)};
}

namespace {
double chi2_sf(double x, int dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, x)));
}
}  // namespace

ChiSquareTest chi_square_test(const std::vector<long>& observed, const std::vector<double>& probabilities) {
  if (observed.size() != probabilities.size() || observed.empty())
    throw Error(ErrorKind::kInvalidArgument, "chi_square_test: size mismatch");
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), 0L));
  ChiSquareTest t;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probabilities[i];
    if (e <= 0) continue;
    t.statistic += (observed[i] - e) * (observed[i] - e) / e;
    ++t.dof;
  }
  t.dof -= 1;
  t.p_value = chi2_sf(t.statistic, t.dof);
  return t;
}

ChiSquareTest chi_square_homogeneity(const std::vector<long>& a, const std::vector<long>& b) {
  std::map<long, std::pair<double, double>> counts;
  for (long x : a) counts[x].first += 1;
  for (long x : b) counts[x].second += 1;
  // Merge sparse cells left to right.
  std::vector<std::pair<double, double>> cells;
  std::pair<double, double> acc{0, 0};
  for (const auto& [k, v] : counts) {
    acc.first += v.first;
    acc.second += v.second;
    if (acc.first + acc.second >= 5) {
      cells.push_back(acc);
      acc = {0, 0};
    }
  }
  if (acc.first + acc.second > 0) {
    if (cells.empty()) cells.push_back(acc);
    else {
      cells.back().first += acc.first;
      cells.back().second += acc.second;
    }
  }
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  ChiSquareTest t;
  for (const auto& [ca, cb] : cells) {
    const double tot = ca + cb;
    const double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
    t.statistic += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
  }
  t.dof = static_cast<int>(cells.size()) - 1;
  t.p_value = chi2_sf(t.statistic, t.dof);
  return t;
}

}  // namespace conehull
