#pragma once

#include <optional>
#include <vector>

#include "conehull/arrangement.hpp"
#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"

namespace conehull {

// The reference pole e = e_{d+1} of S^d ⊂ R^{d+1}.
Vec north_pole(int d);

UnitVector sample_uniform_sphere(int d, RngStream& rng);
// Uniform on S^d_e = {x in S^d : <x, e> >= 0}.
UnitVector sample_uniform_half_sphere(int d, RngStream& rng);
// (u_1, ..., u_d) / u_{d+1}.
Vec gnomonic(const Vec& u);
// d-dimensional Cauchy (beta-prime, beta = (d+1)/2) point, as the gnomonic
// image of a uniform half-sphere point.
Vec sample_cauchy_point(int d, RngStream& rng);

enum class ConeKind { kSchlaefli, kCoverEfron, kRn, kSMinusE };
const char* to_string(ConeKind kind);

struct ConeSample {
  std::optional<PolyhedralCone> cone;  // empty when not full-dimensional
  // Hyperplane normals (schlaefli, s_minus_e) or positive generators
  // (cover_efron, r_n).
  std::vector<Vec> generators;
  ConeKind kind = ConeKind::kSchlaefli;
  long trials = 1;
  bool full_dimensional = true;
  std::uint64_t cell_count = 0;  // schlaefli: C(n, d+1)
  std::size_t cell_index = 0;    // schlaefli via enumeration: index of the chosen cell
};

// n iid hyperplanes, then one of the C(n, d+1) cells uniformly. Up to 64
// hyperplanes the arrangement is enumerated; beyond that a vertex is drawn
// uniformly, then one of its 2^d incident cells, and the cell is kept with
// probability (d+1)/f_0 -- which is again exactly uniform over cells.
ConeSample sample_schlaefli_cone(int n, int d, RngStream& rng);
// Uniform cell of a fixed arrangement.
ConeSample sample_schlaefli_cell(const ConicalArrangement& arr, RngStream& rng);

// True iff pos(u_1, ..., u_n) != R^{D}, decided by exhaustive ray enumeration
// of {y : <u_i, y> <= 0}.
bool positive_hull_is_proper(const std::vector<Vec>& u);
// Rejection until pos(U_i) != R^{d+1}. IterationCap when 2^n / C(n, d+1) > 1e6.
ConeSample sample_cover_efron(int n, int d, RngStream& rng);
ConeSample sample_s_minus_e(int n, int d, RngStream& rng);
ConeSample sample_r_n(int n, int d, RngStream& rng);

enum class CellSampler { kAuto, kTriangles, kCapRejection };
// Uniform on cone ∩ S^d. kAuto: exact fan sampling for d <= 2, cap rejection
// above. IterationCap after 1e7 rejection trials.
UnitVector sample_uniform_in_cell(const PolyhedralCone& cone, RngStream& rng,
                                  CellSampler method = CellSampler::kAuto);

// Points of the Poisson process on R^d \ {0} with intensity
// (2/omega_{d+1}) |y|^{-(d+1)} dy, generated from the outside in. Generation
// stops once the hull of the points so far contains the ball of the next
// radius, so the hull of the returned points is conv(Π). Some returned points
// may be interior. IterationCap beyond 1e5 points.
std::vector<Vec> sample_poisson_Pi(int d, RngStream& rng);

}  // namespace conehull
