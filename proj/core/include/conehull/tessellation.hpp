#pragma once

#include <optional>
#include <vector>

#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"

namespace conehull {

double intensity_gamma(int d);

// {x : <direction, x> = distance}, distance >= 0.
struct AffineHyperplane {
  UnitVector direction;
  double distance;
};

struct HyperplaneProcessSample {
  int d = 2;
  double intensity = 0.5;
  double window_radius = 1.0;
  std::vector<AffineHyperplane> hyperplanes;
};

// The hyperplanes of the stationary isotropic process hitting B(0, R):
// Poisson(2 gamma R) of them, uniform directions, uniform distances in [0, R].
HyperplaneProcessSample sample_pht(int d, double gamma, double R, RngStream& rng);

struct Cell {
  Polytope polytope;
  bool complete = false;  // no facet on the window, all vertices in B(0, R)
};

// Cells of the process inside the box [-R, R]^d (homogenized arrangement).
std::vector<Cell> tessellate_window(const HyperplaneProcessSample& sample);

// The cell containing 0, i.e. the polar of conv{u_i / t_i}; empty if unbounded.
std::optional<Polytope> zero_cell_of(const std::vector<AffineHyperplane>& hs, int d);

struct ZeroCellSample {
  Polytope cell;
  double radius = 0.0;  // every hyperplane at distance <= radius was generated
  int doublings = 0;
  std::vector<AffineHyperplane> hyperplanes;
};

// Exact: hyperplanes are generated by distance; the radius doubles until the
// cell fits into B(0, R). IterationCap after 20 doublings. Continuing `rng`
// afterwards yields the process beyond `radius`.
ZeroCellSample sample_zero_cell_full(int d, double gamma, RngStream& rng);
Polytope sample_zero_cell(int d, double gamma, RngStream& rng);

enum class TypicalMethod { kWindow, kImportance };

struct TypicalCellOptions {
  TypicalMethod method = TypicalMethod::kImportance;
  double window_radius = 40.0;
};

struct TypicalCellSample {
  Polytope polytope;
  double weight = 1.0;   // importance: 1 / vol(Z_0); window: 1
  long eligible = 0;     // window: complete cells with center in B(0, R/2)
  long window_bias = 0;  // window: incomplete cells with center in B(0, R/2)
};

// kWindow: one complete cell chosen uniformly among those whose uniform
// random center falls into B(0, R/2), from a window size-biased by the number
// of such cells, recentred at an independent uniform point. kImportance: Z_0 with weight 1/vol; expectations under the typical
// cell law are self-normalized ratios. EmptyWindow after 10 empty windows.
TypicalCellSample sample_typical_cell(int d, double gamma, RngStream& rng, const TypicalCellOptions& opts = {});

struct CellFeatures {
  double volume = 0.0;
  std::vector<long> f_vector;
  double inradius = 0.0;
  double diameter = 0.0;
};

CellFeatures cell_features(const Polytope& p);
double inradius(const Polytope& p);
double diameter(const Polytope& p);
Vec sample_uniform_in_polytope(const Polytope& p, RngStream& rng);

}  // namespace conehull
