#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conehull/geom_core.hpp"

namespace conehull {

// 2 * sum_{m < D} binom(n - 1, m): cells cut out by n generic linear
// hyperplanes of R^D.
std::uint64_t schlaefli_count(int n, int D);

struct ArrangementCell {
  SignVector signs;
  ConeGenerators generators;
};

// Incremental insertion: every cell strictly crossed by a new hyperplane is
// split along it, new rays being the crossings of its edges. Works for D <= 4.
//
// With `initial` unset the refinement starts from all of R^D. Otherwise it
// starts from the single pointed cell `initial`, whose signs and ray tight
// sets already refer to normals[0 .. initial->signs.size()).
// NonGeneric if any ray comes within 1e-12 of a hyperplane it is not on.
std::vector<ArrangementCell> refine_cells(int dim, const std::vector<Vec>& normals,
                                          const std::optional<ArrangementCell>& initial = std::nullopt);

class ConicalArrangement {
 public:
  ConicalArrangement(HyperplaneSet hyperplanes, std::vector<ArrangementCell> cells);

  int ambient_dim() const { return hyperplanes_->front().normal.ambient_dim(); }
  std::size_t num_hyperplanes() const { return hyperplanes_->size(); }
  const std::vector<LinearHyperplane>& hyperplanes() const { return *hyperplanes_; }
  const HyperplaneSet& hyperplane_set() const { return hyperplanes_; }
  std::size_t size() const { return raw_.size(); }
  const std::vector<ArrangementCell>& raw_cells() const { return raw_; }
  PolyhedralCone cell(std::size_t i) const;
  std::vector<PolyhedralCone> cells() const;
  // Index of the cell whose sign vector matches x, or nullopt on a boundary.
  std::optional<std::size_t> locate(const Vec& x) const;

 private:
  HyperplaneSet hyperplanes_;
  std::vector<ArrangementCell> raw_;
};

// 1 <= n <= 64 hyperplanes in R^2 .. R^4.
ConicalArrangement enumerate_cones(const HyperplaneSet& hyperplanes);

struct FaceCensus {
  int n = 0;
  int ambient_dim = 0;  // D = d + 1
  std::uint64_t cells = 0;
  // Indexed by face dimension j = 1..D (entry 0 unused).
  std::vector<std::uint64_t> faces;           // N_j
  std::vector<std::uint64_t> incidence_sum;   // sum over cells of f_j(cone)
  std::vector<std::uint64_t> faces_formula;   // binom(n, D-j) C(n-D+j, j)
  bool incidence_identity = false;            // sum f_j == 2^{D-j} N_j for all j
  bool faces_match_formula = false;
  // Spherical k-faces (k = 0..d-1): sum over cells and the closed form
  // 2^{d-k} binom(n, d-k) C(n-d+k, k+1), so that the per-arrangement mean is
  // spherical_sum[k] / cells.
  std::vector<std::uint64_t> spherical_sum;
  std::vector<std::uint64_t> spherical_formula;
  bool spherical_match = false;
};

// NotPointed when some cell has lineality (n < D).
FaceCensus arrangement_face_census(const ConicalArrangement& arr);

// 2^{d-k} binom(n, d-k) C(n-d+k, k+1); divide by C(n, d+1) for E f_k.
std::uint64_t spherical_face_total(int n, int d, int k);

}  // namespace conehull
