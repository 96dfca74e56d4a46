#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "conehull/linalg.hpp"

namespace conehull {

class RngStream;

class UnitVector {
 public:
  // Normalizes v; DegenerateInput if v is (numerically) zero.
  static UnitVector normalize(const Vec& v);
  // Accepts v only if | |v| - 1 | <= 1e-12.
  static UnitVector from_unit(const Vec& v);

  int ambient_dim() const { return static_cast<int>(v_.size()); }
  const Vec& coords() const { return v_; }
  double operator[](int i) const { return v_(i); }
  UnitVector operator-() const { return UnitVector(-v_); }

 private:
  explicit UnitVector(Vec v) : v_(std::move(v)) {}
  Vec v_;
};

// normal^perp. (u) and (-u) describe the same hyperplane.
struct LinearHyperplane {
  UnitVector normal;
};

using SignVector = std::vector<std::int8_t>;
using HyperplaneSet = std::shared_ptr<const std::vector<LinearHyperplane>>;

HyperplaneSet make_hyperplanes(std::vector<LinearHyperplane> hs);
HyperplaneSet make_hyperplanes(const std::vector<Vec>& normals);

struct ConeRay {
  UnitVector direction;
  std::vector<int> tight;  // hyperplanes containing the ray, ascending
};

struct ConeGenerators {
  std::vector<Vec> lines;  // orthonormal basis of the lineality space
  std::vector<ConeRay> rays;
};

// Cell {x : signs_i <normal_i, x> >= 0} of a linear arrangement.
class PolyhedralCone {
 public:
  // Generators are computed eagerly. Up to 64 hyperplanes by exhaustive
  // (D-1)-subset enumeration; beyond that an interior hint is required and
  // rays come from the dual hull in the chart through the hint.
  // DegenerateInput if the cell has empty interior.
  PolyhedralCone(HyperplaneSet hyperplanes, SignVector signs,
                 std::optional<Vec> interior_hint = std::nullopt);

  // For callers that already hold exact generators (arrangement engine).
  static PolyhedralCone with_generators(HyperplaneSet hyperplanes, SignVector signs,
                                        ConeGenerators generators, Vec interior);

  // pos(g_1, ..., g_k) as an H-cone whose hyperplanes are the facet normals.
  // Requires the g_i to span R^D and pos(g) != R^D.
  static PolyhedralCone positive_hull(const std::vector<Vec>& gens);

  int ambient_dim() const { return dim_; }
  std::size_t size() const { return hyperplanes_->size(); }
  const std::vector<LinearHyperplane>& hyperplanes() const { return *hyperplanes_; }
  const HyperplaneSet& hyperplane_set() const { return hyperplanes_; }
  const SignVector& signs() const { return signs_; }
  const ConeGenerators& generators() const { return gens_; }
  bool pointed() const { return gens_.lines.empty(); }
  // Strictly interior, unit length.
  const Vec& interior_point() const { return interior_; }
  Vec oriented_normal(std::size_t i) const;

  bool contains(const Vec& x, double eps = kSignEps) const;

  // Image under an orthogonal map q; generators are transported, not recomputed.
  PolyhedralCone transformed(const Mat& q) const;
  // Replaces normal i by its negative and flips sign i: the same set.
  PolyhedralCone flipped(std::size_t i) const;

 private:
  PolyhedralCone() = default;
  int dim_ = 0;
  HyperplaneSet hyperplanes_;
  SignVector signs_;
  ConeGenerators gens_;
  Vec interior_;
};

// Exhaustive generator enumeration for {x : <g_i, x> >= 0}; also used by the
// Cover-Efron feasibility test. Throws DegenerateInput on empty interior,
// NonGeneric when a ray is tight on too many hyperplanes.
ConeGenerators enumerate_generators(const std::vector<Vec>& oriented_normals, int dim);

std::vector<UnitVector> extreme_rays(const PolyhedralCone& cone);
bool contains(const PolyhedralCone& cone, const Vec& x);

// (f_0, ..., f_d) of cone ∩ S^d, d = ambient - 1, with f_d = 1. NotPointed for
// cones with lineality.
std::vector<long> face_counts_spherical(const PolyhedralCone& cone);

enum class SolidAngleMethod { kExact, kMonteCarlo };
struct SolidAngle {
  double value = 0.0;
  double std_error = 0.0;
};
// Normalized solid angle. Exact mode needs the pointed part to have rank <= 3.
SolidAngle solid_angle(const PolyhedralCone& cone, SolidAngleMethod method = SolidAngleMethod::kExact,
                       long samples = 0, RngStream* rng = nullptr);

// ---------------------------------------------------------------------------
// Hulls and polytopes (dimension 1..3).

struct HullFacet {
  Vec normal;     // outer unit normal
  double offset;  // <normal, x> <= offset on the hull
  // d=2: edge (a, b) traversed counter-clockwise; d=3: counter-clockwise seen
  // from outside.
  std::vector<int> vertices;
};

struct HullResult {
  int dim = 0;
  std::vector<int> vertices;  // indices of extreme points, ascending
  std::vector<HullFacet> facets;
};

// DegenerateInput if the points do not span an affine dim-space.
HullResult compute_hull(const std::vector<Vec>& points, int dim);

class Polytope {
 public:
  // Vertices must be in convex position. Sorted by first coordinate (ties
  // broken lexicographically; ties are legal here, see coordinate reps).
  static Polytope from_vertices(std::vector<Vec> vertices, int dim);
  // Extreme points of the input; interior points are dropped.
  static Polytope hull_of(const std::vector<Vec>& points, int dim);
  static Polytope from_json(const nlohmann::json& j);

  int dim() const { return dim_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<HullFacet>& facets() const { return facets_; }
  // d=2: vertex indices counter-clockwise.
  std::vector<int> cycle() const;

  double volume() const;
  bool contains(const Vec& x, double eps = kCoordEps) const;
  bool has_tied_first_coordinates() const;
  // d=1: (2); d=2: (m, m); d=3: (V, E, F).
  std::vector<long> f_vector() const;

  Polytope scaled(double s) const;
  Polytope translated(const Vec& t) const;
  nlohmann::json to_json() const;

 private:
  friend Polytope polar_polytope(const Polytope& p);
  Polytope() = default;
  void build(std::vector<Vec> pts, bool require_convex_position);
  // Adopts vertices and facets as given; sorts the vertices and remaps indices.
  void adopt(std::vector<Vec> pts, std::vector<HullFacet> facets);
  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<HullFacet> facets_;
};

// Spec-level hull: like Polytope::hull_of, but exact ties in the first
// coordinate of hull vertices raise TiedFirstCoordinate.
Polytope convex_hull(const std::vector<Vec>& points, int dim);

// Facet (u, h) -> vertex u / h. OriginNotInterior unless 0 is interior. The
// facets of the result are built from the incidences of p (vertex w of p ->
// facet {<w, x> <= 1}), not by re-hulling, so nearly coplanar polar vertices
// cannot fold the result.
Polytope polar_polytope(const Polytope& p);

}  // namespace conehull
