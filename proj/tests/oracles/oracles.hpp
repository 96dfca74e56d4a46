#pragma once
// Independent reference implementations used only by the tests. None of them
// share code with the library.

#include <Eigen/Dense>
#include <vector>

namespace oracle {

using V2 = Eigen::Vector2d;
using V3 = Eigen::Vector3d;

// Jarvis march; returns indices of the extreme points (no collinear points).
std::vector<int> gift_wrap(const std::vector<V2>& pts);

double shoelace(const std::vector<V2>& ccw);

// Solid angle (steradians) of the spherical triangle spanned by a, b, c.
double van_oosterom_strackee(const V3& a, const V3& b, const V3& c);

// Is the open cell {x : s_i <a_i, x> > 0 for all i} nonempty? By Gordan's
// alternative it is empty iff 0 is a convex combination of the s_i a_i, and by
// Carathéodory it suffices to try (D+1)-subsets (generic input).
bool sign_vector_feasible(const std::vector<Eigen::VectorXd>& normals, const std::vector<int>& signs);

// ∫ over the cone spanned by a planar polygon (seen from the origin) of
// <n, u> dσ(u): Lambert's edge-sum formula (projected solid angle).
double projected_solid_angle(const std::vector<V3>& polygon, const V3& n);

// ∫_{R^3 \ P} |y|^{-4} dy for a convex polytope with 0 inside, given its
// facets as vertex loops (any orientation).
double exterior_integral_3d(const std::vector<std::vector<V3>>& facets);

// Rotation of the plane by angle t.
V2 rotate(const V2& v, double t);

}  // namespace oracle
