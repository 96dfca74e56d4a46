#pragma once

#include <optional>
#include <vector>

#include "conehull/geom_core.hpp"
#include "conehull/rng.hpp"
#include "conehull/samplers.hpp"

namespace conehull {

// Householder reflection O_v exchanging v and -e (identity at v = -e), and the
// tangent chart I_v with basis O_v e_1, ..., O_v e_d of v^perp. Both are
// deterministic in v and O_v v = -e exactly.
class TangentFrame {
 public:
  explicit TangentFrame(const UnitVector& v);

  const UnitVector& base() const { return base_; }
  int dim() const { return base_.ambient_dim() - 1; }
  const Mat& basis() const { return basis_; }        // (d+1) x d
  const Mat& rotation() const { return rotation_; }  // O_v
  // I_v(x) for x in Tan_v = v + v^perp.
  Vec to_tangent(const Vec& x) const;
  Vec from_tangent(const Vec& y) const;

 private:
  UnitVector base_;
  Mat rotation_;
  Mat basis_;
};

TangentFrame tangent_frame(const UnitVector& v);

struct Profile {
  std::optional<Polytope> polytope;  // empty iff unbounded
  bool bounded = false;
  double scale = 1.0;
};

// scale * I_v(cone ∩ Tan_v). Unbounded (a value, not an error) when some
// extreme ray r has <r, v> <= 0. InvalidArgument if v is not in the cone.
Profile profile(const PolyhedralCone& cone, const UnitVector& v, double scale);

struct ProfileSample {
  Polytope polytope;
  long attempts = 1;  // includes the accepted one; bounded fraction = 1 / attempts
  long source_f0 = 0;
};

// n I_{-e}(S_n^{-e} ∩ Tan_{-e}) conditioned on boundedness.
ProfileSample sample_Pn_star(int n, int d, RngStream& rng);

enum class QnConstruction { kDirect, kRotated };
// n I_{u}(S_n ∩ Tan_u), u uniform in S_n ∩ S^d, conditioned on boundedness.
// kRotated builds the same object as n I_{-e}(O_u S_n ∩ Tan_{-e}).
ProfileSample sample_Qn_star(int n, int d, RngStream& rng, QnConstruction how = QnConstruction::kDirect);

}  // namespace conehull
