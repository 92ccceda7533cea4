#pragma once

#include <vector>

#include "tensegrity/geometry.hpp"
#include "tensegrity/model.hpp"

namespace tensegrity {

/// Three-rod prism on the unit cylinder. Points are ordered
/// p0, p1, p2 (bottom, z = 0) then q0, q1, q2 (top, twisted by theta);
/// rods join p_k and q_k. Cable rest lengths equal the built distances.
Model build_nine_segrity(Angle theta, double rod_length);

enum class TenSegrityCables {
  /// The stable ten-cable set.
  stable,
  /// Same list with the end labels of rod 0 exchanged. Its cable
  /// coefficients have mixed signs, so it is not stable.
  rod0_ends_swapped,
};

/// Three orthogonal rods of length 4 with ten cables, taut at build.
Model build_ten_segrity(TenSegrityCables cables = TenSegrityCables::stable);

/// Planar kite: points (1,0), (-1,0), (0,1), (0,-1); crossing rods.
Model build_kite();

struct Plane {
  Point normal;
  double offset = 0.0;  // normal . x = offset
};

/// |x - center|^2 <= radius_squared
struct SphereInequality {
  Point center;
  double radius_squared = 0.0;
};

struct BeadOnPlane {
  Model model;  // bead is point 0, anchors are points 1..3
  Plane plane;
  std::vector<SphereInequality> inequalities;
};

/// Bead at the origin held to z = 0 by three taut cables.
BeadOnPlane build_bead_on_plane();

}  // namespace tensegrity
