#pragma once

#include <array>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "tensegrity/model.hpp"

namespace tensegrity {

/// Plane angle. Constructed from degrees or radians, stored in radians.
class Angle {
 public:
  static constexpr Angle degrees(double deg) { return Angle(deg * std::numbers::pi / 180.0); }
  static constexpr Angle radians(double rad) { return Angle(rad); }

  constexpr double radians() const { return rad_; }
  constexpr double degrees() const { return rad_ * 180.0 / std::numbers::pi; }

 private:
  constexpr explicit Angle(double rad) : rad_(rad) {}
  double rad_;
};

struct MemberGeometry {
  Point vector;  // p_j - p_i
  double modulus = 0.0;
  Point unit;
};

/// Throws coincident_points when p_i == p_j.
MemberGeometry member_geometry(const Model& model, int i, int j);

struct Violation {
  Pair pair;
  MemberKind kind;
  /// Squared distance minus squared rest length.
  double residual = 0.0;
};

inline constexpr double kDefaultLengthTolerance = 1e-9;

/// Rod equalities and cable inequalities on squared distances, with a
/// tolerance relative to the member's rest length.
std::vector<Violation> validate_position(const Model& model, double tol = kDefaultLengthTolerance);

/// 3D: (tx, ty, tz, rx, ry, rz), applied as Rx(Ry(Rz p)) + t.
/// 2D: (tx, ty, r). Throws dimension_mismatch on the wrong arity.
Model apply_rigid_motion(const Model& model, std::span<const double> params);

/// Squared distances from the top end q0 of the unit-cylinder prism to the
/// bottom ends p0 (red), p1 (green) and p2 (blue).
struct CylinderCurvePoint {
  Angle theta = Angle::radians(0.0);
  double h = 0.0;
  double red = 0.0;
  double green = 0.0;
  double blue = 0.0;
};

CylinderCurvePoint cylinder_curves(Angle theta, double h);

/// (d/dtheta per radian, d/dh) of one curve.
struct CurveGradient {
  double d_theta = 0.0;
  double d_h = 0.0;
};

struct CurveGradients {
  CurveGradient red;
  CurveGradient green;
  CurveGradient blue;
};

CurveGradients curve_gradients(Angle theta, double h);

/// Height h with 2(1 - cos theta) + h^2 = rod_length^2; throws
/// infeasible_height when h^2 <= 0.
double prism_height(Angle theta, double rod_length);

/// force / length; throws zero_length for non-positive length.
double force_density(double force, double length);

}  // namespace tensegrity
