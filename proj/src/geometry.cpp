#include "tensegrity/geometry.hpp"

#include <cmath>

#include "tensegrity/error.hpp"

namespace tensegrity {

MemberGeometry member_geometry(const Model& model, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= model.num_points() || j >= model.num_points()) {
    throw Error(ErrorKind::invalid_argument, "member needs two distinct valid indices");
  }
  MemberGeometry g;
  g.vector = model.point(j) - model.point(i);
  g.modulus = g.vector.norm();
  if (g.modulus == 0.0) {
    throw Error(ErrorKind::coincident_points,
                "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }
  g.unit = g.vector / g.modulus;
  return g;
}

std::vector<Violation> validate_position(const Model& model, double tol) {
  std::vector<Violation> out;
  for (int k = 0; k < model.num_members(); ++k) {
    const Pair p = model.member(k);
    const double rest = model.rest_length(k);
    const double d2 = (model.point(p.i) - model.point(p.j)).squaredNorm();
    const double residual = d2 - rest * rest;
    // d^2 - r^2 ~ 2 r (d - r): scale the tolerance to squared units.
    const double allowed = 2.0 * tol * rest * rest;
    const bool rod = model.member_kind(k) == MemberKind::rod;
    if (rod ? std::abs(residual) > allowed : residual > allowed) {
      out.push_back({p, model.member_kind(k), residual});
    }
  }
  return out;
}

namespace {

Eigen::Matrix3d rotation_x(double a) {
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a);
  return m;
}

Eigen::Matrix3d rotation_y(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}

Eigen::Matrix3d rotation_z(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

}  // namespace

Model apply_rigid_motion(const Model& model, std::span<const double> params) {
  const std::size_t expected = model.dimension() == 3 ? 6 : 3;
  if (params.size() != expected) {
    throw Error(ErrorKind::dimension_mismatch, "rigid motion of a " + std::to_string(model.dimension()) +
                                                   "D model takes " + std::to_string(expected) + " parameters");
  }
  Eigen::Matrix3d rot;
  Point shift;
  if (model.dimension() == 3) {
    rot = rotation_x(params[3]) * rotation_y(params[4]) * rotation_z(params[5]);
    shift = Point(params[0], params[1], params[2]);
  } else {
    rot = rotation_z(params[2]);
    shift = Point(params[0], params[1], 0.0);
  }
  std::vector<Point> moved;
  moved.reserve(static_cast<std::size_t>(model.num_points()));
  for (const auto& p : model.points()) moved.push_back(rot * p + shift);
  return model.with_points(std::move(moved));
}

CylinderCurvePoint cylinder_curves(Angle theta, double h) {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  const double t = theta.radians();
  const double h2 = h * h;
  return {theta, h, 2.0 * (1.0 - std::cos(t)) + h2, 2.0 * (1.0 - std::cos(t + third)) + h2,
          2.0 * (1.0 - std::cos(t - third)) + h2};
}

CurveGradients curve_gradients(Angle theta, double h) {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  const double t = theta.radians();
  return {{2.0 * std::sin(t), 2.0 * h}, {2.0 * std::sin(t + third), 2.0 * h}, {2.0 * std::sin(t - third), 2.0 * h}};
}

double prism_height(Angle theta, double rod_length) {
  const double h2 = rod_length * rod_length - 2.0 * (1.0 - std::cos(theta.radians()));
  if (!(h2 > 0.0)) {
    throw Error(ErrorKind::infeasible_height, "rod of length " + std::to_string(rod_length) +
                                                  " cannot reach the top at theta = " +
                                                  std::to_string(theta.degrees()) + " deg");
  }
  return std::sqrt(h2);
}

double force_density(double force, double length) {
  if (!(length > 0.0)) throw Error(ErrorKind::zero_length, "force density needs a positive length");
  return force / length;
}

}  // namespace tensegrity
