#include <doctest.h>

#include <array>
#include <cmath>

#include "expect.hpp"
#include "support.hpp"
#include "tensegrity/builders.hpp"
#include "tensegrity/error.hpp"
#include "tensegrity/geometry.hpp"

using namespace tensegrity;

TEST_SUITE("geometry") {

TEST_CASE("angles convert between degrees and radians") {
  CHECK(Angle::degrees(180.0).radians() == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(Angle::radians(M_PI / 2).degrees() == doctest::Approx(90.0).epsilon(1e-15));
}

TEST_CASE("nine-segrity height and rod lengths") {
  const Model m = build_nine_segrity(Angle::degrees(210.0), 4.0);
  const double h = std::sqrt(14.0 - std::sqrt(3.0));
  CHECK(h == doctest::Approx(3.502563231753443).epsilon(1e-15));
  for (int k = 3; k < 6; ++k) CHECK(m.point(k).z() == doctest::Approx(h).epsilon(1e-14));
  CHECK(std::abs(m.distance(0, 3) - 4.0) < 1e-12);
  for (int r = 0; r < 3; ++r) CHECK(std::abs(m.distance(m.rods()[r].i, m.rods()[r].j) - 4.0) < 1e-12);
  CHECK(m.num_cables() == 9);

  const Model flat = build_nine_segrity(Angle::degrees(0.0), 4.0);
  CHECK(flat.point(3).z() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(kind_of([] { build_nine_segrity(Angle::degrees(180.0), 1.0); }) == ErrorKind::infeasible_height);
}

TEST_CASE("nine-segrity satisfies the height relation exactly") {
  for (double deg : {10.0, 95.0, 210.0, 300.0}) {
    const double t = Angle::degrees(deg).radians();
    const double h = prism_height(Angle::degrees(deg), 3.0);
    CHECK(std::abs(2.0 * (1.0 - std::cos(t)) + h * h - 9.0) < 1e-12);
  }
}

TEST_CASE("ten-segrity coordinates and counts") {
  const Model m = build_ten_segrity();
  CHECK(m.point(1) == Point(0.0, -2.0, 0.5));
  CHECK(m.point(4) == Point(0.0, 2.0, 0.5));
  CHECK(m.point(5) == Point(-2.0, 0.5, 0.0));
  CHECK(m.num_points() == 6);
  CHECK(m.num_rods() == 3);
  CHECK(m.num_cables() == 10);
  for (const Pair& r : m.rods()) CHECK(std::abs(m.distance(r.i, r.j) - 4.0) < 1e-12);
  CHECK(validate_position(m).empty());
}

TEST_CASE("kite fixture") {
  const Model k = build_kite();
  CHECK(k.dimension() == 2);
  CHECK(k.num_rods() == 2);
  CHECK(k.num_cables() == 4);
  CHECK(k.distance(0, 1) == 2.0);
  CHECK(k.distance(2, 3) == 2.0);
}

TEST_CASE("bead on plane is tight at the origin") {
  const BeadOnPlane b = build_bead_on_plane();
  CHECK(b.model.num_beads() == 1);
  CHECK(b.model.num_rods() == 0);
  const std::array<double, 3> expected{6.0, 5.0, 3.0};
  for (int k = 0; k < 3; ++k) {
    CHECK((b.model.point(0) - b.inequalities[k].center).squaredNorm() == expected[k]);
    CHECK(b.inequalities[k].radius_squared == doctest::Approx(expected[k]).epsilon(1e-15));
  }
  CHECK(b.plane.normal == Point(0.0, 0.0, 1.0));
  CHECK(validate_position(b.model).empty());
}

TEST_CASE("member geometry") {
  const Model m(3, {Point(0, 0, 0), Point(3, 4, 0)}, {}, {{0, 1}});
  const auto g = member_geometry(m, 0, 1);
  CHECK(g.modulus == 5.0);
  CHECK((g.unit - Point(0.6, 0.8, 0.0)).norm() < 1e-15);
  CHECK((member_geometry(m, 1, 0).unit + g.unit).norm() == 0.0);

  const Model ten = build_ten_segrity();
  const auto r = member_geometry(ten, 0, 3);
  CHECK(r.vector == Point(0.0, 0.0, 4.0));
  CHECK(r.modulus == 4.0);

  const Model twin(3, {Point(1, 1, 1), Point(1, 1, 1)}, {}, {});
  CHECK(kind_of([&] { member_geometry(twin, 0, 1); }) == ErrorKind::coincident_points);
}

TEST_CASE("validate_position reports rods and tight cables only") {
  const Model ten = build_ten_segrity();
  std::vector<Point> moved(ten.points().begin(), ten.points().end());
  moved[0] += Point(0.1, 0.0, 0.0);
  const auto v = validate_position(ten.with_points(moved));
  bool rod_found = false;
  for (const auto& x : v) rod_found = rod_found || (x.pair == Pair(0, 3) && x.kind == MemberKind::rod);
  CHECK(rod_found);

  std::vector<double> lengths(ten.cable_lengths().begin(), ten.cable_lengths().end());
  lengths[2] += 1.0;
  CHECK(validate_position(ten.with_cable_lengths(lengths)).empty());
  lengths[2] -= 1.5;
  CHECK(validate_position(ten.with_cable_lengths(lengths)).size() == 1);
}

TEST_CASE("model topology is validated") {
  const std::vector<Point> pts{Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)};
  CHECK(kind_of([&] { Model(3, pts, {{0, 1}, {1, 2}}, {}); }) == ErrorKind::invalid_model);
  CHECK(kind_of([&] { Model(3, pts, {{0, 1}}, {{1, 0}}); }) == ErrorKind::invalid_model);
  CHECK(kind_of([&] { Model(3, pts, {}, {{2, 2}}); }) == ErrorKind::invalid_model);
  CHECK(kind_of([&] { Model(3, pts, {}, {{0, 9}}); }) == ErrorKind::invalid_model);
  CHECK(kind_of([&] { Model(3, pts, {}, {{0, 1}, {0, 1}}); }) == ErrorKind::invalid_model);
  CHECK(kind_of([&] { Model(4, pts, {}, {}); }) == ErrorKind::invalid_model);
}

TEST_CASE("rigid motions") {
  const Model ten = build_ten_segrity();
  const std::array<double, 6> zero{};
  const Model same = apply_rigid_motion(ten, zero);
  for (int i = 0; i < 6; ++i) CHECK(same.point(i) == ten.point(i));

  const std::array<double, 6> shift{1, 2, 3, 0, 0, 0};
  const Model moved = apply_rigid_motion(ten, shift);
  for (int i = 0; i < 6; ++i) CHECK((moved.point(i) - ten.point(i) - Point(1, 2, 3)).norm() < 1e-15);

  const std::array<double, 3> planar{0.5, -1.0, 0.3};
  CHECK(kind_of([&] { apply_rigid_motion(ten, planar); }) == ErrorKind::dimension_mismatch);
  const Model kite = apply_rigid_motion(build_kite(), planar);
  CHECK(std::abs(kite.distance(0, 1) - 2.0) < 1e-14);
  CHECK(kite.point(0).z() == 0.0);
}

TEST_CASE("rigid motions preserve distances and validity") {
  const Model ten = build_ten_segrity();
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 6> p{};
    for (double& x : p) x = oracle::uniform(-3.0, 3.0);
    const Model moved = apply_rigid_motion(ten, p);
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        CHECK(std::abs(moved.distance(i, j) - ten.distance(i, j)) <= 1e-12 * ten.distance(i, j));
      }
    }
    CHECK(validate_position(moved).empty());
  }
}

TEST_CASE("member lengths are stationary to first order under skew generators") {
  const Model nine = build_nine_segrity(Angle::degrees(210.0), 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Matrix3d b;
    const Eigen::Vector3d w(oracle::uniform(-1, 1), oracle::uniform(-1, 1), oracle::uniform(-1, 1));
    b << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
    for (int k = 0; k < nine.num_members(); ++k) {
      const Pair p = nine.member(k);
      const Eigen::Vector3d v = nine.point(p.j) - nine.point(p.i);
      if ((b * v).norm() < 1e-6) continue;
      auto change = [&](double eps) {
        const Eigen::Vector3d moved = (Eigen::Matrix3d::Identity() + eps * b) * v;
        return moved.squaredNorm() - v.squaredNorm();
      };
      // Quadratic decay: each halving divides the change by 4, over 3 decades.
      for (double eps = 1e-1; eps > 1e-4; eps /= 2.0) {
        CHECK(change(eps) / change(eps / 2.0) == doctest::Approx(4.0).epsilon(1e-4));
        CHECK(change(eps) / eps < 1e3 * eps);
      }
    }
  }
}

TEST_CASE("cylinder curves") {
  const double h = 1.7;
  const auto c = cylinder_curves(Angle::degrees(210.0), h);
  CHECK(c.red == doctest::Approx(2.0 + std::sqrt(3.0) + h * h).epsilon(1e-15));
  CHECK(cylinder_curves(Angle::degrees(0.0), h).red == doctest::Approx(h * h).epsilon(1e-15));
  const auto on_rod = cylinder_curves(Angle::degrees(210.0), prism_height(Angle::degrees(210.0), 4.0));
  CHECK(on_rod.red == doctest::Approx(16.0).epsilon(1e-15));
}

TEST_CASE("curve gradients and tangency") {
  const auto g = curve_gradients(Angle::degrees(210.0), 1.0);
  CHECK(g.red.d_theta == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(g.red.d_h == 2.0);
  for (double deg : {30.0, 210.0}) {
    const auto t = curve_gradients(Angle::degrees(deg), 3.5);
    CHECK(std::abs(t.red.d_theta - t.green.d_theta) < 1e-12);
    CHECK(t.red.d_h == t.green.d_h);
  }
  for (double deg : {150.0, 330.0}) {
    const auto t = curve_gradients(Angle::degrees(deg), 3.5);
    CHECK(std::abs(t.red.d_theta - t.blue.d_theta) < 1e-12);
  }
  // Central differences of the curves agree with the analytic partials.
  const double step = 1e-6;
  const Angle at = Angle::degrees(77.0);
  const auto hi = cylinder_curves(Angle::radians(at.radians() + step), 2.0);
  const auto lo = cylinder_curves(Angle::radians(at.radians() - step), 2.0);
  const auto an = curve_gradients(at, 2.0);
  CHECK((hi.green - lo.green) / (2 * step) == doctest::Approx(an.green.d_theta).epsilon(1e-8));
  CHECK((hi.blue - lo.blue) / (2 * step) == doctest::Approx(an.blue.d_theta).epsilon(1e-8));
}

TEST_CASE("force density") {
  CHECK(force_density(10.0, 4.0) == 2.5);
  CHECK(force_density(0.0, 4.0) == 0.0);
  CHECK(kind_of([] { force_density(1.0, 0.0); }) == ErrorKind::zero_length);
}

}  // TEST_SUITE
