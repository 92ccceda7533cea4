#include "tensegrity/builders.hpp"

#include <cmath>
#include <numbers>

namespace tensegrity {

namespace {

// Prism point order: p0 p1 p2 q0 q1 q2.
constexpr int p0 = 0, p1 = 1, p2 = 2, q0 = 3, q1 = 4, q2 = 5;

}  // namespace

Model build_nine_segrity(Angle theta, double rod_length) {
  const double h = prism_height(theta, rod_length);
  const double t = theta.radians();
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  std::vector<Point> pts{
      {1.0, 0.0, 0.0},
      {std::cos(third), std::sin(third), 0.0},
      {std::cos(-third), std::sin(-third), 0.0},
      {std::cos(t), std::sin(t), h},
      {std::cos(t + third), std::sin(t + third), h},
      {std::cos(t - third), std::sin(t - third), h},
  };
  std::vector<Pair> rods{{p0, q0}, {p1, q1}, {p2, q2}};
  std::vector<Pair> cables{{p0, p1}, {p0, p2}, {p0, q1}, {p1, p2}, {p1, q2},
                           {p2, q0}, {q0, q1}, {q0, q2}, {q1, q2}};
  std::vector<double> rod_lengths(3, rod_length);
  return Model(3, std::move(pts), std::move(rods), std::move(cables), std::move(rod_lengths));
}

Model build_ten_segrity(TenSegrityCables which) {
  std::vector<Point> pts{
      {0.5, 0.0, -2.0}, {0.0, -2.0, 0.5}, {2.0, 0.5, 0.0},
      {0.5, 0.0, 2.0},  {0.0, 2.0, 0.5},  {-2.0, 0.5, 0.0},
  };
  std::vector<Pair> rods{{p0, q0}, {p1, q1}, {p2, q2}};
  // Written with a and b for the two ends of rod 0.
  auto cables_with = [](int a, int b) {
    return std::vector<Pair>{{a, p1},  {a, p2},  {a, q1},  {p1, b},  {p1, p2},
                             {p1, q2}, {b, p2},  {b, q2},  {q1, p2}, {q1, q2}};
  };
  auto cables = which == TenSegrityCables::stable ? cables_with(q0, p0) : cables_with(p0, q0);
  return Model(3, std::move(pts), std::move(rods), std::move(cables));
}

Model build_kite() {
  std::vector<Point> pts{{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, -1.0, 0.0}};
  return Model(2, std::move(pts), {{0, 1}, {2, 3}}, {{0, 2}, {1, 2}, {1, 3}, {0, 3}});
}

BeadOnPlane build_bead_on_plane() {
  const std::vector<Point> anchors{{-2.0, -1.0, 1.0}, {1.0, 0.0, 2.0}, {-1.0, 1.0, -1.0}};
  std::vector<Point> pts{Point::Zero()};
  pts.insert(pts.end(), anchors.begin(), anchors.end());
  std::vector<double> lengths{std::sqrt(6.0), std::sqrt(5.0), std::sqrt(3.0)};
  Model model(3, std::move(pts), {}, {{0, 1}, {0, 2}, {0, 3}}, {}, lengths, {1, 2, 3});

  BeadOnPlane setup{std::move(model), {Point(0.0, 0.0, 1.0), 0.0}, {}};
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    setup.inequalities.push_back({anchors[k], lengths[k] * lengths[k]});
  }
  return setup;
}

}  // namespace tensegrity
