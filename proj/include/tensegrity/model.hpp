#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tensegrity {

using Point = Eigen::Vector3d;

/// Unordered index pair, stored canonically with i < j.
struct Pair {
  int i = 0;
  int j = 0;

  Pair() = default;
  Pair(int a, int b) : i(a < b ? a : b), j(a < b ? b : a) {}

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

enum class MemberKind { rod, cable };

const char* to_string(MemberKind kind);

struct MaterialSpec {
  double youngs_modulus = 0.0;  // Pa
  double density = 0.0;         // kg/m^3
  double radius = 0.0;          // m, circular section
  bool compression_stiff = true;

  double area() const;

  static MaterialSpec steel();
  static MaterialSpec kevlar(double youngs_modulus = 112e9);
};

/// Per-kind material assignment. Every member of a kind shares its spec.
struct MaterialMap {
  std::optional<MaterialSpec> rod;
  std::optional<MaterialSpec> cable;

  /// Throws missing_material when the kind has no spec.
  const MaterialSpec& lookup(MemberKind kind) const;

  static MaterialMap steel_and_kevlar(double kevlar_modulus = 112e9);
};

/// Points, rods, cables and rest lengths of one tensegrity position.
///
/// Topology is checked on construction: pairs reference valid distinct
/// points, no pair is both rod and cable, no duplicates, and no two rods
/// share an endpoint. Positions are not checked against lengths here;
/// see validate_position. In 2D the z coordinate of every point is 0.
class Model {
 public:
  /// Empty length lists default to the current distances.
  Model(int dimension, std::vector<Point> points, std::vector<Pair> rods,
        std::vector<Pair> cables, std::vector<double> rod_lengths = {},
        std::vector<double> cable_lengths = {}, std::vector<int> anchors = {},
        std::optional<MaterialMap> materials = std::nullopt);

  int dimension() const { return dimension_; }
  int num_points() const { return static_cast<int>(points_.size()); }
  int num_rods() const { return static_cast<int>(rods_.size()); }
  int num_cables() const { return static_cast<int>(cables_.size()); }
  int num_members() const { return num_rods() + num_cables(); }
  /// Points on no rod that are not anchors.
  int num_beads() const;
  /// Size D*N of the configuration space.
  int dofs() const { return dimension_ * num_points(); }

  const Point& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
  std::span<const Point> points() const { return points_; }
  std::span<const Pair> rods() const { return rods_; }
  std::span<const Pair> cables() const { return cables_; }
  std::span<const double> rod_lengths() const { return rod_lengths_; }
  std::span<const double> cable_lengths() const { return cable_lengths_; }
  std::span<const int> anchors() const { return anchors_; }
  const std::optional<MaterialMap>& materials() const { return materials_; }

  /// Member k in rods-then-cables order.
  Pair member(int k) const;
  MemberKind member_kind(int k) const { return k < num_rods() ? MemberKind::rod : MemberKind::cable; }
  double rest_length(int k) const;

  double distance(int i, int j) const { return (points_[i] - points_[j]).norm(); }

  /// Flattened D*N coordinate vector.
  Eigen::VectorXd configuration() const;

  Model with_points(std::vector<Point> points) const;
  /// Replaces the cable set; rest lengths become the current distances.
  Model with_cables(std::vector<Pair> cables) const;
  Model with_cable_lengths(std::vector<double> lengths) const;
  Model with_materials(std::optional<MaterialMap> materials) const;

 private:
  int dimension_;
  std::vector<Point> points_;
  std::vector<Pair> rods_;
  std::vector<Pair> cables_;
  std::vector<double> rod_lengths_;
  std::vector<double> cable_lengths_;
  std::vector<int> anchors_;
  std::optional<MaterialMap> materials_;
};

}  // namespace tensegrity
