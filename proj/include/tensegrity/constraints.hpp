#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tensegrity/model.hpp"

namespace tensegrity {

/// Rigid-body motion vectors as columns: translations first, then the
/// rotations (0, z, -y), (z, 0, -x), (y, -x, 0) per point. 2D has two
/// translations and the rotation (y, -x).
struct RigidBodyBasis {
  Eigen::MatrixXd vectors;  // (D*N) x (6 or 3)
  int rank = 0;

  /// True when the rotations lose rank (collinear or coincident points).
  bool degenerate() const { return rank < vectors.cols(); }
};

RigidBodyBasis rigid_body_basis(const Model& model);

int rigid_mode_count(int dimension);

/// Row for the pair: v_{j,i} at the slots of i, v_{i,j} at the slots of j
/// (unit vectors when normalized). Throws coincident_points.
Eigen::RowVectorXd member_covector(const Model& model, Pair pair, bool normalized = false);

enum class RowKind { rod, cable, rigid };

struct RowLabel {
  RowKind kind;
  Pair pair;      // rod/cable rows
  int axis = -1;  // rigid rows: index into the rigid basis
};

struct ConstraintMatrix {
  Eigen::MatrixXd member_rows;  // rods in list order, then cables
  Eigen::MatrixXd rigid_rows;
  std::vector<RowLabel> row_labels;  // member rows, then rigid rows

  Eigen::MatrixXd stacked() const;
};

ConstraintMatrix assemble_constraint_matrix(const Model& model, bool normalized = false);

/// Member rows only, (n + sigma) x (D*N).
Eigen::MatrixXd member_matrix(const Model& model, bool normalized = false);

/// Triple of maximal triangle area; lexicographically smallest on ties.
/// Throws all_collinear.
std::array<int, 3> select_anchor_triangle(const Model& model);

struct ShapeBasis {
  std::array<int, 3> anchor_triple{};
  /// Global slots of the discarded standard directions: all D slots of the
  /// first anchor point, then the chosen slots of the other two.
  std::vector<int> dropped_slots;
  /// Remaining standard basis vectors as columns, (D*N) x (D*N - rigid).
  Eigen::MatrixXd basis;
  /// |det| of the restricted anchor system for the chosen drop set.
  double anchor_determinant = 0.0;
};

/// Completes the rigid basis to a basis of the configuration space with
/// standard directions, choosing the discarded directions around the
/// anchor triangle by maximal |det|. Throws all_collinear or
/// no_full_rank_combination.
ShapeBasis complete_shape_basis(const Model& model);

/// Coefficients of delta in the combined [rigid | shape] basis.
Eigen::VectorXd decompose_motion(const RigidBodyBasis& rigid, const ShapeBasis& shape,
                                 const Eigen::VectorXd& delta);

}  // namespace tensegrity
