#include "tensegrity/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tensegrity/error.hpp"
#include "tensegrity/geometry.hpp"
#include "tensegrity/linalg.hpp"

namespace tensegrity {

int rigid_mode_count(int dimension) { return dimension == 3 ? 6 : 3; }

RigidBodyBasis rigid_body_basis(const Model& model) {
  const int d = model.dimension();
  const int n = model.num_points();
  RigidBodyBasis basis;
  basis.vectors = Eigen::MatrixXd::Zero(d * n, rigid_mode_count(d));
  for (int i = 0; i < n; ++i) {
    const Point& p = model.point(i);
    const int s = d * i;
    for (int a = 0; a < d; ++a) basis.vectors(s + a, a) = 1.0;
    if (d == 3) {
      basis.vectors.block<3, 1>(s, 3) = Eigen::Vector3d(0.0, p.z(), -p.y());
      basis.vectors.block<3, 1>(s, 4) = Eigen::Vector3d(p.z(), 0.0, -p.x());
      basis.vectors.block<3, 1>(s, 5) = Eigen::Vector3d(p.y(), -p.x(), 0.0);
    } else {
      basis.vectors.block<2, 1>(s, 2) = Eigen::Vector2d(p.y(), -p.x());
    }
  }
  basis.rank = linalg::numerical_rank(basis.vectors).rank;
  return basis;
}

Eigen::RowVectorXd member_covector(const Model& model, Pair pair, bool normalized) {
  const auto g = member_geometry(model, pair.i, pair.j);
  const int d = model.dimension();
  const Point v = normalized ? g.unit : g.vector;
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(model.dofs());
  row.segment(d * pair.i, d) = -v.head(d).transpose();
  row.segment(d * pair.j, d) = v.head(d).transpose();
  return row;
}

Eigen::MatrixXd member_matrix(const Model& model, bool normalized) {
  Eigen::MatrixXd rows(model.num_members(), model.dofs());
  for (int k = 0; k < model.num_members(); ++k) rows.row(k) = member_covector(model, model.member(k), normalized);
  return rows;
}

Eigen::MatrixXd ConstraintMatrix::stacked() const {
  Eigen::MatrixXd all(member_rows.rows() + rigid_rows.rows(), member_rows.cols());
  all << member_rows, rigid_rows;
  return all;
}

ConstraintMatrix assemble_constraint_matrix(const Model& model, bool normalized) {
  ConstraintMatrix cm;
  cm.member_rows = member_matrix(model, normalized);
  cm.rigid_rows = rigid_body_basis(model).vectors.transpose();
  for (int k = 0; k < model.num_members(); ++k) {
    cm.row_labels.push_back(
        {model.member_kind(k) == MemberKind::rod ? RowKind::rod : RowKind::cable, model.member(k), -1});
  }
  for (int a = 0; a < cm.rigid_rows.rows(); ++a) cm.row_labels.push_back({RowKind::rigid, Pair{}, a});
  return cm;
}

std::array<int, 3> select_anchor_triangle(const Model& model) {
  const int n = model.num_points();
  if (n < 3) throw Error(ErrorKind::all_collinear, "fewer than three points");
  double best = -1.0;
  double diameter2 = 0.0;
  std::array<int, 3> triple{0, 1, 2};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      diameter2 = std::max(diameter2, (model.point(j) - model.point(i)).squaredNorm());
      for (int k = j + 1; k < n; ++k) {
        const Point e1 = model.point(j) - model.point(i);
        const Point e2 = model.point(k) - model.point(i);
        const double area = 0.5 * e1.cross(e2).norm();
        // Lexicographic loop order keeps the first of equal areas.
        if (area > best * (1.0 + 1e-12)) {
          best = area;
          triple = {i, j, k};
        }
      }
    }
  }
  if (best <= 1e-12 * diameter2) throw Error(ErrorKind::all_collinear, "all points are collinear");
  return triple;
}

namespace {

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int s = start; s < n; ++s) {
      cur.push_back(s);
      self(self, s + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

ShapeBasis complete_shape_basis(const Model& model) {
  const int d = model.dimension();
  const int dofs = model.dofs();
  const auto rigid = rigid_body_basis(model);
  const int rc = static_cast<int>(rigid.vectors.cols());

  ShapeBasis shape;
  shape.anchor_triple = select_anchor_triangle(model);
  const auto [i, j, k] = shape.anchor_triple;

  std::vector<int> anchor_slots;
  for (int node : {i, j, k}) {
    for (int a = 0; a < d; ++a) anchor_slots.push_back(d * node + a);
  }
  // Candidate directions: the slots of j and k.
  const std::vector<int> candidates(anchor_slots.begin() + d, anchor_slots.end());
  const int extra_drop = rc - d;
  const int m = static_cast<int>(anchor_slots.size());

  Eigen::MatrixXd rigid_rows(m, rc);
  for (int r = 0; r < m; ++r) rigid_rows.row(r) = rigid.vectors.row(anchor_slots[r]);

  double best = 0.0;
  std::vector<int> best_drop;
  for (const auto& drop : subsets(static_cast<int>(candidates.size()), extra_drop)) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, m);
    block.leftCols(rc) = rigid_rows;
    int col = rc;
    for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
      if (std::find(drop.begin(), drop.end(), c) != drop.end()) continue;
      block(d + c, col++) = 1.0;  // candidate c sits at row d + c of the anchor block
    }
    const double det = std::abs(block.partialPivLu().determinant());
    if (det > best) {
      best = det;
      best_drop = drop;
    }
  }
  const double scale = std::pow(std::max(1.0, rigid_rows.cwiseAbs().maxCoeff()), extra_drop);
  if (best_drop.empty() || best <= 1e-12 * scale) {
    throw Error(ErrorKind::no_full_rank_combination, "no choice of discarded directions gives full rank");
  }

  shape.anchor_determinant = best;
  for (int a = 0; a < d; ++a) shape.dropped_slots.push_back(anchor_slots[a]);
  for (int c : best_drop) shape.dropped_slots.push_back(candidates[c]);

  std::vector<int> kept;
  for (int s = 0; s < dofs; ++s) {
    if (std::find(shape.dropped_slots.begin(), shape.dropped_slots.end(), s) == shape.dropped_slots.end()) {
      kept.push_back(s);
    }
  }
  shape.basis = Eigen::MatrixXd::Zero(dofs, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) shape.basis(kept[c], static_cast<Eigen::Index>(c)) = 1.0;

  Eigen::MatrixXd combined(dofs, dofs);
  combined << rigid.vectors, shape.basis;
  if (linalg::numerical_rank(combined).rank != dofs) {
    throw Error(ErrorKind::no_full_rank_combination, "completed basis is rank deficient");
  }
  return shape;
}

Eigen::VectorXd decompose_motion(const RigidBodyBasis& rigid, const ShapeBasis& shape, const Eigen::VectorXd& delta) {
  Eigen::MatrixXd combined(delta.size(), rigid.vectors.cols() + shape.basis.cols());
  combined << rigid.vectors, shape.basis;
  return combined.colPivHouseholderQr().solve(delta);
}

}  // namespace tensegrity
