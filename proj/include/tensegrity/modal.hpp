#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tensegrity/model.hpp"

namespace tensegrity {

/// Pin-jointed tangent stiffness over the D*N slots:
///   sum_e (EA/L) u u^T + s * q_e (I - u u^T)
/// scattered as [K -K; -K K], where q_e is the member's gamma-normalized
/// self-stress force density and s the prestress scale. Slack cables
/// (rest length above current length) get no material term.
Eigen::MatrixXd tangent_stiffness(const Model& model, const MaterialMap& materials,
                                  double prestress_scale = 0.0);

/// Lumped masses on the diagonal: half of rho*pi*r^2*L to each end.
/// Throws invalid_model when a node carries no mass.
Eigen::VectorXd mass_matrix(const Model& model, const MaterialMap& materials);

enum class ModeTag { rigid, soft, stiff };

const char* to_string(ModeTag tag);

struct ModalOptions {
  std::vector<int> fixed_nodes;
  double prestress_scale = 0.0;
  int count = 12;
};

struct ModalResult {
  Eigen::VectorXd frequencies;  // rad/s, ascending; negative = unstable
  Eigen::MatrixXd modes;        // (D*N) x count, M-orthonormal, 0 at fixed slots
  Eigen::VectorXd rigid_fraction;
  std::vector<ModeTag> tags;
  int rigid_modes = 0;  // rigid motions compatible with the fixed nodes
  double min_eigenvalue = 0.0;
  bool indefinite = false;
};

/// Lowest `count` modes of K phi = omega^2 M phi on the free slots.
ModalResult modal_analysis(const Model& model, const MaterialMap& materials,
                           const ModalOptions& options = {});

inline constexpr double kRigidTolerance = 1e-6;
inline constexpr double kSoftRatio = 0.1;

/// rigid: omega <= rigid_tol * omega_max and mostly a rigid motion (or the
/// whole spectrum is zero); soft: omega < soft_ratio * next omega;
/// otherwise stiff.
ModalResult classify_modes(ModalResult result, double rigid_tol = kRigidTolerance,
                           double soft_ratio = kSoftRatio);

}  // namespace tensegrity
