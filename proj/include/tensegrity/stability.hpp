#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tensegrity/builders.hpp"
#include "tensegrity/model.hpp"

namespace tensegrity {

/// Strings needed for a one-dimensional positive self-stress:
/// 5(n-1) in 3D, 3n-2 in 2D.
int required_strings(int rods, int dimension = 3);

/// Lower bound from counting covectors against the configuration space:
/// 5n-6 in 3D, 3n-3 in 2D.
int minimum_strings(int rods, int dimension = 3);

/// Orthonormal basis (columns) of first-order motions that keep every
/// member length stationary and are orthogonal to the rigid motions.
Eigen::MatrixXd soft_modes(const Model& model);

/// Member force coefficients of the self-stress.
///
/// rho/a are the raw coefficients of the dependency
///   sum_r rho_r [C_rod] + sum a_ij [C_ij] = 0,
/// scaled so the largest cable magnitude is 1 and signed so that the
/// number of positive cable coefficients is maximal. gamma = 1/|(rho, a)|.
/// Forces are signed, tension positive: c_r = gamma rho_r m_r (negative
/// for a compressed rod), t_ij = gamma a_ij m_ij.
struct SelfStress {
  std::vector<double> rho;
  std::vector<double> a;
  double gamma = 0.0;
  std::vector<double> rod_forces;
  std::vector<double> cable_forces;

  /// gamma-normalized coefficient (force density) of member k, rods first.
  double density(int k) const;
};

/// nullopt when the member rows are independent; throws
/// OverDeterminedStress when the dependency has dimension > 1.
std::optional<SelfStress> self_stress(const Model& model);

/// Dimension of { w : w^T [member rows] = 0 }.
int dependency_dimension(const Model& model);

struct MemberForce {
  Pair pair;
  MemberKind kind;
  double coefficient = 0.0;  // gamma-normalized force density
  double force = 0.0;        // tension positive
};

struct ForceTable {
  std::vector<MemberForce> members;
  /// max over nodes of |sum of member forces at the node|.
  double max_equilibrium_residual = 0.0;
  double max_force = 0.0;
};

ForceTable member_forces(const std::optional<SelfStress>& stress, const Model& model);

/// Per-node net force of the stress; zero at equilibrium.
std::vector<Point> node_force_residuals(const SelfStress& stress, const Model& model);

struct DependencyCoefficients {
  Pair target;
  MemberKind target_kind;
  std::vector<MemberForce> terms;  // coefficient = b_ij, force unused
  /// Every cable term b_ij < 0.
  bool strings_all_negative = false;
  double residual = 0.0;
};

/// Expresses the target member row in the remaining member rows.
/// Throws target_not_representable or rank_deficient.
DependencyCoefficients dependency_coefficients(const Model& model, Pair target);

enum class Verdict { stable, soft_mode, no_positive_stress, under_strung };

const char* to_string(Verdict verdict);

struct StabilityReport {
  int n = 0;
  int sigma = 0;
  int required_sigma = 0;
  int minimum_sigma = 0;
  int dofs = 0;
  int rigid_rank = 0;
  int member_rank = 0;
  Eigen::VectorXd member_singular_values;
  Eigen::MatrixXd soft_modes;
  int dependency_dim = 0;
  std::optional<SelfStress> self_stress;
  /// Cables whose coefficient is not strictly positive.
  std::vector<Pair> non_positive_cables;
  Verdict verdict = Verdict::under_strung;
  std::string note;

  int soft_mode_count() const { return static_cast<int>(soft_modes.cols()); }
  /// 6 + n + sigma compared against 6n (3D), or the planar analogue.
  int covector_count() const { return rigid_rank + n + sigma; }
};

StabilityReport certify_stability(const Model& model);

/// Linear functionals at a constrained point: equalities g (any sign) and
/// inequalities f (<= 0), each a row over the same tangent space.
struct ConvexityProblem {
  Eigen::MatrixXd equalities;
  Eigen::MatrixXd inequalities;
};

struct ConvexityResult {
  bool full_rank = false;
  bool positive_combination = false;
  /// b (equalities) then a (inequalities), scaled so min a = 1.
  Eigen::VectorXd coefficients;
  std::string failure;

  bool passed() const { return full_rank && positive_combination; }
};

ConvexityResult spanning_convexity_test(const ConvexityProblem& problem);

/// Gradients at `position` of the bead-on-plane constraints.
ConvexityProblem convexity_problem_at(const BeadOnPlane& setup, const Point& position);

struct BeadBalance {
  double a0 = 0.0;
  double a1 = 0.0;
  bool firm = false;  // both strictly negative
};

/// Solves (t2 - b) = a0 (t0 - b) + a1 (t1 - b) in the plane of the
/// points. Throws degenerate_directions when t0 - b and t1 - b are parallel.
BeadBalance bead_balance(const Point& t0, const Point& t1, const Point& t2, const Point& bead);

}  // namespace tensegrity
