#pragma once

#include <optional>

#include <Eigen/Dense>

namespace tensegrity::linalg {

/// Relative factor of the rank threshold: s > kRankTolerance * s_max * max(rows, cols).
inline constexpr double kRankTolerance = 1e-9;

struct RankInfo {
  int rank = 0;
  double threshold = 0.0;
  Eigen::VectorXd singular_values;  // descending
};

RankInfo numerical_rank(const Eigen::MatrixXd& a);

/// Orthonormal basis (columns) of { x : a x = 0 }.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a);

/// Orthonormal basis (columns) of { y : y^T a = 0 }.
Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& a);

/// Orthonormal basis (columns) of the column span of a.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& a);

/// Minimizes |e x - f| subject to a x = b. Returns nullopt when a x = b
/// has no solution (residual above tolerance). Among minimizers the
/// minimum-norm x is returned.
std::optional<Eigen::VectorXd> equality_constrained_lsq(const Eigen::MatrixXd& e,
                                                        const Eigen::VectorXd& f,
                                                        const Eigen::MatrixXd& a,
                                                        const Eigen::VectorXd& b);

struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // |a x - b|
};

/// Lawson-Hanson non-negative least squares: min |a x - b| over x >= 0.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

}  // namespace tensegrity::linalg
