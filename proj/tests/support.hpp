#pragma once

// Independent oracles for the tests. Nothing here calls into the library's
// numerics; models are read only for their points and member lists.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tensegrity/model.hpp"

namespace oracle {

using tensegrity::Model;
using tensegrity::Pair;

/// Equilibrium matrix: column per member, node blocks p_i - p_j and p_j - p_i.
inline Eigen::MatrixXd equilibrium_matrix(const Model& m) {
  const int d = m.dimension();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m.dofs(), m.num_members());
  for (int k = 0; k < m.num_members(); ++k) {
    const Pair p = m.member(k);
    const Eigen::Vector3d v = m.point(p.j) - m.point(p.i);
    for (int c = 0; c < d; ++c) {
      a(d * p.i + c, k) = -v(c);
      a(d * p.j + c, k) = v(c);
    }
  }
  return a;
}

/// Kernel of the equilibrium matrix by full-pivot LU (self-stress space).
inline Eigen::MatrixXd stress_space(const Model& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(equilibrium_matrix(m));
  lu.setThreshold(1e-10);
  if (lu.dimensionOfKernel() == 0) return Eigen::MatrixXd(m.num_members(), 0);
  return lu.kernel();
}

/// Unit-norm 1-D self-stress with positive majority on cables.
inline Eigen::VectorXd unit_stress(const Model& m) {
  Eigen::VectorXd w = stress_space(m).col(0);
  w.normalize();
  const auto cables = w.tail(m.num_cables());
  if ((cables.array() < 0).count() > (cables.array() > 0).count()) w = -w;
  return w;
}

/// Rank of the compatibility (member) matrix by full-pivot LU.
inline int member_rank(const Model& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(equilibrium_matrix(m).transpose());
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

/// Rotation from three angles via Eigen's AngleAxis (x then y then z).
inline Eigen::Matrix3d rotation(double a, double b, double c) {
  return (Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240531);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace oracle
