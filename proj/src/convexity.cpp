#include <algorithm>
#include <cmath>

#include "tensegrity/error.hpp"
#include "tensegrity/linalg.hpp"
#include "tensegrity/stability.hpp"

namespace tensegrity {

ConvexityResult spanning_convexity_test(const ConvexityProblem& problem) {
  const auto& g = problem.equalities;
  const auto& f = problem.inequalities;
  const Eigen::Index dim = std::max(g.cols(), f.cols());
  if ((g.rows() > 0 && g.cols() != dim) || (f.rows() > 0 && f.cols() != dim)) {
    throw Error(ErrorKind::dimension_mismatch, "functionals act on different spaces");
  }
  const Eigen::Index ne = g.rows();
  const Eigen::Index ni = f.rows();

  ConvexityResult out;
  Eigen::MatrixXd all(ne + ni, dim);
  if (ne > 0) all.topRows(ne) = g;
  if (ni > 0) all.bottomRows(ni) = f;
  out.full_rank = linalg::numerical_rank(all).rank == dim;
  if (!out.full_rank) {
    out.failure = "functionals do not span the tangent space";
    return out;
  }
  if (ni == 0) {
    out.failure = "no inequalities to combine";
    return out;
  }

  const Eigen::MatrixXd deps = linalg::left_null_space(all);
  Eigen::VectorXd a;
  if (deps.cols() == 0) {
    out.failure = "functionals are independent; zero has no positive combination";
    return out;
  }
  if (deps.cols() == 1) {
    Eigen::VectorXd w = deps.col(0);
    if (w.tail(ni).sum() < 0.0) w = -w;
    if ((w.tail(ni).array() <= 0.0).any() ||
        w.tail(ni).minCoeff() <= 1e-12 * w.cwiseAbs().maxCoeff()) {
      out.failure = "inequality coefficients are not all positive";
      return out;
    }
    out.coefficients = w / w.tail(ni).minCoeff();
  } else {
    // a >= 1 with the inequality combination inside the span of the
    // equalities: NNLS on a = 1 + s after projecting that span out.
    Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(dim, dim);
    if (ne > 0) {
      const Eigen::MatrixXd q = linalg::orthonormal_basis(g.transpose());
      proj -= q * q.transpose();
    }
    const Eigen::MatrixXd m = proj * f.transpose();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ni);
    const auto sol = linalg::nnls(m, -m * ones);
    a = ones + sol.x;
    if (sol.residual > linalg::kRankTolerance * std::max(1.0, m.norm() * a.norm())) {
      out.failure = "no strictly positive combination of the inequalities";
      return out;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(ne);
    if (ne > 0) b = g.transpose().colPivHouseholderQr().solve(-f.transpose() * a);
    out.coefficients.resize(ne + ni);
    out.coefficients << b, a;
    out.coefficients /= a.minCoeff();
  }
  out.positive_combination = true;
  return out;
}

ConvexityProblem convexity_problem_at(const BeadOnPlane& setup, const Point& position) {
  ConvexityProblem p;
  p.equalities = setup.plane.normal.transpose();
  p.inequalities.resize(static_cast<Eigen::Index>(setup.inequalities.size()), 3);
  for (std::size_t k = 0; k < setup.inequalities.size(); ++k) {
    p.inequalities.row(static_cast<Eigen::Index>(k)) = 2.0 * (position - setup.inequalities[k].center).transpose();
  }
  return p;
}

BeadBalance bead_balance(const Point& t0, const Point& t1, const Point& t2, const Point& bead) {
  const Point u0 = t0 - bead;
  const Point u1 = t1 - bead;
  const Point u2 = t2 - bead;
  if (u0.cross(u1).norm() <= 1e-12 * u0.norm() * u1.norm()) {
    throw Error(ErrorKind::degenerate_directions, "anchor directions t0 - b and t1 - b are parallel");
  }
  Eigen::Matrix<double, 3, 2> basis;
  basis << u0, u1;
  const Eigen::Vector2d a = basis.colPivHouseholderQr().solve(u2);
  return {a(0), a(1), a(0) < 0.0 && a(1) < 0.0};
}

}  // namespace tensegrity
