#include "tensegrity/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tensegrity::linalg {

namespace {

double threshold_for(const Eigen::VectorXd& s, Eigen::Index rows, Eigen::Index cols) {
  const double smax = s.size() > 0 ? s(0) : 0.0;
  return kRankTolerance * smax * static_cast<double>(std::max(rows, cols));
}

int count_above(const Eigen::VectorXd& s, double threshold) {
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > threshold) ++r;
  }
  return r;
}

}  // namespace

RankInfo numerical_rank(const Eigen::MatrixXd& a) {
  RankInfo info;
  if (a.size() == 0) {
    info.singular_values = Eigen::VectorXd(0);
    return info;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  info.singular_values = svd.singularValues();
  info.threshold = threshold_for(info.singular_values, a.rows(), a.cols());
  info.rank = count_above(info.singular_values, info.threshold);
  return info;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return Eigen::MatrixXd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const int r = count_above(s, threshold_for(s, a.rows(), a.cols()));
  return svd.matrixV().rightCols(a.cols() - r);
}

Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& a) {
  return null_space(a.transpose());
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& a) {
  if (a.cols() == 0 || a.rows() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const int r = count_above(s, threshold_for(s, a.rows(), a.cols()));
  return svd.matrixU().leftCols(r);
}

std::optional<Eigen::VectorXd> equality_constrained_lsq(const Eigen::MatrixXd& e, const Eigen::VectorXd& f,
                                                        const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = e.cols();
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  if (a.rows() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankTolerance * static_cast<double>(std::max(a.rows(), a.cols())));
    x0 = svd.solve(b);
    const double scale = a.norm() * x0.norm() + b.norm();
    if ((a * x0 - b).norm() > kRankTolerance * std::max(scale, 1.0)) return std::nullopt;
  }
  const Eigen::MatrixXd z = null_space(a);
  if (z.cols() == 0) return x0;
  const Eigen::MatrixXd ez = e * z;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ez, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTolerance * static_cast<double>(std::max(ez.rows(), ez.cols())));
  const Eigen::VectorXd y = svd.solve(f - e * x0);
  return Eigen::VectorXd(x0 + z * y);
}

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.norm() *
                     static_cast<double>(std::max(a.rows(), a.cols()));

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Eigen::MatrixXd ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    const Eigen::VectorXd sp = ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Eigen::Index>(k));
    return s;
  };

  Eigen::VectorXd w = a.transpose() * (b - a * x);
  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > wmax) {
        wmax = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner <= static_cast<int>(n); ++inner) {
      Eigen::VectorXd s = solve_passive();
      bool feasible = true;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && s(j) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
    w = a.transpose() * (b - a * x);
  }
  return {x, (a * x - b).norm()};
}

}  // namespace tensegrity::linalg
