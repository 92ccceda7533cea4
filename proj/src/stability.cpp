#include "tensegrity/stability.hpp"

#include <algorithm>
#include <cmath>

#include "tensegrity/constraints.hpp"
#include "tensegrity/error.hpp"
#include "tensegrity/geometry.hpp"
#include "tensegrity/linalg.hpp"

namespace tensegrity {

namespace {

constexpr double kPositiveTolerance = 1e-9;

// Counting bound D*N - rigid - n; may be negative for a single rod.
int count_bound(int dofs, int dimension, int rods) { return dofs - rigid_mode_count(dimension) - rods; }

}  // namespace

int required_strings(int rods, int dimension) {
  if (rods < 1) throw Error(ErrorKind::invalid_argument, "required_strings needs at least one rod");
  if (dimension != 2 && dimension != 3) throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
  return std::max(0, count_bound(2 * dimension * rods, dimension, rods) + 1);
}

int minimum_strings(int rods, int dimension) {
  if (rods < 1) throw Error(ErrorKind::invalid_argument, "minimum_strings needs at least one rod");
  if (dimension != 2 && dimension != 3) throw Error(ErrorKind::invalid_argument, "dimension must be 2 or 3");
  return std::max(0, count_bound(2 * dimension * rods, dimension, rods));
}

Eigen::MatrixXd soft_modes(const Model& model) {
  const Eigen::MatrixXd members = member_matrix(model, true);
  const Eigen::MatrixXd rigid = linalg::orthonormal_basis(rigid_body_basis(model).vectors);
  Eigen::MatrixXd stacked(members.rows() + rigid.cols(), model.dofs());
  stacked << members, rigid.transpose();
  return linalg::null_space(stacked);
}

double SelfStress::density(int k) const {
  const auto nr = static_cast<int>(rho.size());
  return gamma * (k < nr ? rho.at(static_cast<std::size_t>(k)) : a.at(static_cast<std::size_t>(k - nr)));
}

int dependency_dimension(const Model& model) {
  return static_cast<int>(linalg::left_null_space(member_matrix(model, false)).cols());
}

std::optional<SelfStress> self_stress(const Model& model) {
  const Eigen::MatrixXd w = linalg::left_null_space(member_matrix(model, false));
  if (w.cols() == 0) return std::nullopt;
  if (w.cols() > 1) throw OverDeterminedStress(static_cast<int>(w.cols()));

  Eigen::VectorXd raw = w.col(0);
  const int nr = model.num_rods();
  const int nc = model.num_cables();
  const Eigen::VectorXd cables = raw.tail(nc);
  const double small = 1e-12 * raw.cwiseAbs().maxCoeff();
  const auto positive = (cables.array() > small).count();
  const auto negative = (cables.array() < -small).count();
  bool flip = negative > positive || (negative == positive && cables.sum() < 0.0);
  if (nc == 0) flip = raw.head(nr).sum() > 0.0;
  if (flip) raw = -raw;

  const double cable_max = nc > 0 ? raw.tail(nc).cwiseAbs().maxCoeff() : 0.0;
  raw /= cable_max > small ? cable_max : raw.cwiseAbs().maxCoeff();

  SelfStress s;
  s.rho.assign(raw.data(), raw.data() + nr);
  s.a.assign(raw.data() + nr, raw.data() + nr + nc);
  s.gamma = 1.0 / raw.norm();
  for (int k = 0; k < model.num_members(); ++k) {
    const Pair p = model.member(k);
    const double f = s.gamma * raw(k) * model.distance(p.i, p.j);
    (k < nr ? s.rod_forces : s.cable_forces).push_back(f);
  }
  return s;
}

std::vector<Point> node_force_residuals(const SelfStress& stress, const Model& model) {
  std::vector<Point> net(static_cast<std::size_t>(model.num_points()), Point::Zero());
  for (int k = 0; k < model.num_members(); ++k) {
    const Pair p = model.member(k);
    const Point pull = stress.density(k) * (model.point(p.j) - model.point(p.i));
    net[p.i] += pull;
    net[p.j] -= pull;
  }
  return net;
}

ForceTable member_forces(const std::optional<SelfStress>& stress, const Model& model) {
  ForceTable table;
  if (!stress) return table;
  for (int k = 0; k < model.num_members(); ++k) {
    const Pair p = model.member(k);
    const double q = stress->density(k);
    const double f = q * model.distance(p.i, p.j);
    table.members.push_back({p, model.member_kind(k), q, f});
    table.max_force = std::max(table.max_force, std::abs(f));
  }
  for (const auto& r : node_force_residuals(*stress, model)) {
    table.max_equilibrium_residual = std::max(table.max_equilibrium_residual, r.norm());
  }
  return table;
}

DependencyCoefficients dependency_coefficients(const Model& model, Pair target) {
  int t = -1;
  for (int k = 0; k < model.num_members(); ++k) {
    if (model.member(k) == target) t = k;
  }
  if (t < 0) throw Error(ErrorKind::invalid_argument, "target pair is not a member");

  const Eigen::MatrixXd rows = member_matrix(model, false);
  Eigen::MatrixXd others(rows.rows() - 1, rows.cols());
  std::vector<int> index;
  for (int k = 0, r = 0; k < model.num_members(); ++k) {
    if (k == t) continue;
    others.row(r++) = rows.row(k);
    index.push_back(k);
  }
  if (linalg::numerical_rank(others).rank < others.rows()) {
    throw Error(ErrorKind::rank_deficient, "remaining member rows are dependent");
  }
  const Eigen::VectorXd rhs = rows.row(t).transpose();
  const Eigen::VectorXd b = others.transpose().colPivHouseholderQr().solve(rhs);

  DependencyCoefficients out;
  out.target = target;
  out.target_kind = model.member_kind(t);
  out.residual = (others.transpose() * b - rhs).norm();
  if (out.residual > linalg::kRankTolerance * std::max(1.0, rhs.norm())) {
    throw Error(ErrorKind::target_not_representable, "target row is independent of the others");
  }
  bool any_cable = false;
  bool all_negative = true;
  for (std::size_t r = 0; r < index.size(); ++r) {
    const int k = index[r];
    out.terms.push_back({model.member(k), model.member_kind(k), b(static_cast<Eigen::Index>(r)), 0.0});
    if (model.member_kind(k) == MemberKind::cable) {
      any_cable = true;
      all_negative = all_negative && b(static_cast<Eigen::Index>(r)) < 0.0;
    }
  }
  out.strings_all_negative = any_cable && all_negative;
  return out;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::stable: return "stable";
    case Verdict::soft_mode: return "soft-mode";
    case Verdict::no_positive_stress: return "no-positive-stress";
    case Verdict::under_strung: return "under-strung";
  }
  return "unknown";
}

StabilityReport certify_stability(const Model& model) {
  StabilityReport r;
  r.n = model.num_rods();
  r.sigma = model.num_cables();
  r.dofs = model.dofs();
  const int bound = count_bound(r.dofs, model.dimension(), r.n);
  r.minimum_sigma = std::max(0, bound);
  r.required_sigma = std::max(0, bound + 1);
  r.rigid_rank = rigid_body_basis(model).rank;

  const auto rank = linalg::numerical_rank(member_matrix(model, true));
  r.member_rank = rank.rank;
  r.member_singular_values = rank.singular_values;
  r.dependency_dim = model.num_members() - r.member_rank;
  r.soft_modes = soft_modes(model);

  try {
    r.self_stress = self_stress(model);
  } catch (const OverDeterminedStress& e) {
    r.note = e.what();
  }
  if (r.self_stress) {
    for (int c = 0; c < r.sigma; ++c) {
      if (!(r.self_stress->density(r.n + c) > kPositiveTolerance)) {
        r.non_positive_cables.push_back(model.cables()[static_cast<std::size_t>(c)]);
      }
    }
  }

  if (r.sigma < r.minimum_sigma) {
    r.verdict = Verdict::under_strung;
  } else if (r.soft_mode_count() > 0) {
    r.verdict = Verdict::soft_mode;
  } else if (!r.self_stress || !r.non_positive_cables.empty()) {
    r.verdict = Verdict::no_positive_stress;
  } else {
    r.verdict = Verdict::stable;
  }
  return r;
}

}  // namespace tensegrity
