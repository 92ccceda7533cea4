#include "tensegrity/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tensegrity/constraints.hpp"
#include "tensegrity/error.hpp"
#include "tensegrity/linalg.hpp"
#include "tensegrity/stability.hpp"

namespace tensegrity {

namespace {

struct MemberTerms {
  Eigen::VectorXd axial;    // EA/L0, zero for slack cables
  Eigen::VectorXd density;  // s * q
};

MemberTerms member_terms(const Model& model, const MaterialMap& materials, double prestress_scale) {
  const int count = model.num_members();
  MemberTerms t{Eigen::VectorXd::Zero(count), Eigen::VectorXd::Zero(count)};
  std::optional<SelfStress> stress;
  if (prestress_scale != 0.0) {
    stress = self_stress(model);
    if (!stress) throw Error(ErrorKind::invalid_argument, "prestress requested but the model has no self-stress");
  }
  for (int k = 0; k < count; ++k) {
    const Pair p = model.member(k);
    const MemberKind kind = model.member_kind(k);
    const double current = model.distance(p.i, p.j);
    const double rest = model.rest_length(k);
    const bool slack = kind == MemberKind::cable && rest > current * (1.0 + 1e-12);
    if (!slack) {
      const MaterialSpec& spec = materials.lookup(kind);
      t.axial(k) = spec.youngs_modulus * spec.area() / rest;
    }
    if (stress) t.density(k) = prestress_scale * stress->density(k);
  }
  return t;
}

}  // namespace

Eigen::MatrixXd tangent_stiffness(const Model& model, const MaterialMap& materials, double prestress_scale) {
  const int d = model.dimension();
  const MemberTerms terms = member_terms(model, materials, prestress_scale);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(model.dofs(), model.dofs());
  for (int e = 0; e < model.num_members(); ++e) {
    const Pair p = model.member(e);
    const Eigen::VectorXd u = (model.point(p.j) - model.point(p.i)).head(d).normalized();
    const Eigen::MatrixXd uu = u * u.transpose();
    const Eigen::MatrixXd ke = terms.axial(e) * uu +
                               terms.density(e) * (Eigen::MatrixXd::Identity(d, d) - uu);
    k.block(d * p.i, d * p.i, d, d) += ke;
    k.block(d * p.j, d * p.j, d, d) += ke;
    k.block(d * p.i, d * p.j, d, d) -= ke;
    k.block(d * p.j, d * p.i, d, d) -= ke;
  }
  return k;
}

Eigen::VectorXd mass_matrix(const Model& model, const MaterialMap& materials) {
  const int d = model.dimension();
  Eigen::VectorXd node = Eigen::VectorXd::Zero(model.num_points());
  for (int e = 0; e < model.num_members(); ++e) {
    const Pair p = model.member(e);
    const MaterialSpec& spec = materials.lookup(model.member_kind(e));
    const double half = 0.5 * spec.density * spec.area() * model.rest_length(e);
    node(p.i) += half;
    node(p.j) += half;
  }
  Eigen::VectorXd m(model.dofs());
  for (int i = 0; i < model.num_points(); ++i) {
    if (!(node(i) > 0.0)) throw Error(ErrorKind::invalid_model, "node " + std::to_string(i) + " carries no mass");
    m.segment(d * i, d).setConstant(node(i));
  }
  return m;
}

const char* to_string(ModeTag tag) {
  switch (tag) {
    case ModeTag::rigid: return "rigid";
    case ModeTag::soft: return "soft";
    case ModeTag::stiff: return "stiff";
  }
  return "unknown";
}

ModalResult modal_analysis(const Model& model, const MaterialMap& materials, const ModalOptions& options) {
  if (options.count < 1) throw Error(ErrorKind::invalid_argument, "mode count must be positive");
  const int d = model.dimension();
  const int dofs = model.dofs();

  std::vector<bool> fixed(static_cast<std::size_t>(model.num_points()), false);
  for (int i : options.fixed_nodes) {
    if (i < 0 || i >= model.num_points()) throw Error(ErrorKind::invalid_argument, "fixed node out of range");
    fixed[static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> free_slots;
  std::vector<int> fixed_slots;
  for (int i = 0; i < model.num_points(); ++i) {
    for (int a = 0; a < d; ++a) (fixed[static_cast<std::size_t>(i)] ? fixed_slots : free_slots).push_back(d * i + a);
  }
  const auto nf = static_cast<Eigen::Index>(free_slots.size());
  if (nf == 0) throw Error(ErrorKind::invalid_argument, "every node is fixed");

  const Eigen::VectorXd mass = mass_matrix(model, materials);
  Eigen::VectorXd root_mass(nf);
  for (Eigen::Index s = 0; s < nf; ++s) root_mass(s) = std::sqrt(mass(free_slots[static_cast<std::size_t>(s)]));
  const Eigen::VectorXd inv_root = root_mass.cwiseInverse();

  // Rigid motions that vanish on the fixed slots, M-orthonormal in the
  // weighted coordinates y = M^{1/2} x.
  const Eigen::MatrixXd rigid = linalg::orthonormal_basis(rigid_body_basis(model).vectors);
  Eigen::MatrixXd surviving = rigid;
  if (!fixed_slots.empty()) {
    Eigen::MatrixXd at_fixed(static_cast<Eigen::Index>(fixed_slots.size()), rigid.cols());
    for (std::size_t s = 0; s < fixed_slots.size(); ++s) at_fixed.row(static_cast<Eigen::Index>(s)) = rigid.row(fixed_slots[s]);
    surviving = rigid * linalg::null_space(at_fixed);
  }
  Eigen::MatrixXd weighted_rigid(nf, surviving.cols());
  for (Eigen::Index s = 0; s < nf; ++s) {
    weighted_rigid.row(s) = root_mass(s) * surviving.row(free_slots[static_cast<std::size_t>(s)]);
  }
  const Eigen::MatrixXd q = surviving.cols() > 0 ? linalg::orthonormal_basis(weighted_rigid)
                                                  : Eigen::MatrixXd(nf, 0);
  const Eigen::Index nr = q.cols();

  // Orthonormal complement of the rigid span.
  Eigen::MatrixXd comp;
  if (nr == 0) {
    comp = Eigen::MatrixXd::Identity(nf, nf);
  } else {
    comp = linalg::null_space(q.transpose());
  }
  const Eigen::Index ne = comp.cols();

  Eigen::VectorXd omega(ne);
  Eigen::MatrixXd vectors(ne, ne);
  ModalResult result;
  if (options.prestress_scale == 0.0) {
    // K = B^T diag(k) B, so omega are the singular values of
    // diag(sqrt k) B M^{-1/2} C; this keeps near-zero modes accurate.
    const MemberTerms terms = member_terms(model, materials, 0.0);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(model.num_members(), nf);
    for (int e = 0; e < model.num_members(); ++e) {
      const Eigen::RowVectorXd row = std::sqrt(terms.axial(e)) * member_covector(model, model.member(e), true);
      for (Eigen::Index s = 0; s < nf; ++s) g(e, s) = row(free_slots[static_cast<std::size_t>(s)]) * inv_root(s);
    }
    const Eigen::MatrixXd gc = g * comp;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gc, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    for (Eigen::Index j = 0; j < ne; ++j) omega(j) = j < sv.size() ? sv(j) : 0.0;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ne));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return omega(a) < omega(b); });
    Eigen::VectorXd sorted(ne);
    for (Eigen::Index j = 0; j < ne; ++j) {
      sorted(j) = omega(order[static_cast<std::size_t>(j)]);
      vectors.col(j) = svd.matrixV().col(order[static_cast<std::size_t>(j)]);
    }
    omega = sorted;
    result.min_eigenvalue = ne > 0 ? omega(0) * omega(0) : 0.0;
  } else {
    const Eigen::MatrixXd k = tangent_stiffness(model, materials, options.prestress_scale);
    Eigen::MatrixXd kf(nf, nf);
    for (Eigen::Index a = 0; a < nf; ++a) {
      for (Eigen::Index b = 0; b < nf; ++b) {
        kf(a, b) = k(free_slots[static_cast<std::size_t>(a)], free_slots[static_cast<std::size_t>(b)]) * inv_root(a) * inv_root(b);
      }
    }
    const Eigen::MatrixXd reduced = comp.transpose() * kf * comp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (reduced + reduced.transpose()));
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    for (Eigen::Index j = 0; j < ne; ++j) {
      omega(j) = lambda(j) < 0.0 ? -std::sqrt(-lambda(j)) : std::sqrt(lambda(j));
    }
    vectors = eig.eigenvectors();
    result.min_eigenvalue = ne > 0 ? lambda(0) : 0.0;
    const double scale = ne > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0;
    result.indefinite = ne > 0 && lambda(0) < -linalg::kRankTolerance * scale;
  }

  // Rigid modes (omega = 0) merged ahead of equal elastic frequencies.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(nr + ne));
  std::iota(order.begin(), order.end(), 0);
  auto freq = [&](Eigen::Index j) { return j < nr ? 0.0 : omega(j - nr); };
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return freq(a) < freq(b); });

  const Eigen::Index total = std::min<Eigen::Index>(options.count, nr + ne);
  result.rigid_modes = static_cast<int>(nr);
  result.frequencies.resize(total);
  result.modes = Eigen::MatrixXd::Zero(dofs, total);
  result.rigid_fraction.resize(total);
  for (Eigen::Index j = 0; j < total; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    const Eigen::VectorXd y = src < nr ? Eigen::VectorXd(q.col(src)) : Eigen::VectorXd(comp * vectors.col(src - nr));
    result.frequencies(j) = freq(src);
    result.rigid_fraction(j) = nr > 0 ? (q.transpose() * y).squaredNorm() : 0.0;
    for (Eigen::Index s = 0; s < nf; ++s) result.modes(free_slots[static_cast<std::size_t>(s)], j) = y(s) * inv_root(s);
  }
  return classify_modes(std::move(result));
}

ModalResult classify_modes(ModalResult result, double rigid_tol, double soft_ratio) {
  const Eigen::Index n = result.frequencies.size();
  result.tags.assign(static_cast<std::size_t>(n), ModeTag::stiff);
  const double top = n > 0 ? result.frequencies.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w = result.frequencies(j);
    const bool near_zero = std::abs(w) <= rigid_tol * top;
    const bool mostly_rigid = j < result.rigid_fraction.size() && result.rigid_fraction(j) >= 0.5;
    auto& tag = result.tags[static_cast<std::size_t>(j)];
    if (top == 0.0 || (near_zero && mostly_rigid)) {
      tag = ModeTag::rigid;
    } else if (j + 1 < n && w < soft_ratio * result.frequencies(j + 1)) {
      tag = ModeTag::soft;
    }
  }
  return result;
}

}  // namespace tensegrity
