#include "tensegrity/formfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "tensegrity/constraints.hpp"
#include "tensegrity/error.hpp"
#include "tensegrity/linalg.hpp"

namespace tensegrity {

CandidateSet enumerate_candidates(const Model& model, std::optional<double> max_length) {
  if (model.num_rods() == 0) throw Error(ErrorKind::invalid_model, "form-finding needs rods");
  const std::set<Pair> rods(model.rods().begin(), model.rods().end());
  CandidateSet out;
  out.max_length = max_length;
  for (int i = 0; i < model.num_points(); ++i) {
    for (int j = i + 1; j < model.num_points(); ++j) {
      const Pair p(i, j);
      if (rods.count(p)) continue;
      if (max_length && model.distance(i, j) > *max_length * (1.0 + 1e-12)) continue;
      out.pairs.push_back(p);
    }
  }
  if (out.pairs.empty()) throw Error(ErrorKind::empty_candidate_set, "no candidate pair passes the filter");
  return out;
}

Projection project_to_affine(const Model& model, std::span<const Pair> active) {
  const auto m = static_cast<Eigen::Index>(active.size());
  if (m == 0) throw Error(ErrorKind::invalid_argument, "active candidate set is empty");
  const auto nr = static_cast<Eigen::Index>(model.num_rods());
  const Eigen::Index dofs = model.dofs();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dofs + 1, m + nr);
  for (Eigen::Index k = 0; k < m; ++k) {
    a.col(k).head(dofs) = member_covector(model, active[static_cast<std::size_t>(k)], false).transpose();
    a(dofs, k) = 1.0;
  }
  for (Eigen::Index r = 0; r < nr; ++r) {
    a.col(m + r).head(dofs) = member_covector(model, model.rods()[static_cast<std::size_t>(r)], false).transpose();
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dofs + 1);
  b(dofs) = 1.0;

  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m + nr);
  e.leftCols(m).setIdentity();
  const Eigen::VectorXd centroid = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));

  const auto x = linalg::equality_constrained_lsq(e, centroid, a, b);
  if (!x) throw Error(ErrorKind::infeasible_affine_set, "no dependency with coefficients summing to 1");
  return {x->head(m), x->tail(nr), centroid};
}

ExitFace exit_face(const Eigen::VectorXd& q, const Eigen::VectorXd& epsilon) {
  if (q.size() != epsilon.size() || q.size() == 0) {
    throw Error(ErrorKind::dimension_mismatch, "q and epsilon differ in size");
  }
  Eigen::Index idx = 0;
  const double lowest = epsilon.minCoeff(&idx);  // first minimum on ties
  if (!(lowest < 0.0)) throw Error(ErrorKind::no_negative_coordinate, "epsilon already lies in the simplex");
  const double m = q(idx);
  ExitFace out;
  out.index = static_cast<int>(idx);
  out.t = m / (m - lowest);
  out.point = q + out.t * (epsilon - q);
  out.point(idx) = 0.0;
  return out;
}

StabilityReport validate_design(const Model& model, std::span<const Pair> chosen) {
  return certify_stability(model.with_cables(std::vector<Pair>(chosen.begin(), chosen.end())));
}

namespace {

std::string pair_text(Pair p) {
  std::ostringstream s;
  s << '(' << p.i << ',' << p.j << ')';
  return s.str();
}

class Search {
 public:
  Search(const Model& model, const CandidateSet& candidates, const FormFindOptions& options, int target)
      : model_(model), candidates_(candidates), options_(options), target_(target) {}

  FormFindResult run() {
    FormFindState root;
    root.active.resize(candidates_.pairs.size());
    std::iota(root.active.begin(), root.active.end(), 0);
    visit(std::move(root));
    result_.nodes = nodes_;
    return std::move(result_);
  }

 private:
  bool done() const {
    return static_cast<int>(result_.solutions.size()) >= options_.max_solutions || result_.node_limit_reached;
  }

  void log(const FormFindState& s, double min_eps, std::string action) {
    TraceEntry entry{nodes_, s.depth, static_cast<int>(s.active.size()), min_eps, std::move(action)};
    if (options_.trace_sink) options_.trace_sink(entry);
    result_.trace.push_back(std::move(entry));
  }

  std::vector<Pair> pairs_of(const std::vector<int>& active) const {
    std::vector<Pair> out;
    for (int k : active) out.push_back(candidates_.pairs[static_cast<std::size_t>(k)]);
    return out;
  }

  void descend(const FormFindState& s, int position, Eigen::VectorXd lambda) {
    FormFindState child;
    child.active = s.active;
    child.active.erase(child.active.begin() + position);
    child.dropped = s.dropped;
    child.dropped.push_back(s.active[static_cast<std::size_t>(position)]);
    child.lambda = std::move(lambda);
    child.depth = s.depth + 1;
    visit(std::move(child));
  }

  void visit(FormFindState s) {
    if (done()) return;
    if (static_cast<int>(s.active.size()) < target_) return;
    if (!visited_.insert(s.active).second) return;
    if (nodes_ >= options_.node_limit) {
      result_.node_limit_reached = true;
      return;
    }
    ++nodes_;

    const auto pairs = pairs_of(s.active);
    try {
      auto proj = project_to_affine(model_, pairs);
      s.epsilon = std::move(proj.epsilon);
      s.rho = std::move(proj.rho);
      s.centroid = std::move(proj.centroid);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::infeasible_affine_set) throw;
      log(s, std::nan(""), "infeasible");
      return;
    }

    const double tol = options_.positivity_tolerance;
    const Eigen::VectorXd& eps = s.epsilon;
    const double min_eps = eps.minCoeff();
    const auto size = static_cast<int>(s.active.size());

    std::vector<int> order(static_cast<std::size_t>(size));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eps(a) < eps(b); });

    if (min_eps > tol) {
      s.lambda = eps;
      if (size == target_) {
        auto report = validate_design(model_, pairs);
        if (report.verdict == Verdict::stable) {
          log(s, min_eps, "accept");
          result_.solutions.push_back({pairs, s.lambda, std::move(report)});
        } else {
          log(s, min_eps, std::string("reject ") + to_string(report.verdict));
        }
        return;
      }
      log(s, min_eps, "interior: branch over " + std::to_string(size) + " drops");
      for (int k : order) {
        if (done()) return;
        descend(s, k, eps);
      }
      return;
    }

    const auto negatives = static_cast<int>((eps.array() < 0.0).count());
    if (negatives == 0) {
      const int k = order.front();
      log(s, min_eps, "drop " + pair_text(pairs[static_cast<std::size_t>(k)]) + " at face");
      descend(s, k, eps);
      return;
    }
    const ExitFace face = exit_face(s.centroid, eps);
    if (negatives == 1) {
      log(s, min_eps, "drop " + pair_text(pairs[static_cast<std::size_t>(face.index)]));
      descend(s, face.index, face.point);
      return;
    }
    log(s, min_eps, "branch over " + std::to_string(negatives) + " negatives");
    for (int k : order) {
      if (done() || !(eps(k) < 0.0)) return;
      descend(s, k, k == face.index ? face.point : Eigen::VectorXd());
    }
  }

  const Model& model_;
  const CandidateSet& candidates_;
  const FormFindOptions& options_;
  int target_;
  int nodes_ = 0;
  std::set<std::vector<int>> visited_;
  FormFindResult result_;
};

}  // namespace

FormFindResult formfind_search(const Model& model, const CandidateSet& candidates,
                               const FormFindOptions& options) {
  const int target = options.target_sigma.value_or(required_strings(model.num_rods(), model.dimension()));
  if (target < 1) throw Error(ErrorKind::invalid_argument, "target string count must be positive");
  if (options.max_solutions < 1) throw Error(ErrorKind::invalid_argument, "max_solutions must be positive");
  const std::set<Pair> rods(model.rods().begin(), model.rods().end());
  const std::set<Pair> unique(candidates.pairs.begin(), candidates.pairs.end());
  if (unique.size() != candidates.pairs.size()) throw Error(ErrorKind::invalid_argument, "duplicate candidate pair");
  for (const Pair& p : candidates.pairs) {
    if (rods.count(p)) throw Error(ErrorKind::invalid_argument, "candidate " + pair_text(p) + " is a rod");
    if (p.j >= model.num_points()) throw Error(ErrorKind::invalid_argument, "candidate index out of range");
  }
  if (static_cast<int>(candidates.pairs.size()) < target) {
    throw Error(ErrorKind::exhausted, "candidate pool of " + std::to_string(candidates.pairs.size()) +
                                          " is smaller than the target " + std::to_string(target));
  }

  auto result = Search(model, candidates, options, target).run();
  if (result.solutions.empty()) {
    throw Error(ErrorKind::exhausted, result.node_limit_reached
                                          ? "node limit reached without a positive-stress string set"
                                          : "every branch is infeasible or sign-blocked");
  }
  return result;
}

}  // namespace tensegrity
