#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tensegrity/model.hpp"
#include "tensegrity/stability.hpp"

namespace tensegrity {

struct CandidateSet {
  std::vector<Pair> pairs;
  std::optional<double> max_length;
};

/// All non-rod pairs in lexicographic order, optionally limited to current
/// distance <= max_length. Throws empty_candidate_set.
CandidateSet enumerate_candidates(const Model& model, std::optional<double> max_length = std::nullopt);

struct Projection {
  Eigen::VectorXd epsilon;  // one entry per active candidate, sums to 1
  Eigen::VectorXd rho;      // rod coefficients
  Eigen::VectorXd centroid;
};

/// Nearest point to the simplex centroid on the affine set of candidate
/// coefficients that, with free rod coefficients, combine the member rows
/// to zero and sum to 1. Throws infeasible_affine_set.
Projection project_to_affine(const Model& model, std::span<const Pair> active);

struct ExitFace {
  int index = 0;
  double t = 0.0;
  Eigen::VectorXd point;
};

/// Where the segment from q towards epsilon leaves the simplex: the most
/// negative coordinate (lowest index on ties), t = m / (m - eps_l).
/// Throws no_negative_coordinate.
ExitFace exit_face(const Eigen::VectorXd& q, const Eigen::VectorXd& epsilon);

/// One search node.
struct FormFindState {
  std::vector<int> active;   // indices into the candidate set
  std::vector<int> dropped;  // eliminated candidate indices on this path
  Eigen::VectorXd lambda;    // accepted coordinates
  Eigen::VectorXd rho;
  Eigen::VectorXd epsilon;
  Eigen::VectorXd centroid;
  int depth = 0;
};

struct TraceEntry {
  int node = 0;
  int depth = 0;
  int active_size = 0;
  double min_epsilon = 0.0;
  std::string action;
};

struct FormFindOptions {
  std::optional<int> target_sigma;  // default: required_strings
  int max_solutions = 1;
  int node_limit = 64;
  double positivity_tolerance = 1e-9;
  std::function<void(const TraceEntry&)> trace_sink;
};

struct FormFindSolution {
  std::vector<Pair> cables;
  Eigen::VectorXd lambda;
  StabilityReport report;
};

struct FormFindResult {
  std::vector<FormFindSolution> solutions;
  std::vector<TraceEntry> trace;
  int nodes = 0;
  bool node_limit_reached = false;
};

/// Depth-first simplex-projection search for a positive-stress cable set
/// of size target_sigma drawn from the candidates. Every returned set has
/// passed certify_stability. Throws exhausted when no branch succeeds.
FormFindResult formfind_search(const Model& model, const CandidateSet& candidates,
                               const FormFindOptions& options = {});

/// certify_stability on the model with its cables replaced by `chosen`.
StabilityReport validate_design(const Model& model, std::span<const Pair> chosen);

}  // namespace tensegrity
