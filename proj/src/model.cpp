#include "tensegrity/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "tensegrity/error.hpp"

namespace tensegrity {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_model: return "invalid-model";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::infeasible_height: return "infeasible-height";
    case ErrorKind::coincident_points: return "coincident-points";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::zero_length: return "zero-length";
    case ErrorKind::all_collinear: return "all-collinear";
    case ErrorKind::no_full_rank_combination: return "no-full-rank-combination";
    case ErrorKind::over_determined_stress: return "over-determined-stress";
    case ErrorKind::target_not_representable: return "target-not-representable";
    case ErrorKind::rank_deficient: return "rank-deficient";
    case ErrorKind::degenerate_directions: return "degenerate-directions";
    case ErrorKind::empty_candidate_set: return "empty-candidate-set";
    case ErrorKind::infeasible_affine_set: return "infeasible-affine-set";
    case ErrorKind::no_negative_coordinate: return "no-negative-coordinate";
    case ErrorKind::exhausted: return "exhausted";
    case ErrorKind::missing_material: return "missing-material";
    case ErrorKind::unknown_builtin: return "unknown-builtin";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

OverDeterminedStress::OverDeterminedStress(int dimension)
    : Error(ErrorKind::over_determined_stress,
            "self-stress space has dimension " + std::to_string(dimension)),
      dimension_(dimension) {}

const char* to_string(MemberKind kind) { return kind == MemberKind::rod ? "rod" : "cable"; }

double MaterialSpec::area() const { return std::numbers::pi * radius * radius; }

MaterialSpec MaterialSpec::steel() { return {210e9, 8000.0, 0.01, true}; }

MaterialSpec MaterialSpec::kevlar(double youngs_modulus) {
  return {youngs_modulus, 1440.0, 0.001, false};
}

const MaterialSpec& MaterialMap::lookup(MemberKind kind) const {
  const auto& spec = kind == MemberKind::rod ? rod : cable;
  if (!spec) {
    throw Error(ErrorKind::missing_material, std::string("no material for ") + to_string(kind) + "s");
  }
  return *spec;
}

MaterialMap MaterialMap::steel_and_kevlar(double kevlar_modulus) {
  return {MaterialSpec::steel(), MaterialSpec::kevlar(kevlar_modulus)};
}

namespace {

std::string pair_text(Pair p) {
  std::ostringstream os;
  os << "{" << p.i << "," << p.j << "}";
  return os.str();
}

void check_pairs(const std::vector<Pair>& pairs, int n, const char* what, std::set<Pair>& seen) {
  for (const auto& p : pairs) {
    if (p.i < 0 || p.j >= n) {
      throw Error(ErrorKind::invalid_model, std::string(what) + " " + pair_text(p) + " out of range");
    }
    if (p.i == p.j) {
      throw Error(ErrorKind::invalid_model, std::string(what) + " joins a point to itself");
    }
    if (!seen.insert(p).second) {
      throw Error(ErrorKind::invalid_model, "pair " + pair_text(p) + " listed twice");
    }
  }
}

std::vector<double> current_lengths(const std::vector<Point>& points, const std::vector<Pair>& pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back((points[p.i] - points[p.j]).norm());
  return out;
}

}  // namespace

Model::Model(int dimension, std::vector<Point> points, std::vector<Pair> rods, std::vector<Pair> cables,
             std::vector<double> rod_lengths, std::vector<double> cable_lengths, std::vector<int> anchors,
             std::optional<MaterialMap> materials)
    : dimension_(dimension),
      points_(std::move(points)),
      rods_(std::move(rods)),
      cables_(std::move(cables)),
      rod_lengths_(std::move(rod_lengths)),
      cable_lengths_(std::move(cable_lengths)),
      anchors_(std::move(anchors)),
      materials_(std::move(materials)) {
  if (dimension_ != 2 && dimension_ != 3) {
    throw Error(ErrorKind::invalid_model, "dimension must be 2 or 3");
  }
  for (const auto& p : points_) {
    if (!p.allFinite()) throw Error(ErrorKind::invalid_model, "non-finite coordinate");
    if (dimension_ == 2 && p.z() != 0.0) {
      throw Error(ErrorKind::invalid_model, "planar model with nonzero z");
    }
  }
  const int n = num_points();
  std::set<Pair> seen;
  check_pairs(rods_, n, "rod", seen);
  check_pairs(cables_, n, "cable", seen);

  std::vector<int> rod_count(static_cast<std::size_t>(n), 0);
  for (const auto& r : rods_) {
    if (++rod_count[r.i] > 1 || ++rod_count[r.j] > 1) {
      throw Error(ErrorKind::invalid_model, "two rods share an endpoint");
    }
  }
  for (int a : anchors_) {
    if (a < 0 || a >= n) throw Error(ErrorKind::invalid_model, "anchor index out of range");
  }

  if (rod_lengths_.empty()) rod_lengths_ = current_lengths(points_, rods_);
  if (cable_lengths_.empty()) cable_lengths_ = current_lengths(points_, cables_);
  if (rod_lengths_.size() != rods_.size() || cable_lengths_.size() != cables_.size()) {
    throw Error(ErrorKind::invalid_model, "length list does not match member list");
  }
  for (double len : rod_lengths_) {
    if (!(len > 0.0)) throw Error(ErrorKind::invalid_model, "rod length must be positive");
  }
  for (double len : cable_lengths_) {
    if (!(len > 0.0)) throw Error(ErrorKind::invalid_model, "cable length must be positive");
  }
}

int Model::num_beads() const {
  std::vector<bool> held(points_.size(), false);
  for (const Pair& r : rods_) held[r.i] = held[r.j] = true;
  for (int a : anchors_) held[a] = true;
  return static_cast<int>(std::count(held.begin(), held.end(), false));
}

Pair Model::member(int k) const {
  return k < num_rods() ? rods_.at(static_cast<std::size_t>(k))
                        : cables_.at(static_cast<std::size_t>(k - num_rods()));
}

double Model::rest_length(int k) const {
  return k < num_rods() ? rod_lengths_.at(static_cast<std::size_t>(k))
                        : cable_lengths_.at(static_cast<std::size_t>(k - num_rods()));
}

Eigen::VectorXd Model::configuration() const {
  Eigen::VectorXd x(dofs());
  for (int i = 0; i < num_points(); ++i) {
    x.segment(dimension_ * i, dimension_) = points_[i].head(dimension_);
  }
  return x;
}

Model Model::with_points(std::vector<Point> points) const {
  return Model(dimension_, std::move(points), rods_, cables_, rod_lengths_, cable_lengths_, anchors_, materials_);
}

Model Model::with_cables(std::vector<Pair> cables) const {
  auto lengths = current_lengths(points_, cables);
  return Model(dimension_, points_, rods_, std::move(cables), rod_lengths_, std::move(lengths), anchors_,
               materials_);
}

Model Model::with_cable_lengths(std::vector<double> lengths) const {
  return Model(dimension_, points_, rods_, cables_, rod_lengths_, std::move(lengths), anchors_, materials_);
}

Model Model::with_materials(std::optional<MaterialMap> materials) const {
  return Model(dimension_, points_, rods_, cables_, rod_lengths_, cable_lengths_, anchors_, std::move(materials));
}

}  // namespace tensegrity
