#pragma once

#include <stdexcept>
#include <string>

namespace tensegrity {

enum class ErrorKind {
  invalid_model,
  invalid_argument,
  infeasible_height,
  coincident_points,
  dimension_mismatch,
  zero_length,
  all_collinear,
  no_full_rank_combination,
  over_determined_stress,
  target_not_representable,
  rank_deficient,
  degenerate_directions,
  empty_candidate_set,
  infeasible_affine_set,
  no_negative_coordinate,
  exhausted,
  missing_material,
  unknown_builtin,
  parse_error,
  io_error,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the member rows admit more than one independent self-stress.
class OverDeterminedStress : public Error {
 public:
  explicit OverDeterminedStress(int dimension);

  int dimension() const { return dimension_; }

 private:
  int dimension_;
};

}  // namespace tensegrity
