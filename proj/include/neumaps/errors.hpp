#pragma once

#include <stdexcept>
#include <string>

namespace neumaps {

/// Error taxonomy shared by every module. One exception class carries a code
/// so callers (and the CLI) can branch without string matching.
enum class errc {
  non_square,
  negative_weight,
  asymmetric_beyond_tolerance,
  isolated_vertex,
  self_loop_forbidden,
  empty_keep,
  index_out_of_range,
  duplicate_index,
  non_positive_bandwidth,
  degenerate_cloud,
  singular_boundary_degree,
  zero_boundary_degree,
  eigensolver_failure,
  dimension_too_large,
  negative_eigenvalue_fractional_time,
  non_integer_time,
  rayleigh_violation,
  fraction_out_of_range,
  stride_too_small,
  no_points_marked,
  all_points_marked,
  empty_landmarks,
  degenerate_row,
  too_few_points,
  length_mismatch,
  constant_regressor,
  config_error,
  io_error,
  mismatched_inputs,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_square: return "NonSquare";
    case errc::negative_weight: return "NegativeWeight";
    case errc::asymmetric_beyond_tolerance: return "AsymmetricBeyondTolerance";
    case errc::isolated_vertex: return "IsolatedVertex";
    case errc::self_loop_forbidden: return "SelfLoopForbidden";
    case errc::empty_keep: return "EmptyKeep";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::duplicate_index: return "DuplicateIndex";
    case errc::non_positive_bandwidth: return "NonPositiveBandwidth";
    case errc::degenerate_cloud: return "DegenerateCloud";
    case errc::singular_boundary_degree: return "SingularBoundaryDegree";
    case errc::zero_boundary_degree: return "ZeroBoundaryDegree";
    case errc::eigensolver_failure: return "EigensolverFailure";
    case errc::dimension_too_large: return "DimensionTooLarge";
    case errc::negative_eigenvalue_fractional_time: return "NegativeEigenvalueFractionalTime";
    case errc::non_integer_time: return "NonIntegerTime";
    case errc::rayleigh_violation: return "RayleighViolation";
    case errc::fraction_out_of_range: return "FractionOutOfRange";
    case errc::stride_too_small: return "StrideTooSmall";
    case errc::no_points_marked: return "NoPointsMarked";
    case errc::all_points_marked: return "AllPointsMarked";
    case errc::empty_landmarks: return "EmptyLandmarks";
    case errc::degenerate_row: return "DegenerateRow";
    case errc::too_few_points: return "TooFewPoints";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::constant_regressor: return "ConstantRegressor";
    case errc::config_error: return "ConfigError";
    case errc::io_error: return "IoError";
    case errc::mismatched_inputs: return "MismatchedInputs";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace neumaps
