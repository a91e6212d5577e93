#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "neumaps/errors.hpp"
#include "neumaps/graph.hpp"

namespace neumaps {

/// Point clouds are plain row-major sample matrices: one point per row.
inline void validate_points(const Matrix& points, Index min_rows = 2) {
  require(points.rows() >= min_rows, errc::degenerate_cloud,
          "need at least " + std::to_string(min_rows) + " points");
  require(points.allFinite(), errc::degenerate_cloud, "points contain non-finite values");
}

/// Squared-exponential affinity graph: W[x,y] = exp(-|x_x - x_y|^2 / epsilon).
/// epsilon is the squared bandwidth. The diagonal is 0 when zero_diagonal
/// (no self-loops) and 1 otherwise. Symmetry is exact by construction.
inline WeightedGraph gaussian_affinity(const Matrix& points, double epsilon,
                                       bool zero_diagonal = true) {
  require(epsilon > 0.0, errc::non_positive_bandwidth,
          "epsilon = " + std::to_string(epsilon));
  validate_points(points);
  const Index n = points.rows();
  Matrix w(n, n);
  for (Index i = 0; i < n; ++i) {
    w(i, i) = zero_diagonal ? 0.0 : 1.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d2 = (points.row(i) - points.row(j)).squaredNorm();
      const double a = std::exp(-d2 / epsilon);
      w(i, j) = a;
      w(j, i) = a;
    }
  }
  return build_graph(std::move(w));
}

/// Max-min bandwidth rule: epsilon = c * (max_i min_{j != i} |x_i - x_j|)^2.
/// Deterministic; errors out when every point has a zero-distance twin, since
/// the resulting bandwidth would be zero.
inline double maxmin_bandwidth(const Matrix& points, double c = 2.0) {
  require(c > 0.0, errc::non_positive_bandwidth, "c must be positive");
  validate_points(points);
  const Index n = points.rows();
  double maxmin_sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    double nearest_sq = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      nearest_sq = std::min(nearest_sq, (points.row(i) - points.row(j)).squaredNorm());
    }
    maxmin_sq = std::max(maxmin_sq, nearest_sq);
  }
  require(maxmin_sq > 0.0, errc::degenerate_cloud,
          "every point coincides with another; max-min distance is zero");
  return c * maxmin_sq;
}

}  // namespace neumaps
