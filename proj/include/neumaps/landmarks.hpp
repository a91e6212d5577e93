#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "neumaps/errors.hpp"
#include "neumaps/kernels.hpp"
#include "neumaps/rng.hpp"

namespace neumaps {

/// Marked/kept split of [0, n). Marked points play the boundary role in the
/// Neumann construction (and the landmark role in Roseland); kept points get
/// embedded. Both lists are sorted and together partition [0, n) exactly.
struct LandmarkSelection {
  std::vector<Index> marked;
  std::vector<Index> kept;
  std::string scheme;
  std::uint64_t seed = 0;
};

namespace detail {
inline LandmarkSelection finish_selection(std::vector<char> is_marked, std::string scheme,
                                          std::uint64_t seed) {
  LandmarkSelection sel;
  sel.scheme = std::move(scheme);
  sel.seed = seed;
  for (Index i = 0; i < static_cast<Index>(is_marked.size()); ++i) {
    (is_marked[static_cast<std::size_t>(i)] ? sel.marked : sel.kept).push_back(i);
  }
  return sel;
}
}  // namespace detail

/// Uniform sample without replacement of round(fraction * n) marked points,
/// half-away-from-zero rounding. Same seed, same subset, on any platform.
inline LandmarkSelection select_random(Index n, double fraction, std::uint64_t seed) {
  require(n >= 1, errc::index_out_of_range, "n must be positive");
  require(fraction > 0.0 && fraction < 1.0, errc::fraction_out_of_range,
          "fraction must lie strictly inside (0, 1)");
  const long m = std::llround(fraction * static_cast<double>(n));
  require(m >= 1, errc::fraction_out_of_range, "fraction selects no points");
  require(m < n, errc::fraction_out_of_range, "fraction selects every point");
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  for (long i : sample_without_replacement(static_cast<long>(n), m, seed)) {
    marked[static_cast<std::size_t>(i)] = 1;
  }
  return detail::finish_selection(std::move(marked),
                                  "random(fraction=" + std::to_string(fraction) + ")", seed);
}

/// Marks indices {0, k, 2k, ...}.
inline LandmarkSelection select_every_kth(Index n, Index k) {
  require(k >= 2, errc::stride_too_small, "stride must be >= 2");
  require(n >= k, errc::stride_too_small, "stride exceeds the point count");
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; i += k) marked[static_cast<std::size_t>(i)] = 1;
  return detail::finish_selection(std::move(marked),
                                  "every_kth(k=" + std::to_string(k) + ")", 0);
}

/// Greedy farthest-point net: start at index 0, repeatedly add the point
/// farthest from the net, stop once every point is within delta of it. The
/// covering property holds by construction; ties pick the lowest index.
inline LandmarkSelection select_delta_net(const Matrix& points, double delta) {
  require(delta > 0.0, errc::fraction_out_of_range, "delta must be positive");
  validate_points(points, 1);
  const Index n = points.rows();
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  marked[0] = 1;
  Vector dist(n);
  for (Index i = 0; i < n; ++i) dist(i) = (points.row(i) - points.row(0)).norm();
  for (;;) {
    Index far = 0;
    const double worst = dist.maxCoeff(&far);
    if (worst <= delta) break;
    marked[static_cast<std::size_t>(far)] = 1;
    for (Index i = 0; i < n; ++i) {
      dist(i) = std::min(dist(i), (points.row(i) - points.row(far)).norm());
    }
  }
  return detail::finish_selection(std::move(marked),
                                  "delta_net(delta=" + std::to_string(delta) + ")", 0);
}

/// Marks every index whose scalar value falls inside any of the given
/// (center, halfwidth) intervals, comparisons inclusive. Values are plain
/// scalars; callers pre-wrap angles if they need circular intervals.
inline LandmarkSelection select_threshold(const Vector& cv,
                                          const std::vector<std::pair<double, double>>& intervals) {
  require(!intervals.empty(), errc::fraction_out_of_range, "no intervals given");
  for (const auto& [center, halfwidth] : intervals) {
    require(halfwidth > 0.0, errc::fraction_out_of_range, "halfwidth must be positive");
    (void)center;
  }
  const Index n = cv.size();
  require(n >= 1, errc::length_mismatch, "empty value vector");
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  Index count = 0;
  for (Index i = 0; i < n; ++i) {
    for (const auto& [center, halfwidth] : intervals) {
      if (std::abs(cv(i) - center) <= halfwidth) {
        marked[static_cast<std::size_t>(i)] = 1;
        ++count;
        break;
      }
    }
  }
  require(count > 0, errc::no_points_marked, "no values fall inside the intervals");
  require(count < n, errc::all_points_marked, "every value falls inside the intervals");
  return detail::finish_selection(std::move(marked), "threshold", 0);
}

}  // namespace neumaps
