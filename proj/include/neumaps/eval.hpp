#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"
#include "neumaps/rng.hpp"

namespace neumaps {

struct ClusterAssignment {
  std::vector<int> labels;
  int k = 0;
  double inertia = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double sq_dist(const Matrix& pts, Index i, const Vector& c) {
  return (pts.row(i).transpose() - c).squaredNorm();
}

// One k-means++ initialization + Lloyd run. Ties in assignment go to the
// lowest centroid index; empty clusters are reseeded from the point farthest
// from its centroid.
inline ClusterAssignment lloyd_once(const Matrix& pts, int k, SplitMix64& rng) {
  const Index n = pts.rows();
  const Index dim = pts.cols();

  std::vector<Vector> centroids;
  centroids.reserve(static_cast<std::size_t>(k));
  centroids.push_back(pts.row(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))))
                          .transpose());
  Vector best_sq(n);
  for (Index i = 0; i < n; ++i) best_sq(i) = sq_dist(pts, i, centroids[0]);
  while (static_cast<int>(centroids.size()) < k) {
    const double total = best_sq.sum();
    Index chosen = 0;
    if (total > 0.0) {
      double target = rng.unit() * total, acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += best_sq(i);
        if (acc >= target) { chosen = i; break; }
        chosen = i;
      }
    } else {
      chosen = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centroids.push_back(pts.row(chosen).transpose());
    for (Index i = 0; i < n; ++i) {
      best_sq(i) = std::min(best_sq(i), sq_dist(pts, i, centroids.back()));
    }
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = sq_dist(pts, i, centroids[static_cast<std::size_t>(c)]);
        if (d < best_d) { best_d = d; best = c; }
      }
      if (labels[static_cast<std::size_t>(i)] != best) {
        labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    std::vector<Vector> sums(static_cast<std::size_t>(k), Vector::Zero(dim));
    for (Index i = 0; i < n; ++i) {
      counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])]++;
      sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] += pts.row(i).transpose();
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) {
        Index far = 0;
        double far_d = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double d = sq_dist(pts, i, centroids[static_cast<std::size_t>(
                                               labels[static_cast<std::size_t>(i)])]);
          if (d > far_d) { far_d = d; far = i; }
        }
        centroids[static_cast<std::size_t>(c)] = pts.row(far).transpose();
        changed = true;
      } else {
        centroids[static_cast<std::size_t>(c)] =
            sums[static_cast<std::size_t>(c)] / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    if (!changed && iter > 0) break;
  }

  ClusterAssignment out;
  out.labels = std::move(labels);
  out.k = k;
  out.inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    out.inertia += sq_dist(pts, i, centroids[static_cast<std::size_t>(
                                       out.labels[static_cast<std::size_t>(i)])]);
  }
  return out;
}

}  // namespace detail

/// Lloyd's k-means with k-means++ starts. `restarts` independent runs; the
/// lowest inertia wins and ties keep the earliest restart, so results are a
/// pure function of (points, k, restarts, seed).
inline ClusterAssignment kmeans(const Matrix& pts, int k, int restarts = 10,
                                std::uint64_t seed = 0) {
  require(k >= 2, errc::too_few_points, "k must be >= 2");
  require(pts.rows() >= k, errc::too_few_points,
          "need at least k points to form k clusters");
  require(restarts >= 1, errc::too_few_points, "restarts must be >= 1");
  SplitMix64 master(seed);
  ClusterAssignment best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(master.next());
    ClusterAssignment cur = detail::lloyd_once(pts, k, rng);
    if (cur.inertia < best.inertia) best = std::move(cur);
  }
  best.seed = seed;
  return best;
}

/// Normalized mutual information with natural logs, normalized by the
/// geometric mean of the entropies. Conventions: if both labelings are
/// constant the score is 1; if exactly one is constant it is 0.
inline double nmi(const std::vector<int>& a, const std::vector<int>& b) {
  require(a.size() == b.size(), errc::length_mismatch, "label vectors differ in length");
  require(!a.empty(), errc::length_mismatch, "label vectors are empty");
  const double n = static_cast<double>(a.size());
  std::map<int, double> pa, pb;
  std::map<std::pair<int, int>, double> pab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
    pab[{a[i], b[i]}] += 1.0;
  }
  double ha = 0.0, hb = 0.0, info = 0.0;
  for (auto& [la, ca] : pa) { (void)la; ha -= (ca / n) * std::log(ca / n); }
  for (auto& [lb, cb] : pb) { (void)lb; hb -= (cb / n) * std::log(cb / n); }
  for (auto& [labels, cab] : pab) {
    const double pj = cab / n;
    info += pj * std::log(pj / ((pa[labels.first] / n) * (pb[labels.second] / n)));
  }
  if (ha <= 0.0 && hb <= 0.0) return 1.0;
  if (ha <= 0.0 || hb <= 0.0) return 0.0;
  return std::clamp(info / std::sqrt(ha * hb), 0.0, 1.0);
}

namespace detail {

// Hungarian algorithm (potentials form), maximizing the matched total of a
// square nonnegative score matrix. O(k^3).
inline long long hungarian_max(const std::vector<std::vector<long long>>& score) {
  const int k = static_cast<int>(score.size());
  long long peak = 0;
  for (const auto& row : score)
    for (long long v : row) peak = std::max(peak, v);
  // Minimize cost = peak - score with the classic JV potential scheme.
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(static_cast<std::size_t>(k) + 1), v(static_cast<std::size_t>(k) + 1);
  std::vector<int> match(static_cast<std::size_t>(k) + 1, 0), way(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 1; i <= k; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<long long> minv(static_cast<std::size_t>(k) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(k) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = match[static_cast<std::size_t>(j0)];
      long long delta = inf;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const long long cur = (peak - score[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)]) -
                              u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  long long total = 0;
  for (int j = 1; j <= k; ++j) {
    if (match[static_cast<std::size_t>(j)] != 0) {
      total += score[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)]
                    [static_cast<std::size_t>(j - 1)];
    }
  }
  return total;
}

inline std::vector<int> dense_relabel(const std::vector<int>& labels, int& k_out) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = remap.emplace(labels[i], static_cast<int>(remap.size()));
    (void)fresh;
    out[i] = it->second;
  }
  k_out = static_cast<int>(remap.size());
  return out;
}

}  // namespace detail

/// Unsupervised clustering accuracy: best fraction of agreement over all
/// one-to-one matchings of predicted to true labels (optimal assignment on
/// the confusion matrix).
inline double acc(const std::vector<int>& pred, const std::vector<int>& truth) {
  require(pred.size() == truth.size(), errc::length_mismatch, "label vectors differ in length");
  require(!pred.empty(), errc::length_mismatch, "label vectors are empty");
  int kp = 0, kt = 0;
  const std::vector<int> p = detail::dense_relabel(pred, kp);
  const std::vector<int> t = detail::dense_relabel(truth, kt);
  const int k = std::max(kp, kt);
  std::vector<std::vector<long long>> confusion(
      static_cast<std::size_t>(k), std::vector<long long>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    confusion[static_cast<std::size_t>(p[i])][static_cast<std::size_t>(t[i])]++;
  }
  const long long matched = detail::hungarian_max(confusion);
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

/// Ordinary least squares y = slope * x + intercept with the standard error
/// of the slope: sqrt(RSS / (n - 2)) / sqrt(sum (x - xbar)^2).
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
};

inline LinearFit slope_stderr(const Vector& x, const Vector& y) {
  require(x.size() == y.size(), errc::length_mismatch, "x and y differ in length");
  const Index n = x.size();
  require(n >= 3, errc::length_mismatch, "need at least 3 points");
  const double xbar = x.mean();
  const double ybar = y.mean();
  const double sxx = (x.array() - xbar).square().sum();
  require(sxx > 0.0, errc::constant_regressor, "x is constant");
  const double sxy = ((x.array() - xbar) * (y.array() - ybar)).sum();
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  const double rss = (y.array() - fit.slope * x.array() - fit.intercept).square().sum();
  fit.std_error = std::sqrt(rss / static_cast<double>(n - 2)) / std::sqrt(sxx);
  return fit;
}

}  // namespace neumaps
