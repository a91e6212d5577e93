#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"
#include "neumaps/graph.hpp"
#include "neumaps/neumann.hpp"

namespace neumaps {

/// Diffusion map of the full graph. Spectrum of the row-stochastic walk
/// P = D^{-1} W computed through the symmetric conjugate D^{-1/2} W D^{-1/2};
/// psi are the right eigenvectors of P (columns, eigenvalues descending).
struct DmapResult {
  Vector eigenvalues;
  Matrix psi;
  EmbeddingMatrix embedding;
};

inline DmapResult dmap(const WeightedGraph& g, double t, Index d, Index num_pairs = -1) {
  const Index n = g.size();
  require(t >= 0.0 && std::isfinite(t), errc::non_integer_time, "t must be >= 0");
  require(d >= 1 && d <= n - 1, errc::dimension_too_large,
          "d must lie in [1, n-1]");
  require(num_pairs == -1 || (num_pairs >= d + 1 && num_pairs <= n),
          errc::dimension_too_large, "num_pairs outside [d+1, n]");

  const Vector inv_sqrt_deg = g.degrees().cwiseSqrt().cwiseInverse();
  Matrix conj = inv_sqrt_deg.asDiagonal() * g.weights() * inv_sqrt_deg.asDiagonal();
  conj = ((conj + conj.transpose()) * 0.5).eval();

  SymmetricEigen eig = (num_pairs == -1) ? symmetric_eigen(std::move(conj))
                                         : symmetric_eigen_partial(std::move(conj),
                                                                   num_pairs, true);
  DmapResult out;
  const Index k = eig.values.size();
  out.eigenvalues = eig.values.reverse();  // descending
  Matrix u(n, k);
  for (Index j = 0; j < k; ++j) u.col(j) = eig.vectors.col(k - 1 - j);
  orient_columns(u);
  out.psi = inv_sqrt_deg.asDiagonal() * u;

  if (!is_integer_time(t)) {
    for (Index j = 1; j <= d; ++j) {
      require(out.eigenvalues(j) > 0.0, errc::negative_eigenvalue_fractional_time,
              "eigenvalue " + std::to_string(j + 1) + " not positive with fractional t");
    }
  }
  out.embedding.t = t;
  out.embedding.basis = Basis::right;
  out.embedding.coords.resize(n, d);
  for (Index j = 0; j < d; ++j) {
    out.embedding.coords.col(j) = std::pow(out.eigenvalues(j + 1), t) * out.psi.col(j + 1);
  }
  return out;
}

inline EmbeddingMatrix dmap_embed(const WeightedGraph& g, double t, Index d) {
  return dmap(g, t, d).embedding;
}

/// Reference-set (Roseland-style) landmark embedding. Kept points are the
/// complement of the landmark list. With A the kept-to-landmark Gaussian
/// affinity and Dhat = diag(A A^T 1), the embedding is read off the left
/// singular vectors of Dhat^{-1/2} A; singular values are raised to the 2t
/// power because one kept-to-kept step is a two-hop walk through landmarks.
struct RoselandResult {
  std::vector<Index> kept;
  Matrix affinity;
  Vector singular_values;
  Matrix left_vectors;
  EmbeddingMatrix embedding;
};

inline RoselandResult roseland(const Matrix& points, std::vector<Index> landmarks,
                               double epsilon, double t, Index d) {
  const Index n = points.rows();
  require(!landmarks.empty(), errc::empty_landmarks, "landmark list is empty");
  require(epsilon > 0.0, errc::non_positive_bandwidth, "epsilon must be positive");
  require(t >= 0.0 && std::isfinite(t), errc::non_integer_time, "t must be >= 0");
  landmarks = checked_sorted_indices(std::move(landmarks), n, "landmark");

  RoselandResult out;
  std::vector<char> is_landmark(static_cast<std::size_t>(n), 0);
  for (Index l : landmarks) is_landmark[static_cast<std::size_t>(l)] = 1;
  for (Index i = 0; i < n; ++i) {
    if (!is_landmark[static_cast<std::size_t>(i)]) out.kept.push_back(i);
  }
  const Index nk = static_cast<Index>(out.kept.size());
  const Index nl = static_cast<Index>(landmarks.size());
  require(nk >= 1, errc::empty_keep, "every point is a landmark");
  require(d >= 1 && d + 1 <= std::min(nk, nl), errc::dimension_too_large,
          "d must be < min(|kept|, |landmarks|)");

  out.affinity.resize(nk, nl);
  for (Index i = 0; i < nk; ++i) {
    for (Index j = 0; j < nl; ++j) {
      const double d2 = (points.row(out.kept[static_cast<std::size_t>(i)]) -
                         points.row(landmarks[static_cast<std::size_t>(j)]))
                            .squaredNorm();
      out.affinity(i, j) = std::exp(-d2 / epsilon);
    }
  }

  // Row sums of A A^T; zero means a kept point sees no landmark at all.
  const Vector col_mass = out.affinity.colwise().sum();
  const Vector dhat = out.affinity * col_mass;
  for (Index i = 0; i < nk; ++i) {
    require(dhat(i) > 0.0, errc::degenerate_row,
            "kept point " + std::to_string(out.kept[static_cast<std::size_t>(i)]) +
                " has zero affinity to every landmark");
  }

  const Matrix normalized = dhat.cwiseSqrt().cwiseInverse().asDiagonal() * out.affinity;
  Eigen::BDCSVD<Matrix> svd(normalized, Eigen::ComputeThinU);
  out.singular_values = svd.singularValues();
  out.left_vectors = svd.matrixU();
  orient_columns(out.left_vectors);

  out.embedding.t = t;
  out.embedding.basis = Basis::right;
  out.embedding.coords.resize(nk, d);
  for (Index j = 0; j < d; ++j) {
    out.embedding.coords.col(j) =
        std::pow(out.singular_values(j + 1), 2.0 * t) * out.left_vectors.col(j + 1);
  }
  return out;
}

inline EmbeddingMatrix roseland_embed(const Matrix& points, std::vector<Index> landmarks,
                                      double epsilon, double t, Index d) {
  return roseland(points, std::move(landmarks), epsilon, t, d).embedding;
}

}  // namespace neumaps
