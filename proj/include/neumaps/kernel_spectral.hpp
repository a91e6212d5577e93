#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"

namespace neumaps {

/// Exact low-rank machinery for Gaussian kernels with self-affinity retained
/// (diagonal 1, so the kernel matrix is positive semidefinite). Nothing here
/// ever materializes the n x n matrix; the pipeline uses these pieces to
/// reach spectra at sizes where the dense route does not fit the machine.

namespace kernel_detail {

constexpr Index kBlock = 512;

/// One block of exp(-|a_i - b_j|^2 / eps) via the norm expansion; tiny
/// negative squared distances from cancellation are clamped.
inline Matrix block(const Matrix& a, const Matrix& b, double eps) {
  const Vector na = a.rowwise().squaredNorm();
  const Vector nb = b.rowwise().squaredNorm();
  Matrix d2 = (-2.0 * (a * b.transpose())).eval();
  d2.colwise() += na;
  d2.rowwise() += nb.transpose();
  return (-(d2.cwiseMax(0.0)) / eps).array().exp().matrix();
}

}  // namespace kernel_detail

/// Row sums of the Gaussian affinity over `all` for the rows in `rows`
/// (ambient degrees when rows == all). zero_diagonal removes the self term
/// for rows that are members of `all`; the caller asserts that correspondence.
inline Vector gaussian_degrees(const Matrix& rows, const Matrix& all, double eps,
                               bool zero_diagonal) {
  require(eps > 0.0, errc::non_positive_bandwidth, "epsilon must be positive");
  Vector deg = Vector::Zero(rows.rows());
  for (Index start = 0; start < all.rows(); start += kernel_detail::kBlock) {
    const Index len = std::min<Index>(kernel_detail::kBlock, all.rows() - start);
    deg += kernel_detail::block(rows, all.middleRows(start, len), eps).rowwise().sum();
  }
  if (zero_diagonal) deg.array() -= 1.0;
  return deg;
}

/// Dense cross-affinity block exp(-|a_i - b_j|^2 / eps).
inline Matrix gaussian_cross(const Matrix& a, const Matrix& b, double eps) {
  require(eps > 0.0, errc::non_positive_bandwidth, "epsilon must be positive");
  return kernel_detail::block(a, b, eps);
}

/// y = G x for the self-affinity Gaussian kernel on `pts`, computed in blocks.
inline Vector gaussian_matvec(const Matrix& pts, double eps, const Vector& x) {
  Vector y = Vector::Zero(pts.rows());
  for (Index start = 0; start < pts.rows(); start += kernel_detail::kBlock) {
    const Index len = std::min<Index>(kernel_detail::kBlock, pts.rows() - start);
    y.segment(start, len) = kernel_detail::block(pts.middleRows(start, len), pts, eps) * x;
  }
  return y;
}

/// Greedily pivoted Cholesky factor of the self-affinity Gaussian kernel:
/// G ~= p p^T with trace(G - p p^T) = trace_residual <= rel_tol * n (or rank
/// capped at max_rank). Kernel columns are evaluated on demand; pivots take
/// the largest diagonal residual, lowest index on ties, so the factor is a
/// pure function of the inputs.
struct LowRankFactor {
  Matrix p;
  double trace_residual = 0.0;
  std::vector<Index> pivots;
};

inline LowRankFactor pivoted_cholesky_gaussian(const Matrix& pts, double eps, double rel_tol,
                                               Index max_rank) {
  require(eps > 0.0, errc::non_positive_bandwidth, "epsilon must be positive");
  const Index n = pts.rows();
  max_rank = std::min(max_rank, n);
  Vector diag = Vector::Ones(n);  // exp(0) = 1 on the diagonal
  const double target = rel_tol * static_cast<double>(n);

  LowRankFactor out;
  out.p.resize(n, max_rank);
  Index rank = 0;
  double trace_res = static_cast<double>(n);
  while (rank < max_rank && trace_res > target) {
    Index pivot = 0;
    const double dmax = diag.maxCoeff(&pivot);
    if (dmax <= 0.0) break;
    Vector col(n);
    for (Index i = 0; i < n; ++i) {
      col(i) = std::exp(-(pts.row(i) - pts.row(pivot)).squaredNorm() / eps);
    }
    if (rank > 0) {
      col.noalias() -= out.p.leftCols(rank) * out.p.row(pivot).head(rank).transpose();
    }
    const double root = std::sqrt(dmax);
    col(pivot) = dmax;  // keep the pivot entry consistent with the residual diag
    out.p.col(rank) = col / root;
    diag.array() -= out.p.col(rank).array().square();
    diag = diag.cwiseMax(0.0);
    diag(pivot) = 0.0;
    out.pivots.push_back(pivot);
    trace_res = diag.sum();
    ++rank;
  }
  out.p.conservativeResize(n, rank);
  out.trace_residual = std::max(0.0, trace_res);
  return out;
}

/// Top eigenpairs of F F^T through the Gram matrix F^T F: eigenvalues
/// descending, eigenvectors orthonormalized. Only sensible for the leading
/// part of the spectrum, which is all the embedding needs.
struct TopPairs {
  Vector values;
  Matrix vectors;
};

inline TopPairs gram_top_eigen(const Matrix& f, Index k) {
  const Index r = f.cols();
  require(k >= 1 && k <= std::min(r, f.rows()), errc::dimension_too_large,
          "k outside [1, rank]");
  Matrix gram = f.transpose() * f;
  gram = ((gram + gram.transpose()) * 0.5).eval();
  SymmetricEigen eig = symmetric_eigen_partial(std::move(gram), k, true);
  TopPairs out;
  out.values.resize(k);
  out.vectors.resize(f.rows(), k);
  for (Index j = 0; j < k; ++j) {
    const Index src = k - 1 - j;  // descending
    const double lam = std::max(eig.values(src), 0.0);
    out.values(j) = lam;
    if (lam > 0.0) {
      out.vectors.col(j) = f * (eig.vectors.col(src) / std::sqrt(lam));
    } else {
      out.vectors.col(j).setZero();
    }
  }
  // Re-orthonormalize the thin block; the Gram route can lose a few digits.
  Eigen::HouseholderQR<Matrix> qr(out.vectors);
  Matrix q = qr.householderQ() * Matrix::Identity(f.rows(), k);
  Matrix rfac = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Index j = 0; j < k; ++j) {
    if (rfac(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  out.vectors = std::move(q);
  orient_columns(out.vectors);
  return out;
}

}  // namespace neumaps
