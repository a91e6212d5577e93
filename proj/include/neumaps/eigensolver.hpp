#pragma once

#include <Eigen/Dense>
#include <vector>

#include "neumaps/errors.hpp"

#if defined(NEUMAPS_HAVE_LAPACKE)
#include <lapacke.h>
#endif

namespace neumaps {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenpairs of a dense symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;  // column i pairs with values(i)
};

/// Full spectrum of a symmetric matrix (input taken by value and destroyed).
/// LAPACK dsyevd when available, Eigen::SelfAdjointEigenSolver otherwise.
inline SymmetricEigen symmetric_eigen(Matrix a) {
  const Index n = a.rows();
  require(n == a.cols(), errc::non_square, "eigensolver needs a square matrix");
  SymmetricEigen out;
#if defined(NEUMAPS_HAVE_LAPACKE)
  out.values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L',
                                         static_cast<lapack_int>(n), a.data(),
                                         static_cast<lapack_int>(n), out.values.data());
  require(info == 0, errc::eigensolver_failure,
          "dsyevd did not converge (info=" + std::to_string(info) + ")");
  out.vectors = std::move(a);
#else
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  require(solver.info() == Eigen::Success, errc::eigensolver_failure,
          "SelfAdjointEigenSolver did not converge");
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
#endif
  return out;
}

/// k extreme eigenpairs of a symmetric matrix, eigenvalues ascending.
/// largest=false returns the k smallest, largest=true the k largest.
inline SymmetricEigen symmetric_eigen_partial(Matrix a, Index k, bool largest) {
  const Index n = a.rows();
  require(n == a.cols(), errc::non_square, "eigensolver needs a square matrix");
  require(k >= 1 && k <= n, errc::dimension_too_large, "requested too many eigenpairs");
#if defined(NEUMAPS_HAVE_LAPACKE)
  SymmetricEigen out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * k));
  lapack_int found = 0;
  const lapack_int il = largest ? static_cast<lapack_int>(n - k + 1) : 1;
  const lapack_int iu = largest ? static_cast<lapack_int>(n) : static_cast<lapack_int>(k);
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(n), a.data(),
      static_cast<lapack_int>(n), 0.0, 0.0, il, iu, LAPACKE_dlamch('S'), &found,
      out.values.data(), out.vectors.data(), static_cast<lapack_int>(n), isuppz.data());
  require(info == 0 && found == static_cast<lapack_int>(k), errc::eigensolver_failure,
          "dsyevr did not converge (info=" + std::to_string(info) + ")");
  return out;
#else
  SymmetricEigen full = symmetric_eigen(std::move(a));
  SymmetricEigen out;
  const Index start = largest ? n - k : 0;
  out.values = full.values.segment(start, k);
  out.vectors = full.vectors.middleCols(start, k);
  return out;
#endif
}

/// Flips each column so its largest-magnitude entry is positive (first
/// occurrence wins on ties). Gives deterministic eigenvector orientation.
inline void orient_columns(Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index at = 0;
    m.col(j).cwiseAbs().maxCoeff(&at);
    if (m(at, j) < 0.0) m.col(j) = -m.col(j);
  }
}

}  // namespace neumaps
