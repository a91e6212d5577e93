#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>

#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"
#include "neumaps/graph.hpp"
#include "neumaps/rng.hpp"

namespace neumaps {

/// Neumann operators attached to one subgraph partition.
///
/// neumann      L_N = L_D - B^T Tdelta^{-1} B                (symmetric PSD)
/// renormalized N   = T^{-1/2} L_N T^{-1/2}, resymmetrized   (what gets solved)
/// walk         R   = T^{-1/2}(I - N) T^{1/2}                (row-stochastic;
///              entries in [-1e-12, 0) are clamped to 0)
///
/// R describes the reflecting random walk on the kept set: a step either moves
/// inside the kept set directly or bounces once off a boundary vertex. When
/// the boundary is empty the construction degenerates to the Dirichlet block
/// and degenerate_boundary is set.
struct NeumannSystem {
  SubgraphPartition part;
  Matrix neumann;
  Matrix renormalized;
  Matrix walk;
  bool degenerate_boundary = false;
};

inline NeumannSystem neumann_laplacian(SubgraphPartition p, bool build_walk = true) {
  const Index ns = static_cast<Index>(p.keep.size());
  const Index nb = static_cast<Index>(p.boundary.size());
  for (Index i = 0; i < nb; ++i) {
    require(p.boundary_degrees(i) > 1e-14, errc::singular_boundary_degree,
            "boundary vertex " + std::to_string(p.boundary[static_cast<std::size_t>(i)]) +
                " has near-zero boundary degree");
  }

  NeumannSystem sys;
  sys.degenerate_boundary = p.degenerate_boundary();
  if (nb == 0) {
    sys.neumann = p.dirichlet;
  } else {
    const Matrix scaled_b = p.boundary_degrees.cwiseInverse().asDiagonal() * p.boundary_op;
    sys.neumann = p.dirichlet - p.boundary_op.transpose() * scaled_b;
    sys.neumann = ((sys.neumann + sys.neumann.transpose()) * 0.5).eval();
  }

  const Vector inv_sqrt_deg = p.ambient_degrees.cwiseSqrt().cwiseInverse();
  sys.renormalized = inv_sqrt_deg.asDiagonal() * sys.neumann * inv_sqrt_deg.asDiagonal();
  sys.renormalized = ((sys.renormalized + sys.renormalized.transpose()) * 0.5).eval();

  if (build_walk) {
    Matrix i_minus_n = -sys.renormalized;
    i_minus_n.diagonal().array() += 1.0;
    const Vector sqrt_deg = p.ambient_degrees.cwiseSqrt();
    sys.walk = inv_sqrt_deg.asDiagonal() * i_minus_n * sqrt_deg.asDiagonal();
    for (Index i = 0; i < ns; ++i) {
      for (Index j = 0; j < ns; ++j) {
        if (sys.walk(i, j) < 0.0 && sys.walk(i, j) >= -1e-12) sys.walk(i, j) = 0.0;
      }
    }
  }
  sys.part = std::move(p);
  return sys;
}

/// Spectral decomposition of I - N, eigenvalues sigma sorted descending
/// (equal values keep solver order). Columns of u are orthonormal; the right
/// and left systems v = T^{-1/2}u and y = T^{1/2}u diagonalize the walk,
/// R^t = v diag(sigma^t) y^T, and satisfy y^T v = I.
///
/// The Neumann eigenvalue for index i is 1 - sigma(i); the matching
/// eigenvector of the generalized problem L_N u = lambda T u is v.col(i).
struct SpectralDecomposition {
  Vector sigma;
  Matrix u;
  Matrix v_right;
  Matrix y_left;
  Vector ambient_degrees;
  Index full_dim = 0;

  bool truncated() const { return sigma.size() < full_dim; }
  double neumann_eigenvalue(Index i) const { return 1.0 - sigma(i); }
};

enum class Basis { left, right };

inline const char* basis_name(Basis b) { return b == Basis::left ? "left" : "right"; }

/// Eigendecomposition of the renormalized operator. num_pairs = -1 computes
/// the full spectrum; a positive value computes only the num_pairs largest
/// sigma (enough for embeddings, much cheaper at scale). Eigenvector columns
/// are oriented so the largest-magnitude entry is positive.
inline SpectralDecomposition spectral(const NeumannSystem& sys, Index num_pairs = -1) {
  const Index ns = sys.renormalized.rows();
  require(num_pairs == -1 || (num_pairs >= 1 && num_pairs <= ns), errc::dimension_too_large,
          "num_pairs outside [1, |V_S|]");

  SymmetricEigen eig = (num_pairs == -1)
                           ? symmetric_eigen(sys.renormalized)
                           : symmetric_eigen_partial(sys.renormalized, num_pairs, false);

  SpectralDecomposition dec;
  // Smallest eigenvalues of N are the largest sigma = 1 - mu; ascending mu
  // already gives descending sigma in the same index order.
  dec.sigma = (1.0 - eig.values.array()).matrix();
  dec.u = std::move(eig.vectors);
  orient_columns(dec.u);
  dec.ambient_degrees = sys.part.ambient_degrees;
  dec.full_dim = ns;
  const Vector sqrt_deg = dec.ambient_degrees.cwiseSqrt();
  dec.v_right = sqrt_deg.cwiseInverse().asDiagonal() * dec.u;
  dec.y_left = sqrt_deg.asDiagonal() * dec.u;
  return dec;
}

/// Per-vertex embedding coordinates: column j holds sigma_{j+2}^t * b_{j+2}
/// where b is the left or right eigenvector system (1-based spectral
/// indexing; the stationary pair is skipped).
struct EmbeddingMatrix {
  Matrix coords;
  double t = 0.0;
  Basis basis = Basis::left;
};

inline bool is_integer_time(double t) { return std::floor(t) == t; }

inline EmbeddingMatrix neumap_embed(const SpectralDecomposition& dec, double t, Index d,
                                    Basis basis = Basis::left) {
  require(t >= 0.0 && std::isfinite(t), errc::non_integer_time, "t must be >= 0");
  require(d >= 1, errc::dimension_too_large, "d must be >= 1");
  require(d <= dec.full_dim - 1 && d + 1 <= dec.sigma.size(), errc::dimension_too_large,
          "d = " + std::to_string(d) + " too large for " + std::to_string(dec.full_dim) +
              " kept vertices (" + std::to_string(dec.sigma.size()) + " eigenpairs computed)");
  if (!is_integer_time(t)) {
    for (Index j = 1; j <= d; ++j) {
      require(dec.sigma(j) > 0.0, errc::negative_eigenvalue_fractional_time,
              "sigma_" + std::to_string(j + 1) + " = " + std::to_string(dec.sigma(j)) +
                  " with fractional t");
    }
  }
  const Matrix& b = (basis == Basis::left) ? dec.y_left : dec.v_right;
  EmbeddingMatrix emb;
  emb.t = t;
  emb.basis = basis;
  emb.coords.resize(b.rows(), d);
  for (Index j = 0; j < d; ++j) {
    emb.coords.col(j) = std::pow(dec.sigma(j + 1), t) * b.col(j + 1);
  }
  return emb;
}

/// Squared diffusion distance at integer time t between kept vertices i and k:
///   sum_l sigma_l^{2t} (v_l(i) - v_l(k))^2
/// with right eigenvectors. Equals the weighted difference of t-step
/// transition profiles, sum_j (R^t[i,j] - R^t[k,j])^2 / d(x_j), exactly. The
/// sum runs over every coordinate: when the reflecting walk is irreducible
/// the stationary eigenvector is constant and the l = 1 term vanishes, but on
/// a disconnected kept set the sigma = 1 eigenspace is degenerate and its
/// component-indicator directions carry real distance.
inline double diffusion_distance_sq(const SpectralDecomposition& dec, long t, Index i,
                                    Index k) {
  require(t >= 0, errc::non_integer_time, "t must be a nonnegative integer");
  require(!dec.truncated(), errc::dimension_too_large,
          "diffusion_distance_sq needs the full spectral decomposition");
  const Index n = dec.full_dim;
  require(i >= 0 && i < n && k >= 0 && k < n, errc::index_out_of_range,
          "vertex index outside kept set");
  double acc = 0.0;
  for (Index l = 0; l < n; ++l) {
    const double diff = dec.v_right(i, l) - dec.v_right(k, l);
    acc += std::pow(dec.sigma(l), 2.0 * static_cast<double>(t)) * diff * diff;
  }
  return acc;
}

/// R^t by repeated matrix multiplication. Deliberately avoids the spectral
/// shortcut so it can serve as the independent probability-side route when
/// checking the diffusion-distance identity.
inline Matrix walk_probability_oracle(const NeumannSystem& sys, long t) {
  require(t >= 0, errc::non_integer_time, "t must be a nonnegative integer");
  const Index n = sys.walk.rows();
  require(n > 0, errc::dimension_too_large, "system was built without the walk matrix");
  Matrix p = Matrix::Identity(n, n);
  for (long s = 0; s < t; ++s) p = (p * sys.walk).eval();
  return p;
}

/// Extension of eigenvectors of the renormalized operator to the boundary:
///   g(x) = sum_{y in keep} w(x,y) g(y) / sqrt(bd(x) d(y)),  x in boundary,
/// where bd(x) is the boundary degree (edges into the kept set only) and d(y)
/// the ambient degree. One output row per boundary vertex, one column per
/// input column. This is the Nystrom-style extension; see
/// neumann_condition_extend for the plain boundary-average form.
inline Matrix neumann_extend(const SubgraphPartition& p, const Matrix& g_values) {
  require(g_values.rows() == static_cast<Index>(p.keep.size()), errc::length_mismatch,
          "g_values rows must match the kept set");
  const Index nb = static_cast<Index>(p.boundary.size());
  for (Index i = 0; i < nb; ++i) {
    require(p.boundary_degrees(i) > 1e-14, errc::zero_boundary_degree,
            "boundary degree underflow");
  }
  return p.boundary_degrees.cwiseSqrt().cwiseInverse().asDiagonal() * p.boundary_op *
         p.ambient_degrees.cwiseSqrt().cwiseInverse().asDiagonal() * g_values;
}

/// Boundary values that make each column satisfy the discrete Neumann
/// condition: f(x) = sum_y w(x,y) f(y) / bd(x) over edges into the kept set.
inline Matrix neumann_condition_extend(const SubgraphPartition& p, const Matrix& values) {
  require(values.rows() == static_cast<Index>(p.keep.size()), errc::length_mismatch,
          "values rows must match the kept set");
  return p.boundary_degrees.cwiseInverse().asDiagonal() * p.boundary_op * values;
}

/// One Neumann eigenpair: the generalized eigenvector on the kept set
/// (L_N u = lambda T u) together with its boundary extension by the Neumann
/// condition. The extended function satisfies the ambient eigenvalue equation
/// at every kept vertex and a vanishing discrete normal derivative at every
/// boundary vertex.
struct NeumannEigenpair {
  double lambda = 0.0;
  Vector u;
  Vector f_ext;
};

inline NeumannEigenpair neumann_eigenpair(const SpectralDecomposition& dec,
                                          const SubgraphPartition& p, Index i) {
  require(i >= 0 && i < dec.sigma.size(), errc::index_out_of_range, "eigenpair index");
  NeumannEigenpair pair;
  pair.lambda = dec.neumann_eigenvalue(i);
  pair.u = dec.v_right.col(i);
  pair.f_ext = neumann_condition_extend(p, pair.u);
  return pair;
}

/// Rayleigh quotient of the Neumann variational problem for a function given
/// on the kept set, with boundary values filled in by the Neumann condition:
///   sum over kept-kept and kept-boundary edges of w (f(x)-f(y))^2
///   ------------------------------------------------------------
///   sum over kept vertices of f(x)^2 d(x)
inline double neumann_rayleigh_quotient(const SubgraphPartition& p, const Vector& f_keep) {
  const Index ns = static_cast<Index>(p.keep.size());
  require(f_keep.size() == ns, errc::length_mismatch, "f must live on the kept set");
  const Vector f_bd = p.boundary.empty()
                          ? Vector()
                          : Vector(p.boundary_degrees.cwiseInverse().asDiagonal() *
                                   p.boundary_op * f_keep);
  double num = 0.0;
  for (Index a = 0; a < ns; ++a) {
    for (Index b = a + 1; b < ns; ++b) {
      const double diff = f_keep(a) - f_keep(b);
      num += p.w_keep(a, b) * diff * diff;
    }
  }
  for (Index i = 0; i < static_cast<Index>(p.boundary.size()); ++i) {
    for (Index a = 0; a < ns; ++a) {
      const double diff = f_bd(i) - f_keep(a);
      num += p.boundary_op(i, a) * diff * diff;
    }
  }
  const double den = f_keep.array().square().matrix().dot(p.ambient_degrees);
  require(den > 0.0, errc::degenerate_cloud, "zero-norm test function");
  return num / den;
}

struct RayleighReport {
  double lambda_target = 0.0;
  double min_quotient = 0.0;
  Index trials = 0;
};

/// Samples random admissible functions (f on the kept set with f orthogonal
/// to T1, boundary filled by the Neumann condition) and checks that no
/// quotient undercuts the first nontrivial Neumann eigenvalue beyond 1e-8.
/// A violation signals an implementation bug and throws.
inline RayleighReport verify_rayleigh_minimum(const SubgraphPartition& p, double lambda_1,
                                              Index trials, std::uint64_t seed) {
  const Index ns = static_cast<Index>(p.keep.size());
  require(ns >= 2, errc::too_few_points,
          "a single kept vertex admits no nontrivial test function");
  require(trials >= 1, errc::too_few_points, "need at least one trial");
  SplitMix64 rng(seed);
  const double total_degree = p.ambient_degrees.sum();
  RayleighReport report;
  report.lambda_target = lambda_1;
  report.trials = trials;
  report.min_quotient = std::numeric_limits<double>::infinity();
  for (Index trial = 0; trial < trials; ++trial) {
    Vector f(ns);
    double norm = 0.0;
    do {
      for (Index a = 0; a < ns; ++a) f(a) = rng.normal();
      f.array() -= f.dot(p.ambient_degrees) / total_degree;  // f | keep  perp  T 1
      norm = f.norm();
    } while (norm < 1e-12);
    const double q = neumann_rayleigh_quotient(p, f);
    report.min_quotient = std::min(report.min_quotient, q);
    require(q >= lambda_1 - 1e-8, errc::rayleigh_violation,
            "sampled quotient " + std::to_string(q) + " undercuts lambda_1 = " +
                std::to_string(lambda_1));
  }
  return report;
}

}  // namespace neumaps
