#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "neumaps/neumann.hpp"

using namespace neumaps;

namespace {

struct RandomCase {
  WeightedGraph graph;
  NeumannSystem sys;
  SpectralDecomposition dec;
};

RandomCase make_case(SplitMix64& rng, bool dense) {
  RandomCase rc;
  const Index n = 4 + static_cast<Index>(rng.below(9));  // 4..12
  rc.graph = dense ? testutil::random_dense_graph(rng, n)
                   : testutil::random_sparse_graph(rng, n);
  const auto keep = testutil::random_keep(rng, n, 2);
  rc.sys = neumann_laplacian(partition(rc.graph, keep));
  rc.dec = spectral(rc.sys);
  return rc;
}

}  // namespace

TEST_CASE("reflecting walk: stochasticity and the two construction routes") {
  SplitMix64 rng(2001);
  for (int trial = 0; trial < 60; ++trial) {
    const RandomCase rc = make_case(rng, trial % 2 == 0);
    const Index ns = rc.sys.walk.rows();

    CHECK((rc.sys.walk * Vector::Ones(ns) - Vector::Ones(ns)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(rc.sys.walk.minCoeff() >= -1e-12);

    const Matrix ref = testutil::reference_reflecting_walk(rc.graph, rc.sys.part.keep);
    CHECK((rc.sys.walk - ref).cwiseAbs().maxCoeff() <= 1e-10);

    // L_N stays symmetric and the renormalized operator PSD.
    CHECK((rc.sys.neumann - rc.sys.neumann.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((1.0 - rc.dec.sigma.maxCoeff()) >= -1e-10);  // smallest eigenvalue of N
  }
}

TEST_CASE("spectral decomposition invariants") {
  SplitMix64 rng(2002);
  for (int trial = 0; trial < 25; ++trial) {
    const RandomCase rc = make_case(rng, /*dense=*/true);
    const Index ns = rc.dec.full_dim;

    CHECK((rc.dec.u.transpose() * rc.dec.u - Matrix::Identity(ns, ns)).cwiseAbs().maxCoeff()
          <= 1e-10);
    CHECK((rc.dec.y_left.transpose() * rc.dec.v_right - Matrix::Identity(ns, ns))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    CHECK(rc.dec.sigma(0) == Catch::Approx(1.0).margin(1e-10));
    CHECK(rc.dec.sigma.minCoeff() >= -1.0 - 1e-10);
    CHECK(rc.dec.sigma.maxCoeff() <= 1.0 + 1e-10);
    // Descending order.
    for (Index i = 1; i < ns; ++i) CHECK(rc.dec.sigma(i) <= rc.dec.sigma(i - 1) + 1e-14);
    // Stationary right eigenvector is constant (dense graphs are connected).
    const Vector v1 = rc.dec.v_right.col(0);
    CHECK((v1.array() - v1(0)).abs().maxCoeff() <= 1e-8);
    // Eigen residual of I - N.
    Matrix i_minus_n = -rc.sys.renormalized;
    i_minus_n.diagonal().array() += 1.0;
    for (Index i = 0; i < ns; ++i) {
      const double resid =
          (i_minus_n * rc.dec.u.col(i) - rc.dec.sigma(i) * rc.dec.u.col(i)).norm();
      CHECK(resid <= 1e-8 * std::max(1.0, std::abs(rc.dec.sigma(i))));
    }
  }
}

TEST_CASE("every eigenpair solves the generalized problem and extends correctly") {
  SplitMix64 rng(2003);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomCase rc = make_case(rng, trial % 2 == 0);
    const auto& part = rc.sys.part;
    const Index ns = rc.dec.full_dim;
    const Index nb = static_cast<Index>(part.boundary.size());
    const testutil::VStar vs =
        testutil::vstar_laplacian(rc.graph, part.keep, part.boundary);

    for (Index i = 0; i < ns; ++i) {
      const NeumannEigenpair pair = neumann_eigenpair(rc.dec, part, i);

      // Generalized eigenproblem residual.
      const double ge = (rc.sys.neumann * pair.u -
                         pair.lambda * part.ambient_degrees.asDiagonal() * pair.u)
                            .norm();
      CHECK(ge <= 1e-8);

      // Extended function on V* = keep + boundary.
      Vector f(ns + nb);
      f.head(ns) = pair.u;
      f.tail(nb) = pair.f_ext;

      // Ambient eigen-equation at every kept vertex.
      const Vector lf = vs.laplacian * f;
      for (Index a = 0; a < ns; ++a) {
        const double want = pair.lambda *
                            rc.graph.degree(part.keep[static_cast<std::size_t>(a)]) * f(a);
        CHECK(std::abs(lf(a) - want) <= 1e-8);
      }

      // Vanishing discrete normal derivative at every boundary vertex.
      for (Index b = 0; b < nb; ++b) {
        double resid = 0.0;
        for (Index a = 0; a < ns; ++a) {
          resid += part.boundary_op(b, a) * (f(ns + b) - f(a));
        }
        CHECK(std::abs(resid) <= 1e-8);
      }
    }
  }
}

TEST_CASE("diffusion distance equals the transition-profile distance") {
  SplitMix64 rng(2004);
  for (int trial = 0; trial < 12; ++trial) {
    const RandomCase rc = make_case(rng, trial % 2 == 0);
    const Index ns = rc.dec.full_dim;
    for (long t : {1L, 2L, 5L}) {
      const Matrix p = walk_probability_oracle(rc.sys, t);
      for (Index i = 0; i < ns; ++i) {
        for (Index k = 0; k < ns; ++k) {
          double prob_side = 0.0;
          for (Index j = 0; j < ns; ++j) {
            const double diff = p(i, j) - p(k, j);
            prob_side += diff * diff / rc.sys.part.ambient_degrees(j);
          }
          const double spec_side = diffusion_distance_sq(rc.dec, t, i, k);
          CHECK(std::abs(spec_side - prob_side) <= 1e-8 * std::max(prob_side, 1e-14));
        }
      }
    }
  }
}

TEST_CASE("first eigenvector contributes nothing on connected systems") {
  SplitMix64 rng(2005);
  for (int trial = 0; trial < 5; ++trial) {
    const RandomCase rc = make_case(rng, true);  // dense => connected walk
    const Index ns = rc.dec.full_dim;
    for (long t : {1L, 2L}) {
      for (Index i = 0; i < ns; ++i) {
        for (Index k = 0; k < ns; ++k) {
          double without_first = 0.0;
          for (Index l = 1; l < ns; ++l) {
            const double diff = rc.dec.v_right(i, l) - rc.dec.v_right(k, l);
            without_first += std::pow(rc.dec.sigma(l), 2.0 * t) * diff * diff;
          }
          CHECK(std::abs(without_first - diffusion_distance_sq(rc.dec, t, i, k)) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("embedding distances survive sign flips and degenerate remixing") {
  SplitMix64 rng(2006);
  const RandomCase rc = make_case(rng, true);
  const Index ns = rc.dec.full_dim;
  if (ns < 3) return;
  const Index d = ns - 1;
  const EmbeddingMatrix emb = neumap_embed(rc.dec, 1.0, d, Basis::right);

  auto pair_dist = [](const Matrix& c) {
    Matrix out(c.rows(), c.rows());
    for (Index i = 0; i < c.rows(); ++i) {
      for (Index j = 0; j < c.rows(); ++j) out(i, j) = (c.row(i) - c.row(j)).norm();
    }
    return out;
  };
  const Matrix base = pair_dist(emb.coords);

  // Sign flips.
  Matrix flipped = emb.coords;
  for (Index j = 0; j < d; j += 2) flipped.col(j) = -flipped.col(j);
  CHECK((pair_dist(flipped) - base).cwiseAbs().maxCoeff() <= 1e-8);

  // Orthogonal remixing inside numerically degenerate sigma blocks.
  Matrix remixed = emb.coords;
  for (Index j = 0; j + 1 < d; ++j) {
    if (std::abs(rc.dec.sigma(j + 1) - rc.dec.sigma(j + 2)) < 1e-10) {
      const double theta = 0.7;
      const Vector a = remixed.col(j), b = remixed.col(j + 1);
      remixed.col(j) = std::cos(theta) * a + std::sin(theta) * b;
      remixed.col(j + 1) = -std::sin(theta) * a + std::cos(theta) * b;
    }
  }
  CHECK((pair_dist(remixed) - base).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("random systems never undercut the rayleigh bound") {
  SplitMix64 rng(2007);
  for (int trial = 0; trial < 6; ++trial) {
    const RandomCase rc = make_case(rng, true);
    const double lambda_1 = rc.dec.neumann_eigenvalue(1);
    const RayleighReport rep =
        verify_rayleigh_minimum(rc.sys.part, lambda_1, 300, 1000 + trial);
    CHECK(rep.min_quotient >= lambda_1 - 1e-8);
    const double attained =
        neumann_rayleigh_quotient(rc.sys.part, rc.dec.v_right.col(1));
    CHECK(attained == Catch::Approx(lambda_1).margin(1e-10));
  }
}

TEST_CASE("truncated decompositions match the leading full eigenpairs") {
  SplitMix64 rng(2008);
  const RandomCase rc = make_case(rng, true);
  const Index k = std::min<Index>(3, rc.dec.full_dim);
  const SpectralDecomposition top = spectral(rc.sys, k);
  CHECK(top.truncated() == (k < rc.dec.full_dim));
  for (Index i = 0; i < k; ++i) {
    CHECK(top.sigma(i) == Catch::Approx(rc.dec.sigma(i)).margin(1e-10));
    // Same eigenvector up to sign handled by the shared orientation rule;
    // compare |dot| to dodge degenerate-pair rotations.
    const double overlap = std::abs(top.u.col(i).dot(rc.dec.u.col(i)));
    if (i + 1 < k && std::abs(rc.dec.sigma(i) - rc.dec.sigma(i + 1)) > 1e-8 &&
        (i == 0 || std::abs(rc.dec.sigma(i) - rc.dec.sigma(i - 1)) > 1e-8)) {
      CHECK(overlap == Catch::Approx(1.0).margin(1e-8));
    }
  }
}
