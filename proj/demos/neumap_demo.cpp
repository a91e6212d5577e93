// Minimal end-to-end walkthrough: two noisy clusters, a random landmark set,
// and the reflecting-walk embedding of the kept points with its boundary
// extension. Prints the top of the spectrum and the first few coordinates.

#include <cstdio>

#include "neumaps/neumaps.hpp"

int main() {
  using namespace neumaps;

  SplitMix64 rng(7);
  const Index n = 80;
  Matrix points(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double cx = (i < n / 2) ? 0.0 : 4.0;
    points(i, 0) = cx + 0.5 * rng.normal();
    points(i, 1) = 0.5 * rng.normal();
  }

  const double eps = maxmin_bandwidth(points, 2.0);
  const WeightedGraph g = gaussian_affinity(points, eps);
  const LandmarkSelection sel = select_random(n, 0.25, /*seed=*/1);

  SubgraphPartition part = partition(g, sel.kept);
  const NeumannSystem sys = neumann_laplacian(std::move(part));
  const SpectralDecomposition dec = spectral(sys);
  const EmbeddingMatrix emb = neumap_embed(dec, /*t=*/1.0, /*d=*/2, Basis::right);
  const Matrix ext = neumann_condition_extend(sys.part, emb.coords);

  std::printf("n=%ld kept=%zu boundary=%zu epsilon=%.4f\n", static_cast<long>(n),
              sel.kept.size(), sys.part.boundary.size(), eps);
  std::printf("sigma: ");
  for (Index i = 0; i < std::min<Index>(5, dec.sigma.size()); ++i) {
    std::printf("%.5f ", dec.sigma(i));
  }
  std::printf("\nfirst kept coordinates:\n");
  for (Index i = 0; i < std::min<Index>(4, emb.coords.rows()); ++i) {
    std::printf("  v%ld: (%.5f, %.5f)\n", static_cast<long>(sys.part.keep[static_cast<std::size_t>(i)]),
                emb.coords(i, 0), emb.coords(i, 1));
  }
  std::printf("first boundary extensions:\n");
  for (Index i = 0; i < std::min<Index>(4, ext.rows()); ++i) {
    std::printf("  v%ld: (%.5f, %.5f)\n",
                static_cast<long>(sys.part.boundary[static_cast<std::size_t>(i)]), ext(i, 0),
                ext(i, 1));
  }
  return 0;
}
