#pragma once

// Shared test utilities: random graph/partition generators and independent
// reference constructions (kept deliberately separate from the library code
// paths they are used to check).

#include <algorithm>
#include <vector>

#include "neumaps/graph.hpp"
#include "neumaps/rng.hpp"

namespace testutil {

using neumaps::Index;
using neumaps::Matrix;
using neumaps::Vector;

// Complete graph with uniform random weights in [0.1, 1.1): always connected.
inline neumaps::WeightedGraph random_dense_graph(neumaps::SplitMix64& rng, Index n) {
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double v = 0.1 + rng.unit();
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return neumaps::build_graph(std::move(w));
}

// Erdos-Renyi-style graph, edge probability ~0.5; any isolated vertex gets
// one forced edge so construction succeeds.
inline neumaps::WeightedGraph random_sparse_graph(neumaps::SplitMix64& rng, Index n) {
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (rng.unit() < 0.5) {
        const double v = 0.1 + rng.unit();
        w(i, j) = v;
        w(j, i) = v;
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (w.row(i).sum() == 0.0) {
      const Index j = (i + 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)))) % n;
      w(i, j) = w(j, i) = 0.5;
    }
  }
  return neumaps::build_graph(std::move(w));
}

// Random keep set of size in [min_size, n-1].
inline std::vector<Index> random_keep(neumaps::SplitMix64& rng, Index n, Index min_size = 1) {
  const Index m = min_size + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - min_size)));
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < m; ++i) {
    const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> keep(idx.begin(), idx.begin() + m);
  std::sort(keep.begin(), keep.end());
  return keep;
}

// Brute-force boundary: outside vertices with any positive edge into keep.
inline std::vector<Index> brute_force_boundary(const neumaps::WeightedGraph& g,
                                               const std::vector<Index>& keep) {
  std::vector<char> kept(static_cast<std::size_t>(g.size()), 0);
  for (Index v : keep) kept[static_cast<std::size_t>(v)] = 1;
  std::vector<Index> out;
  for (Index v = 0; v < g.size(); ++v) {
    if (kept[static_cast<std::size_t>(v)]) continue;
    bool touches = false;
    for (Index u : keep) touches = touches || g.weight(v, u) > 0.0;
    if (touches) out.push_back(v);
  }
  return out;
}

// Reflecting walk assembled entrywise from the raw affinities:
// R(a,b) = W(ka,kb)/d(ka) + sum_x W(x,ka) W(x,kb) / (d(ka) bd(x)).
inline Matrix reference_reflecting_walk(const neumaps::WeightedGraph& g,
                                        const std::vector<Index>& keep) {
  const std::vector<Index> boundary = brute_force_boundary(g, keep);
  const Index ns = static_cast<Index>(keep.size());
  Matrix r(ns, ns);
  for (Index a = 0; a < ns; ++a) {
    for (Index b = 0; b < ns; ++b) {
      double val = g.weight(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
      for (Index x : boundary) {
        double bd = 0.0;
        for (Index u : keep) bd += g.weight(x, u);
        val += g.weight(x, keep[static_cast<std::size_t>(a)]) *
               g.weight(x, keep[static_cast<std::size_t>(b)]) / bd;
      }
      r(a, b) = val / g.degree(keep[static_cast<std::size_t>(a)]);
    }
  }
  return r;
}

// Laplacian of the subgraph induced by keep + boundary (degrees within it),
// plus the position maps needed to read rows off it.
struct VStar {
  std::vector<Index> vertices;  // keep then boundary, original ids
  Matrix laplacian;
};

inline VStar vstar_laplacian(const neumaps::WeightedGraph& g, const std::vector<Index>& keep,
                             const std::vector<Index>& boundary) {
  VStar out;
  out.vertices = keep;
  out.vertices.insert(out.vertices.end(), boundary.begin(), boundary.end());
  const Index m = static_cast<Index>(out.vertices.size());
  Matrix w(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      w(a, b) = g.weight(out.vertices[static_cast<std::size_t>(a)],
                         out.vertices[static_cast<std::size_t>(b)]);
    }
  }
  out.laplacian = -w;
  out.laplacian.diagonal() += w.rowwise().sum();
  return out;
}

}  // namespace testutil
