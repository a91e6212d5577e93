#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"

namespace neumaps {

/// Undirected weighted graph on n vertices, stored as a dense symmetric
/// nonnegative affinity matrix with precomputed degrees. Immutable after
/// construction; every vertex is required to have positive degree.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  Index size() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  const Vector& degrees() const { return degrees_; }
  double degree(Index x) const { return degrees_(x); }
  double weight(Index x, Index y) const { return weights_(x, y); }
  /// Whether any diagonal entry is nonzero (self-affinity retained).
  bool has_self_loops() const { return self_loops_; }

  friend WeightedGraph build_graph(Matrix w);

 private:
  Matrix weights_;
  Vector degrees_;
  bool self_loops_ = false;
};

/// Validates and normalizes an affinity matrix into a WeightedGraph.
/// Asymmetry up to 1e-12 (relative to the largest entry) is repaired by
/// averaging with the transpose; beyond that it is an error. Rows summing to
/// zero are rejected: an isolated vertex has no degree to normalize by.
inline WeightedGraph build_graph(Matrix w) {
  const Index n = w.rows();
  require(n == w.cols(), errc::non_square,
          "affinity matrix is " + std::to_string(n) + "x" + std::to_string(w.cols()));
  require(n >= 1, errc::non_square, "affinity matrix is empty");
  require(w.allFinite(), errc::negative_weight, "affinity matrix has non-finite entries");
  require(w.minCoeff() >= 0.0, errc::negative_weight, "affinity matrix has negative entries");

  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  const double asym = (w - w.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12 * scale, errc::asymmetric_beyond_tolerance,
          "max |W - W^T| = " + std::to_string(asym));
  // Exact symmetry after this point: (a+b)/2 is bitwise order-independent.
  w = ((w + w.transpose()) * 0.5).eval();

  WeightedGraph g;
  g.degrees_ = w.rowwise().sum();
  for (Index x = 0; x < n; ++x) {
    require(g.degrees_(x) > 0.0, errc::isolated_vertex,
            "vertex " + std::to_string(x) + " has zero degree");
  }
  g.self_loops_ = w.diagonal().maxCoeff() > 0.0;
  g.weights_ = std::move(w);
  return g;
}

/// L = D - W.
inline Matrix graph_laplacian(const WeightedGraph& g) {
  Matrix l = -g.weights();
  l.diagonal() += g.degrees();
  return l;
}

/// Index split of a graph into a kept set and its boundary, with the blocks
/// the Neumann construction consumes. All indices 0-based and sorted.
///
/// Fields (diagonal matrices stored as their diagonals):
///   keep             the embedded vertex set
///   boundary         vertices outside keep with at least one positive-weight
///                    edge into keep; outside vertices without such an edge
///                    carry no boundary information and are dropped
///   w_keep           induced adjacency W[keep, keep]
///   dirichlet        L[keep, keep] of the ambient Laplacian
///   ambient_degrees  ambient (whole-graph) degrees of the kept vertices;
///                    deliberately not the within-subgraph degrees
///   boundary_op      W[boundary, keep]
///   boundary_degrees row sums of boundary_op, strictly positive
struct SubgraphPartition {
  std::vector<Index> keep;
  std::vector<Index> boundary;
  Matrix w_keep;
  Matrix dirichlet;
  Vector ambient_degrees;
  Matrix boundary_op;
  Vector boundary_degrees;

  /// True when the boundary is empty. Downstream the Neumann Laplacian then
  /// degenerates to the Dirichlet block; callers treat this as a warning
  /// state, not an error.
  bool degenerate_boundary() const { return boundary.empty(); }
};

inline std::vector<Index> checked_sorted_indices(std::vector<Index> idx, Index n,
                                                 const char* what) {
  require(!idx.empty(), errc::empty_keep, std::string(what) + " set is empty");
  for (Index v : idx) {
    require(v >= 0 && v < n, errc::index_out_of_range,
            std::string(what) + " index " + std::to_string(v) + " outside [0," +
                std::to_string(n) + ")");
  }
  std::sort(idx.begin(), idx.end());
  auto dup = std::adjacent_find(idx.begin(), idx.end());
  require(dup == idx.end(), errc::duplicate_index,
          std::string(what) + " index " + std::to_string(dup == idx.end() ? -1 : *dup) +
              " repeated");
  return idx;
}

inline SubgraphPartition partition(const WeightedGraph& g, std::vector<Index> keep) {
  const Index n = g.size();
  SubgraphPartition p;
  p.keep = checked_sorted_indices(std::move(keep), n, "keep");
  const Index ns = static_cast<Index>(p.keep.size());

  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (Index v : p.keep) kept[static_cast<std::size_t>(v)] = 1;

  const Matrix& w = g.weights();
  p.w_keep.resize(ns, ns);
  p.ambient_degrees.resize(ns);
  for (Index a = 0; a < ns; ++a) {
    p.ambient_degrees(a) = g.degree(p.keep[static_cast<std::size_t>(a)]);
    for (Index b = 0; b < ns; ++b) {
      p.w_keep(a, b) = w(p.keep[static_cast<std::size_t>(a)], p.keep[static_cast<std::size_t>(b)]);
    }
  }
  p.dirichlet = -p.w_keep;
  p.dirichlet.diagonal() += p.ambient_degrees;

  // Boundary: outside vertices with a positive-weight edge into keep.
  for (Index v = 0; v < n; ++v) {
    if (kept[static_cast<std::size_t>(v)]) continue;
    double into_keep = 0.0;
    for (Index a = 0; a < ns; ++a) into_keep += w(v, p.keep[static_cast<std::size_t>(a)]);
    if (into_keep > 0.0) p.boundary.push_back(v);
  }
  const Index nb = static_cast<Index>(p.boundary.size());
  p.boundary_op.resize(nb, ns);
  p.boundary_degrees.resize(nb);
  for (Index i = 0; i < nb; ++i) {
    for (Index a = 0; a < ns; ++a) {
      p.boundary_op(i, a) =
          w(p.boundary[static_cast<std::size_t>(i)], p.keep[static_cast<std::size_t>(a)]);
    }
    p.boundary_degrees(i) = p.boundary_op.row(i).sum();
  }
  return p;
}

}  // namespace neumaps
