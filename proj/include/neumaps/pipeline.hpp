#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "neumaps/baselines.hpp"
#include "neumaps/csv.hpp"
#include "neumaps/errors.hpp"
#include "neumaps/eval.hpp"
#include "neumaps/graph.hpp"
#include "neumaps/kernel_spectral.hpp"
#include "neumaps/kernels.hpp"
#include "neumaps/landmarks.hpp"
#include "neumaps/neumann.hpp"

namespace neumaps {

using json = nlohmann::json;

/// Flat JSON pipeline configuration. Unknown keys are rejected so typos fail
/// loudly; CLI flags override individual keys after parsing.
struct PipelineConfig {
  std::string input;
  std::string input_kind = "points";  // points | affinity
  int label_col = -1;
  int cv_col = -1;
  double kernel_c = 2.0;
  double epsilon = 0.0;  // 0 => tune with the max-min rule
  bool zero_diagonal = true;
  std::string scheme = "none";  // none | random | every_kth | delta_net | threshold
  double fraction = 0.25;
  long stride = 10;
  double delta = 0.0;
  std::vector<std::pair<double, double>> intervals;
  std::string method = "neumap";  // neumap | dmap | roseland
  std::string dmap_scope = "full";  // full | kept
  double t = 1.0;
  long d = 2;
  std::string basis = "left";
  int kmeans_k = 0;  // 0 => no clustering metrics
  int kmeans_restarts = 10;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  void validate() const {
    auto one_of = [](const std::string& v, std::initializer_list<const char*> allowed,
                     const char* what) {
      for (const char* a : allowed) {
        if (v == a) return;
      }
      fail(errc::config_error, std::string(what) + " '" + v + "' not recognized");
    };
    one_of(input_kind, {"points", "affinity"}, "input_kind");
    one_of(scheme, {"none", "random", "every_kth", "delta_net", "threshold"}, "scheme");
    one_of(method, {"neumap", "dmap", "roseland"}, "method");
    one_of(dmap_scope, {"full", "kept"}, "dmap_scope");
    one_of(basis, {"left", "right"}, "basis");
    require(!input.empty(), errc::config_error, "input path missing");
    require(d >= 1, errc::config_error, "d must be >= 1");
    require(t >= 0.0, errc::config_error, "t must be >= 0");
    require(kmeans_k >= 0, errc::config_error, "kmeans_k must be >= 0");
    if (input_kind == "affinity") {
      require(label_col == -1 && cv_col == -1, errc::config_error,
              "affinity input has no label/cv columns");
      require(method != "roseland" && scheme != "delta_net", errc::config_error,
              "affinity input provides no point coordinates");
    }
  }

  static PipelineConfig from_json(const json& j) {
    PipelineConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const json& v = it.value();
      try {
        if (key == "input") c.input = v.get<std::string>();
        else if (key == "input_kind") c.input_kind = v.get<std::string>();
        else if (key == "label_col") c.label_col = v.get<int>();
        else if (key == "cv_col") c.cv_col = v.get<int>();
        else if (key == "kernel_c") c.kernel_c = v.get<double>();
        else if (key == "epsilon") c.epsilon = v.get<double>();
        else if (key == "zero_diagonal") c.zero_diagonal = v.get<bool>();
        else if (key == "scheme") c.scheme = v.get<std::string>();
        else if (key == "fraction") c.fraction = v.get<double>();
        else if (key == "stride") c.stride = v.get<long>();
        else if (key == "delta") c.delta = v.get<double>();
        else if (key == "intervals") {
          c.intervals.clear();
          for (const auto& pair : v) {
            require(pair.is_array() && pair.size() == 2, errc::config_error,
                    "intervals entries must be [center, halfwidth]");
            c.intervals.emplace_back(pair[0].get<double>(), pair[1].get<double>());
          }
        }
        else if (key == "method") c.method = v.get<std::string>();
        else if (key == "dmap_scope") c.dmap_scope = v.get<std::string>();
        else if (key == "t") c.t = v.get<double>();
        else if (key == "d") c.d = v.get<long>();
        else if (key == "basis") c.basis = v.get<std::string>();
        else if (key == "kmeans_k") c.kmeans_k = v.get<int>();
        else if (key == "kmeans_restarts") c.kmeans_restarts = v.get<int>();
        else if (key == "seed") c.seed = v.get<std::uint64_t>();
        else if (key == "output_dir") c.output_dir = v.get<std::string>();
        else fail(errc::config_error, "unknown config key '" + key + "'");
      } catch (const json::exception& e) {
        fail(errc::config_error, "bad value for '" + key + "': " + e.what());
      }
    }
    c.validate();
    return c;
  }

  static PipelineConfig from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open config " + path.string());
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      fail(errc::config_error, "config " + path.string() + " is not valid JSON: " + e.what());
    }
    require(j.is_object(), errc::config_error, "config root must be a JSON object");
    return from_json(j);
  }

  json to_json() const {
    json j;
    j["input"] = input;
    j["input_kind"] = input_kind;
    j["label_col"] = label_col;
    j["cv_col"] = cv_col;
    j["kernel_c"] = kernel_c;
    j["epsilon"] = epsilon;
    j["zero_diagonal"] = zero_diagonal;
    j["scheme"] = scheme;
    j["fraction"] = fraction;
    j["stride"] = stride;
    j["delta"] = delta;
    json iv = json::array();
    for (const auto& [c0, h] : intervals) iv.push_back({c0, h});
    j["intervals"] = iv;
    j["method"] = method;
    j["dmap_scope"] = dmap_scope;
    j["t"] = t;
    j["d"] = d;
    j["basis"] = basis;
    j["kmeans_k"] = kmeans_k;
    j["kmeans_restarts"] = kmeans_restarts;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    return j;
  }
};

struct RunReport {
  json metrics;
  json manifest;
  LandmarkSelection selection;
  std::filesystem::path out_dir;
  Matrix coords;                 // embedded coordinates, one row per vertex
  std::vector<Index> embedded;   // original indices of the embedded rows
};

namespace pipeline_detail {

// Kept sets above this size (with a PSD kernel) go through the low-rank
// route; below it the dense operators are built faithfully.
constexpr Index kDenseLimit = 3000;

// Ritz-pair residual bound checked against the exact operator. The check is
// itself an n^2 kernel evaluation whose rounding floor is ~1e-9 at n = 10^4,
// so this sits just above that floor; genuine factorization failures land
// orders of magnitude higher.
constexpr double kLowRankResidualTol = 3e-9;

inline std::string fmt_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Ingested {
  bool is_points = false;
  Matrix features;      // points input
  WeightedGraph graph;  // affinity input
  ColumnSplit columns;
  Index n = 0;
};

inline Ingested ingest(const PipelineConfig& cfg) {
  Ingested in;
  require(std::filesystem::exists(cfg.input), errc::io_error,
          "input file not found: " + cfg.input);
  Matrix raw = load_matrix_csv(cfg.input);
  if (cfg.input_kind == "points") {
    in.is_points = true;
    in.columns = split_columns(raw, cfg.label_col, cfg.cv_col);
    in.features = std::move(in.columns.features);
    in.n = in.features.rows();
  } else {
    in.graph = build_graph(std::move(raw));
    in.n = in.graph.size();
  }
  return in;
}

inline LandmarkSelection make_selection(const PipelineConfig& cfg, const Ingested& in) {
  if (cfg.scheme == "random") return select_random(in.n, cfg.fraction, cfg.seed);
  if (cfg.scheme == "every_kth") return select_every_kth(in.n, cfg.stride);
  if (cfg.scheme == "delta_net") {
    require(in.is_points, errc::config_error, "delta_net needs point coordinates");
    return select_delta_net(in.features, cfg.delta);
  }
  if (cfg.scheme == "threshold") {
    require(in.columns.has_cv, errc::config_error, "threshold scheme needs a cv column");
    return select_threshold(in.columns.cv, cfg.intervals);
  }
  LandmarkSelection sel;  // scheme none: keep everything
  sel.scheme = "none";
  sel.seed = cfg.seed;
  for (Index i = 0; i < in.n; ++i) sel.kept.push_back(i);
  return sel;
}

inline Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (Index i = 0; i < out.rows(); ++i) out.row(i) = m.row(rows[static_cast<std::size_t>(i)]);
  return out;
}

struct EmbeddingOutput {
  Matrix coords;
  std::vector<Index> embedded;
  Matrix boundary_coords;          // neumap only
  std::vector<Index> boundary;     // original indices, after zero-row drops
  json spectral_info;              // route diagnostics for the manifest
  bool degenerate_boundary = false;
};

// Write-time safety net: every boundary row must satisfy the discrete
// Neumann condition against the kept coordinates.
inline void check_boundary_residual(const Matrix& boundary_op, const Vector& boundary_deg,
                                    const Matrix& kept_coords, const Matrix& ext) {
  const Matrix lhs = boundary_deg.asDiagonal() * ext;
  const Matrix rhs = boundary_op * kept_coords;
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  const double resid = (lhs - rhs).cwiseAbs().maxCoeff();
  require(resid <= 1e-8 * scale, errc::eigensolver_failure,
          "boundary extension violates the Neumann condition: residual " +
              std::to_string(resid));
}

inline EmbeddingOutput embed_neumap_dense(const PipelineConfig& cfg, const WeightedGraph& g,
                                          const LandmarkSelection& sel) {
  EmbeddingOutput out;
  SubgraphPartition part = partition(g, sel.kept);
  NeumannSystem sys = neumann_laplacian(std::move(part), /*build_walk=*/false);
  out.degenerate_boundary = sys.degenerate_boundary;
  const Index pairs = std::min<Index>(cfg.d + 1, static_cast<Index>(sel.kept.size()));
  SpectralDecomposition dec = spectral(sys, pairs);
  const Basis basis = cfg.basis == "left" ? Basis::left : Basis::right;
  EmbeddingMatrix emb = neumap_embed(dec, cfg.t, cfg.d, basis);
  out.coords = std::move(emb.coords);
  out.embedded = sys.part.keep;
  out.boundary = sys.part.boundary;
  if (!sys.part.boundary.empty()) {
    out.boundary_coords = neumann_condition_extend(sys.part, out.coords);
    check_boundary_residual(sys.part.boundary_op, sys.part.boundary_degrees, out.coords,
                            out.boundary_coords);
  }
  out.spectral_info["spectral_path"] = "dense";
  out.spectral_info["sigma"] = std::vector<double>(dec.sigma.data(),
                                                   dec.sigma.data() + dec.sigma.size());
  return out;
}

// Low-rank route: with self-affinity retained the kernel G is PSD, and
// I - N = T^{-1/2}(G_SS + B^T Tdelta^{-1} B)T^{-1/2} = F F^T exactly, with
// F = T^{-1/2}[P, B^T Tdelta^{-1/2}] and G_SS ~= P P^T from pivoted Cholesky.
// Top eigenpairs come from the thin Gram problem; the returned pairs are then
// residual-checked against the exact operator (on-the-fly kernel products),
// keeping the eigensolver contract honest.
inline EmbeddingOutput embed_neumap_lowrank(const PipelineConfig& cfg, const Matrix& features,
                                            const LandmarkSelection& sel, double eps) {
  EmbeddingOutput out;
  const Matrix kept_pts = take_rows(features, sel.kept);
  const Matrix marked_pts = take_rows(features, sel.marked);
  const Index nk = kept_pts.rows();

  Vector ambient_deg = gaussian_degrees(kept_pts, features, eps, /*zero_diagonal=*/false);
  for (Index i = 0; i < nk; ++i) {
    require(ambient_deg(i) > 0.0, errc::isolated_vertex, "kept point with zero degree");
  }

  Matrix boundary_op;          // rows: boundary vertices with edges into keep
  Vector boundary_deg;
  if (marked_pts.rows() > 0) {
    Matrix b_full = gaussian_cross(marked_pts, kept_pts, eps);
    const Vector row_mass = b_full.rowwise().sum();
    std::vector<Index> alive;
    for (Index i = 0; i < b_full.rows(); ++i) {
      if (row_mass(i) > 0.0) alive.push_back(i);
    }
    boundary_op.resize(static_cast<Index>(alive.size()), nk);
    boundary_deg.resize(static_cast<Index>(alive.size()));
    for (Index i = 0; i < boundary_op.rows(); ++i) {
      boundary_op.row(i) = b_full.row(alive[static_cast<std::size_t>(i)]);
      boundary_deg(i) = row_mass(alive[static_cast<std::size_t>(i)]);
      out.boundary.push_back(sel.marked[static_cast<std::size_t>(alive[static_cast<std::size_t>(i)])]);
    }
  }
  out.degenerate_boundary = out.boundary.empty();

  const LowRankFactor chol = pivoted_cholesky_gaussian(kept_pts, eps, 1e-14, 3000);
  const Index nb = boundary_op.rows();
  const Vector inv_sqrt_deg = ambient_deg.cwiseSqrt().cwiseInverse();
  Matrix f(nk, chol.p.cols() + nb);
  f.leftCols(chol.p.cols()) = chol.p;
  if (nb > 0) {
    f.rightCols(nb) =
        boundary_op.transpose() * boundary_deg.cwiseSqrt().cwiseInverse().asDiagonal();
  }
  f = inv_sqrt_deg.asDiagonal() * f;

  const Index pairs = std::min<Index>(cfg.d + 1, std::min<Index>(f.cols(), nk));
  require(pairs >= cfg.d + 1, errc::dimension_too_large, "kernel rank below d+1");
  TopPairs top = gram_top_eigen(f, pairs);

  // Residual of each Ritz pair against the exact operator.
  double worst = 0.0;
  for (Index j = 0; j < pairs; ++j) {
    const Vector scaled = inv_sqrt_deg.asDiagonal() * top.vectors.col(j);
    Vector applied = gaussian_matvec(kept_pts, eps, scaled);
    if (nb > 0) {
      const Vector via_boundary = boundary_op * scaled;
      applied += boundary_op.transpose() *
                 (boundary_deg.cwiseInverse().asDiagonal() * via_boundary);
    }
    const Vector lhs = inv_sqrt_deg.asDiagonal() * applied;
    worst = std::max(worst, (lhs - top.values(j) * top.vectors.col(j)).norm());
  }
  require(worst <= kLowRankResidualTol, errc::eigensolver_failure,
          "low-rank eigenpair residual " + fmt_residual(worst) +
              " exceeds tolerance (kernel bandwidth too small for the low-rank route?)");

  const Basis basis = cfg.basis == "left" ? Basis::left : Basis::right;
  const Vector sqrt_deg = ambient_deg.cwiseSqrt();
  out.coords.resize(nk, cfg.d);
  for (Index j = 0; j < cfg.d; ++j) {
    Vector col = (basis == Basis::left)
                     ? Vector(sqrt_deg.asDiagonal() * top.vectors.col(j + 1))
                     : Vector(inv_sqrt_deg.asDiagonal() * top.vectors.col(j + 1));
    out.coords.col(j) = std::pow(top.values(j + 1), cfg.t) * col;
  }
  out.embedded = sel.kept;
  if (nb > 0) {
    out.boundary_coords = boundary_deg.cwiseInverse().asDiagonal() * boundary_op * out.coords;
    check_boundary_residual(boundary_op, boundary_deg, out.coords, out.boundary_coords);
  }
  out.spectral_info["spectral_path"] = "lowrank";
  out.spectral_info["pchol_rank"] = static_cast<long>(chol.p.cols());
  out.spectral_info["pchol_trace_residual"] = chol.trace_residual;
  out.spectral_info["eigen_residual"] = worst;
  out.spectral_info["sigma"] =
      std::vector<double>(top.values.data(), top.values.data() + top.values.size());
  return out;
}

inline EmbeddingOutput embed_dmap_dense(const PipelineConfig& cfg, const WeightedGraph& g,
                                        std::vector<Index> embedded) {
  EmbeddingOutput out;
  const Index pairs = std::min<Index>(cfg.d + 1, g.size());
  DmapResult res = dmap(g, cfg.t, cfg.d, pairs);
  out.coords = std::move(res.embedding.coords);
  out.embedded = std::move(embedded);
  out.spectral_info["spectral_path"] = "dense";
  out.spectral_info["eigenvalues"] = std::vector<double>(
      res.eigenvalues.data(), res.eigenvalues.data() + res.eigenvalues.size());
  return out;
}

inline EmbeddingOutput embed_dmap_lowrank(const PipelineConfig& cfg, const Matrix& pts,
                                          std::vector<Index> embedded, double eps) {
  EmbeddingOutput out;
  const Index n = pts.rows();
  Vector deg = gaussian_degrees(pts, pts, eps, /*zero_diagonal=*/false);
  for (Index i = 0; i < n; ++i) {
    require(deg(i) > 0.0, errc::isolated_vertex, "point with zero degree");
  }
  const LowRankFactor chol = pivoted_cholesky_gaussian(pts, eps, 1e-14, 3000);
  const Vector inv_sqrt_deg = deg.cwiseSqrt().cwiseInverse();
  Matrix f = inv_sqrt_deg.asDiagonal() * chol.p;
  const Index pairs = std::min<Index>(cfg.d + 1, std::min<Index>(f.cols(), n));
  require(pairs >= cfg.d + 1, errc::dimension_too_large, "kernel rank below d+1");
  TopPairs top = gram_top_eigen(f, pairs);

  double worst = 0.0;
  for (Index j = 0; j < pairs; ++j) {
    const Vector scaled = inv_sqrt_deg.asDiagonal() * top.vectors.col(j);
    const Vector lhs = inv_sqrt_deg.asDiagonal() * gaussian_matvec(pts, eps, scaled);
    worst = std::max(worst, (lhs - top.values(j) * top.vectors.col(j)).norm());
  }
  require(worst <= kLowRankResidualTol, errc::eigensolver_failure,
          "low-rank eigenpair residual " + fmt_residual(worst) +
              " exceeds tolerance (kernel bandwidth too small for the low-rank route?)");

  out.coords.resize(n, cfg.d);
  for (Index j = 0; j < cfg.d; ++j) {
    out.coords.col(j) = std::pow(top.values(j + 1), cfg.t) *
                        (inv_sqrt_deg.asDiagonal() * top.vectors.col(j + 1));
  }
  out.embedded = std::move(embedded);
  out.spectral_info["spectral_path"] = "lowrank";
  out.spectral_info["pchol_rank"] = static_cast<long>(chol.p.cols());
  out.spectral_info["pchol_trace_residual"] = chol.trace_residual;
  out.spectral_info["eigen_residual"] = worst;
  return out;
}

}  // namespace pipeline_detail

/// Runs one pipeline with an externally supplied landmark selection. This is
/// the injection point compare() uses to guarantee both methods see the same
/// marked set.
inline RunReport run_with_selection(const PipelineConfig& cfg, const LandmarkSelection& sel) {
  namespace pd = pipeline_detail;
  cfg.validate();
  pd::Ingested in = pd::ingest(cfg);
  require(static_cast<Index>(sel.marked.size() + sel.kept.size()) == in.n,
          errc::mismatched_inputs, "selection does not partition the input");

  double eps = cfg.epsilon;
  if (in.is_points && eps <= 0.0) eps = maxmin_bandwidth(in.features, cfg.kernel_c);

  pd::EmbeddingOutput emb;
  if (cfg.method == "neumap") {
    const bool lowrank = in.is_points && !cfg.zero_diagonal &&
                         static_cast<Index>(sel.kept.size()) > pd::kDenseLimit;
    if (lowrank) {
      emb = pd::embed_neumap_lowrank(cfg, in.features, sel, eps);
    } else {
      const WeightedGraph g = in.is_points
                                  ? gaussian_affinity(in.features, eps, cfg.zero_diagonal)
                                  : std::move(in.graph);
      emb = pd::embed_neumap_dense(cfg, g, sel);
    }
  } else if (cfg.method == "dmap") {
    std::vector<Index> embedded;
    if (cfg.dmap_scope == "kept") {
      embedded = sel.kept;
    } else {
      for (Index i = 0; i < in.n; ++i) embedded.push_back(i);
    }
    if (in.is_points) {
      const Matrix pts = (cfg.dmap_scope == "kept") ? pd::take_rows(in.features, sel.kept)
                                                    : in.features;
      const bool lowrank = !cfg.zero_diagonal && pts.rows() > pd::kDenseLimit;
      emb = lowrank
                ? pd::embed_dmap_lowrank(cfg, pts, std::move(embedded), eps)
                : pd::embed_dmap_dense(cfg, gaussian_affinity(pts, eps, cfg.zero_diagonal),
                                       std::move(embedded));
    } else {
      WeightedGraph g = std::move(in.graph);
      if (cfg.dmap_scope == "kept") {
        Matrix sub(static_cast<Index>(sel.kept.size()), static_cast<Index>(sel.kept.size()));
        for (Index a = 0; a < sub.rows(); ++a) {
          for (Index b = 0; b < sub.cols(); ++b) {
            sub(a, b) = g.weight(sel.kept[static_cast<std::size_t>(a)],
                                 sel.kept[static_cast<std::size_t>(b)]);
          }
        }
        g = build_graph(std::move(sub));
      }
      emb = pd::embed_dmap_dense(cfg, g, std::move(embedded));
    }
  } else {  // roseland
    require(in.is_points, errc::config_error, "roseland needs point coordinates");
    require(!sel.marked.empty(), errc::empty_landmarks,
            "roseland needs a landmark scheme that marks points");
    RoselandResult res = roseland(in.features, sel.marked, eps, cfg.t, cfg.d);
    emb.coords = std::move(res.embedding.coords);
    emb.embedded = std::move(res.kept);
    emb.spectral_info["spectral_path"] = "svd";
  }

  // Metrics.
  json metrics;
  if (cfg.kmeans_k > 0) {
    require(in.columns.has_labels, errc::config_error,
            "clustering metrics need a label column");
    ClusterAssignment ca = kmeans(emb.coords, cfg.kmeans_k, cfg.kmeans_restarts, cfg.seed);
    std::vector<int> truth;
    truth.reserve(emb.embedded.size());
    for (Index i : emb.embedded) truth.push_back(in.columns.labels[static_cast<std::size_t>(i)]);
    metrics["nmi"] = nmi(ca.labels, truth);
    metrics["acc"] = acc(ca.labels, truth);
    metrics["inertia"] = ca.inertia;
  }
  if (in.columns.has_cv) {
    Vector cv(static_cast<Index>(emb.embedded.size()));
    for (Index i = 0; i < cv.size(); ++i) {
      cv(i) = in.columns.cv(emb.embedded[static_cast<std::size_t>(i)]);
    }
    const LinearFit fit = slope_stderr(emb.coords.col(0), cv);
    metrics["slope"] = fit.slope;
    metrics["stderr"] = fit.std_error;
  }
  metrics["seed"] = cfg.seed;

  // Artifacts.
  RunReport report;
  report.out_dir = cfg.output_dir;
  std::filesystem::create_directories(report.out_dir);
  save_matrix_csv(report.out_dir / "embedding.csv", emb.coords);
  if (emb.boundary_coords.rows() > 0) {
    save_matrix_csv(report.out_dir / "boundary_extension.csv", emb.boundary_coords);
  }
  json selection_json;
  selection_json["scheme"] = sel.scheme;
  selection_json["seed"] = sel.seed;
  selection_json["marked"] = std::vector<Index>(sel.marked.begin(), sel.marked.end());
  atomic_write_text(report.out_dir / "selection.json", selection_json.dump(2) + "\n");
  atomic_write_text(report.out_dir / "metrics.json", metrics.dump(2) + "\n");

  json manifest;
  manifest["config"] = cfg.to_json();
  manifest["resolved_epsilon"] = eps;
  manifest["n"] = in.n;
  manifest["marked_count"] = sel.marked.size();
  manifest["kept_count"] = sel.kept.size();
  manifest["embedded_count"] = emb.embedded.size();
  manifest["boundary_count"] = emb.boundary.size();
  manifest["marked_fraction"] =
      static_cast<double>(sel.marked.size()) / static_cast<double>(in.n);
  manifest["spectral"] = emb.spectral_info;
  if (cfg.method == "neumap" && emb.degenerate_boundary) {
    manifest["warnings"] = json::array(
        {"boundary set is empty: the Neumann operator degenerates to the Dirichlet block"});
  }
  atomic_write_text(report.out_dir / "manifest.json", manifest.dump(2) + "\n");

  report.metrics = std::move(metrics);
  report.manifest = std::move(manifest);
  report.selection = sel;
  report.coords = std::move(emb.coords);
  report.embedded = std::move(emb.embedded);
  return report;
}

inline RunReport run(const PipelineConfig& cfg) {
  cfg.validate();
  pipeline_detail::Ingested in = pipeline_detail::ingest(cfg);
  const LandmarkSelection sel = pipeline_detail::make_selection(cfg, in);
  return run_with_selection(cfg, sel);
}

/// Runs two configs on the identical landmark selection (computed once from
/// the shared scheme parameters and injected into both) and returns the
/// side-by-side metrics. Inputs, seeds and scheme parameters must agree.
inline json compare(const PipelineConfig& a, const PipelineConfig& b) {
  a.validate();
  b.validate();
  require(a.input == b.input && a.input_kind == b.input_kind, errc::mismatched_inputs,
          "configs reference different inputs");
  require(a.seed == b.seed, errc::mismatched_inputs, "configs use different seeds");
  require(a.scheme == b.scheme && a.fraction == b.fraction && a.stride == b.stride &&
              a.delta == b.delta && a.intervals == b.intervals,
          errc::mismatched_inputs, "configs select landmarks differently");
  require(a.output_dir != b.output_dir, errc::config_error,
          "configs share an output directory");

  pipeline_detail::Ingested in = pipeline_detail::ingest(a);
  const LandmarkSelection sel = pipeline_detail::make_selection(a, in);
  const RunReport ra = run_with_selection(a, sel);
  const RunReport rb = run_with_selection(b, sel);

  json out;
  out["input"] = a.input;
  out["seed"] = a.seed;
  out["scheme"] = sel.scheme;
  out["marked_count"] = sel.marked.size();
  out["a"] = {{"method", a.method}, {"output_dir", a.output_dir}, {"metrics", ra.metrics}};
  out["b"] = {{"method", b.method}, {"output_dir", b.output_dir}, {"metrics", rb.metrics}};
  return out;
}

}  // namespace neumaps
