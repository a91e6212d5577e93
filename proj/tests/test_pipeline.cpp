#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "neumaps/csv.hpp"
#include "neumaps/pipeline.hpp"
#include "neumaps/synthetic.hpp"

using namespace neumaps;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("neumaps_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Small three-arc dataset written as CSV; cv column is the last one.
fs::path write_synthetic(const fs::path& dir, Index n, std::uint64_t seed) {
  SyntheticConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.ambient_dim = 4;
  cfg.noise = 0.01;
  const SyntheticData data = make_three_arc_circle(cfg);
  Matrix table(n, cfg.ambient_dim + 1);
  table.leftCols(cfg.ambient_dim) = data.features;
  table.col(cfg.ambient_dim) = data.theta;
  const fs::path p = dir / "points.csv";
  save_matrix_csv(p, table);
  return p;
}

}  // namespace

TEST_CASE("csv round trip and column split") {
  TempDir tmp("csv");
  Matrix m(3, 4);
  m << 1, 2.5, -3, 0, 4, 5, 6, 1, 7, 8e-30, 9.25, 2;
  save_matrix_csv(tmp.path / "m.csv", m);
  const Matrix back = load_matrix_csv(tmp.path / "m.csv");
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);  // 17 digits round-trip

  const ColumnSplit split = split_columns(m, 3, 1);
  CHECK(split.features.cols() == 2);
  CHECK(split.has_labels);
  CHECK(split.labels == std::vector<int>{0, 1, 2});
  CHECK(split.has_cv);
  CHECK(split.cv(2) == 8e-30);

  CHECK_THROWS_AS(split_columns(m, 4, -1), Error);   // out of range
  CHECK_THROWS_AS(split_columns(m, 2, 2), Error);    // label == cv
  CHECK_THROWS_AS(load_matrix_csv(tmp.path / "nope.csv"), Error);

  std::ofstream ragged(tmp.path / "ragged.csv");
  ragged << "1,2\n3\n";
  ragged.close();
  CHECK_THROWS_AS(load_matrix_csv(tmp.path / "ragged.csv"), Error);
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  json j;
  j["input"] = "x.csv";
  j["method"] = "neumap";
  CHECK_NOTHROW(PipelineConfig::from_json(j));

  j["mystery"] = 1;
  try {
    PipelineConfig::from_json(j);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == errc::config_error);
  }
  j.erase("mystery");

  j["method"] = "tsne";
  CHECK_THROWS_AS(PipelineConfig::from_json(j), Error);
  j["method"] = "neumap";

  j["intervals"] = json::array({json::array({1.0})});
  CHECK_THROWS_AS(PipelineConfig::from_json(j), Error);
}

TEST_CASE("run: neumap artifacts, boundary file and determinism") {
  TempDir tmp("run");
  const fs::path data = write_synthetic(tmp.path, 90, 11);

  PipelineConfig cfg;
  cfg.input = data.string();
  cfg.cv_col = 4;
  cfg.scheme = "random";
  cfg.fraction = 0.2;
  cfg.seed = 5;
  cfg.method = "neumap";
  cfg.t = 1.0;
  cfg.d = 2;
  cfg.output_dir = (tmp.path / "out_a").string();

  const RunReport report = run(cfg);
  CHECK(fs::exists(report.out_dir / "embedding.csv"));
  CHECK(fs::exists(report.out_dir / "boundary_extension.csv"));
  CHECK(fs::exists(report.out_dir / "metrics.json"));
  CHECK(fs::exists(report.out_dir / "selection.json"));
  CHECK(fs::exists(report.out_dir / "manifest.json"));

  const Matrix emb = load_matrix_csv(report.out_dir / "embedding.csv");
  CHECK(emb.rows() == 90 - 18);
  CHECK(emb.cols() == 2);
  const Matrix ext = load_matrix_csv(report.out_dir / "boundary_extension.csv");
  CHECK(ext.cols() == 2);
  CHECK(ext.rows() == static_cast<Index>(report.manifest["boundary_count"].get<std::size_t>()));
  CHECK(report.metrics.contains("slope"));
  CHECK(report.metrics.contains("stderr"));

  SECTION("byte-identical on rerun") {
    cfg.output_dir = (tmp.path / "out_b").string();
    const RunReport again = run(cfg);
    CHECK(slurp(report.out_dir / "metrics.json") == slurp(again.out_dir / "metrics.json"));
    CHECK(slurp(report.out_dir / "embedding.csv") == slurp(again.out_dir / "embedding.csv"));
    CHECK(slurp(report.out_dir / "selection.json") ==
          slurp(again.out_dir / "selection.json"));
  }

  SECTION("dmap on the same input embeds everything, no boundary file") {
    cfg.method = "dmap";
    cfg.output_dir = (tmp.path / "out_dmap").string();
    const RunReport dm = run(cfg);
    CHECK_FALSE(fs::exists(dm.out_dir / "boundary_extension.csv"));
    CHECK(load_matrix_csv(dm.out_dir / "embedding.csv").rows() == 90);
  }

  SECTION("dmap restricted to kept points") {
    cfg.method = "dmap";
    cfg.dmap_scope = "kept";
    cfg.output_dir = (tmp.path / "out_dmap_kept").string();
    const RunReport dm = run(cfg);
    CHECK(load_matrix_csv(dm.out_dir / "embedding.csv").rows() == 90 - 18);
  }

  SECTION("roseland embeds the kept points with the marked set as landmarks") {
    cfg.method = "roseland";
    cfg.output_dir = (tmp.path / "out_rose").string();
    const RunReport rr = run(cfg);
    CHECK(load_matrix_csv(rr.out_dir / "embedding.csv").rows() == 90 - 18);
    CHECK_FALSE(fs::exists(rr.out_dir / "boundary_extension.csv"));
  }
}

TEST_CASE("run: boundary rows satisfy the Neumann condition against the embedding") {
  TempDir tmp("resid");
  const fs::path data = write_synthetic(tmp.path, 80, 13);
  PipelineConfig cfg;
  cfg.input = data.string();
  cfg.cv_col = 4;
  cfg.scheme = "every_kth";
  cfg.stride = 5;
  cfg.method = "neumap";
  cfg.basis = "right";
  cfg.output_dir = (tmp.path / "out").string();
  const RunReport report = run(cfg);

  // Recheck from the written artifacts alone.
  const Matrix emb = load_matrix_csv(report.out_dir / "embedding.csv");
  const Matrix ext = load_matrix_csv(report.out_dir / "boundary_extension.csv");
  const Matrix raw = load_matrix_csv(data);
  const ColumnSplit cols = split_columns(raw, -1, 4);
  const double eps = report.manifest["resolved_epsilon"].get<double>();
  const WeightedGraph g = gaussian_affinity(cols.features, eps, cfg.zero_diagonal);
  const SubgraphPartition p = partition(g, report.selection.kept);
  REQUIRE(static_cast<Index>(p.boundary.size()) == ext.rows());
  const Matrix rhs = p.boundary_op * emb;
  const Matrix lhs = p.boundary_degrees.asDiagonal() * ext;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
}

TEST_CASE("run: error reporting") {
  PipelineConfig cfg;
  cfg.input = "/definitely/not/here.csv";
  try {
    run(cfg);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == errc::io_error);
    CHECK(std::string(e.what()).find("/definitely/not/here.csv") != std::string::npos);
  }
}

TEST_CASE("compare injects one selection into both runs") {
  TempDir tmp("cmp");
  const fs::path data = write_synthetic(tmp.path, 70, 17);

  PipelineConfig a;
  a.input = data.string();
  a.cv_col = 4;
  a.scheme = "random";
  a.fraction = 0.25;
  a.seed = 21;
  a.method = "neumap";
  a.output_dir = (tmp.path / "a").string();
  PipelineConfig b = a;
  b.method = "roseland";
  b.output_dir = (tmp.path / "b").string();

  const json rep = compare(a, b);
  CHECK(rep["a"]["metrics"].contains("slope"));
  CHECK(rep["b"]["metrics"].contains("slope"));

  const json sel_a = json::parse(slurp(fs::path(a.output_dir) / "selection.json"));
  const json sel_b = json::parse(slurp(fs::path(b.output_dir) / "selection.json"));
  CHECK(sel_a["marked"] == sel_b["marked"]);

  SECTION("identical configs give bit-identical metrics") {
    PipelineConfig c = a;
    c.output_dir = (tmp.path / "c").string();
    const json rep2 = compare(a, c);
    CHECK(rep2["a"]["metrics"].dump() == rep2["b"]["metrics"].dump());
  }

  SECTION("mismatched inputs are rejected") {
    PipelineConfig c = b;
    c.seed = 99;
    try {
      compare(a, c);
      FAIL("expected MismatchedInputs");
    } catch (const Error& e) {
      CHECK(e.code() == errc::mismatched_inputs);
    }
  }
}

TEST_CASE("synthetic generator: shape, range and determinism") {
  SyntheticConfig cfg;
  cfg.n = 500;
  cfg.seed = 3;
  cfg.ambient_dim = 6;
  const SyntheticData d1 = make_three_arc_circle(cfg);
  const SyntheticData d2 = make_three_arc_circle(cfg);
  CHECK(d1.features.rows() == 500);
  CHECK(d1.features.cols() == 6);
  CHECK((d1.features - d2.features).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d1.theta.minCoeff() >= cfg.margin);
  CHECK(d1.theta.maxCoeff() <= 2.0 * std::numbers::pi - cfg.margin);
  // Points sit near the unit sphere in the rotated plane.
  for (Index i = 0; i < 20; ++i) {
    CHECK(d1.features.row(i).norm() == Catch::Approx(1.0).margin(0.1));
  }
}

TEST_CASE("affinity-matrix input drives neumap directly") {
  TempDir tmp("aff");
  Matrix w = Matrix::Zero(6, 6);
  for (Index i = 0; i < 5; ++i) {
    w(i, i + 1) = 1.0;
    w(i + 1, i) = 1.0;
  }
  save_matrix_csv(tmp.path / "w.csv", w);
  PipelineConfig cfg;
  cfg.input = (tmp.path / "w.csv").string();
  cfg.input_kind = "affinity";
  cfg.scheme = "every_kth";
  cfg.stride = 3;
  cfg.method = "neumap";
  cfg.d = 1;
  cfg.output_dir = (tmp.path / "out").string();
  const RunReport report = run(cfg);
  CHECK(load_matrix_csv(report.out_dir / "embedding.csv").rows() == 4);
}
