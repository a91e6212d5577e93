#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "neumaps/errors.hpp"
#include "neumaps/eigensolver.hpp"

namespace neumaps {

namespace detail {

inline double parse_double(std::string_view token, std::size_t line_no) {
  // Trim spaces and an optional trailing CR.
  std::size_t b = 0, e = token.size();
  while (b < e && (token[b] == ' ' || token[b] == '\t')) ++b;
  while (e > b && (token[e - 1] == ' ' || token[e - 1] == '\t' || token[e - 1] == '\r')) --e;
  double value = 0.0;
  const auto res = std::from_chars(token.data() + b, token.data() + e, value);
  require(res.ec == std::errc() && res.ptr == token.data() + e, errc::io_error,
          "bad number '" + std::string(token.substr(b, e - b)) + "' on line " +
              std::to_string(line_no));
  return value;
}

}  // namespace detail

/// Dense CSV of doubles: comma-separated values, one row per line, no header.
/// Every row must have the same number of columns.
inline Matrix load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const std::string_view token(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
      row.push_back(detail::parse_double(token, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty()) {
      require(row.size() == rows.front().size(), errc::io_error,
              "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                  " columns, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), errc::io_error, path.string() + " is empty");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

/// Writes text atomically: temp file in the same directory, then rename.
inline void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), errc::io_error, "cannot write " + tmp.string());
    out << text;
    out.flush();
    require(out.good(), errc::io_error, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// CSV with 17 significant digits per value (round-trip exact for doubles).
inline std::string matrix_to_csv(const Matrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 12);
  char buf[40];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out += buf;
      out += (j + 1 < m.cols()) ? ',' : '\n';
    }
  }
  return out;
}

inline void save_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  atomic_write_text(path, matrix_to_csv(m));
}

/// A raw numeric table split into features plus optional integer labels and
/// a collective-variable column. label_col / cv_col are 0-based column
/// indices into the raw table, -1 when absent; the named columns are removed
/// from the feature block.
struct ColumnSplit {
  Matrix features;
  std::vector<int> labels;
  Vector cv;
  bool has_labels = false;
  bool has_cv = false;
};

inline ColumnSplit split_columns(const Matrix& raw, int label_col, int cv_col) {
  const Index cols = raw.cols();
  auto check_col = [&](int c, const char* what) {
    require(c >= -1 && c < cols, errc::config_error,
            std::string(what) + " column " + std::to_string(c) + " outside 0.." +
                std::to_string(cols - 1));
  };
  check_col(label_col, "label");
  check_col(cv_col, "cv");
  require(label_col == -1 || cv_col == -1 || label_col != cv_col, errc::config_error,
          "label and cv columns coincide");

  ColumnSplit out;
  std::vector<Index> feature_cols;
  for (Index c = 0; c < cols; ++c) {
    if (c == label_col || c == cv_col) continue;
    feature_cols.push_back(c);
  }
  require(!feature_cols.empty(), errc::config_error, "no feature columns left");
  out.features.resize(raw.rows(), static_cast<Index>(feature_cols.size()));
  for (Index j = 0; j < static_cast<Index>(feature_cols.size()); ++j) {
    out.features.col(j) = raw.col(feature_cols[static_cast<std::size_t>(j)]);
  }
  if (label_col >= 0) {
    out.has_labels = true;
    out.labels.resize(static_cast<std::size_t>(raw.rows()));
    for (Index i = 0; i < raw.rows(); ++i) {
      const double v = raw(i, label_col);
      const double r = std::nearbyint(v);
      require(std::abs(v - r) < 1e-9, errc::io_error,
              "label column holds non-integer value " + std::to_string(v));
      out.labels[static_cast<std::size_t>(i)] = static_cast<int>(r);
    }
  }
  if (cv_col >= 0) {
    out.has_cv = true;
    out.cv = raw.col(cv_col);
  }
  return out;
}

}  // namespace neumaps
