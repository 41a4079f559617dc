#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "embedq/datagen.hpp"
#include "embedq/error.hpp"
#include "embedq/matrix.hpp"

namespace embedq {

// Point-cloud CSV: UTF-8, a header line, comma separated, numeric cells parsed
// as doubles. One optional column (selected by header name) holds integer
// class labels; every other column is a feature.

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) return std::nullopt;
  return v;
}

inline std::optional<std::int64_t> parse_int(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) return std::nullopt;
  return v;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Parses a point cloud from a stream. With `label_column` set the column must
/// exist; without it every column is a feature and all samples share label 0.
inline LabeledDataset read_point_cloud(std::istream& in, const std::optional<std::string>& label_column,
                                       std::string name = "stream") {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header line");
  ++line_no;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = detail::split_commas(line);

  std::optional<std::size_t> label_idx;
  std::vector<std::string> features;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].empty()) throw ParseError(line_no, "empty column name at position " + std::to_string(c + 1));
    if (label_column && header[c] == *label_column)
      label_idx = c;
    else
      features.emplace_back(header[c]);
  }
  if (label_column && !label_idx)
    throw Error(ErrorKind::MissingLabelColumn, "no column named '" + *label_column + "' in " + name);
  if (features.empty()) throw Error(ErrorKind::EmptyInput, "no feature columns in " + name);

  std::vector<double> values;
  std::vector<std::int64_t> raw_labels;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    if (cells.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                    std::to_string(cells.size()));
    std::size_t feature = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_idx && c == *label_idx) {
        const auto v = detail::parse_int(cells[c]);
        if (!v) throw ParseError(line_no, "label '" + std::string(cells[c]) + "' is not an integer");
        raw_labels.push_back(*v);
        continue;
      }
      const auto v = detail::parse_double(cells[c]);
      if (!v) throw ParseError(line_no, "cell '" + std::string(cells[c]) + "' in column '" + features[feature] +
                                            "' is not a number");
      if (!std::isfinite(*v)) throw NonFiniteError(rows, feature);
      values.push_back(*v);
      ++feature;
    }
    ++rows;
  }

  auto x = validate_matrix(rows, features.size(), std::move(values));
  LabeledDataset out{std::move(x), ClusterAssignment::single(rows), std::move(name), std::move(features),
                     label_idx.has_value()};
  if (label_idx) out.labels = ClusterAssignment::from_raw_labels(raw_labels);
  return out;
}

inline LabeledDataset load_point_cloud(const std::string& path, const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  return read_point_cloud(in, label_column, path);
}

/// True when the header line of `path` names `column`.
inline bool has_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) return false;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  for (auto name : detail::split_commas(line))
    if (name == column) return true;
  return false;
}

/// Writes features (named from `names`, or x0..x{p-1}) and, when given, a
/// trailing "label" column. Values use 17 significant digits.
inline void write_point_cloud(std::ostream& out, const DataMatrix& x, const ClusterAssignment* labels = nullptr,
                              const std::vector<std::string>& names = {}) {
  for (std::size_t j = 0; j < x.cols(); ++j) {
    if (j) out << ',';
    out << (j < names.size() ? names[j] : "x" + std::to_string(j));
  }
  if (labels) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (j) out << ',';
      out << detail::format_double(x(i, j));
    }
    if (labels) out << ',' << (*labels)[i];
    out << '\n';
  }
}

inline void save_point_cloud(const std::string& path, const DataMatrix& x, const ClusterAssignment* labels = nullptr,
                             const std::vector<std::string>& names = {}) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  write_point_cloud(out, x, labels, names);
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace embedq
