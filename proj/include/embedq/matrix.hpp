#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "embedq/error.hpp"

namespace embedq {

/// Dense row-major matrix. Used for intermediate results (distance blocks,
/// rank tables, gap matrices) where no finiteness contract applies.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorKind::DimensionMismatch, "buffer size does not match rows*cols");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<const T> values() const noexcept { return data_; }
  std::span<T> values() noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// n x p sample matrix (row = sample). Every value is finite and the shape is
/// fixed once constructed; the only way to build one is through validation.
class DataMatrix {
 public:
  DataMatrix() = default;

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }

  double operator()(std::size_t r, std::size_t c) const noexcept { return values_(r, c); }
  std::span<const double> row(std::size_t r) const noexcept { return values_.row(r); }
  std::span<const double> values() const noexcept { return values_.values(); }
  const Matrix<double>& matrix() const noexcept { return values_; }

  bool operator==(const DataMatrix&) const = default;

  friend DataMatrix validate_matrix(Matrix<double> raw);

 private:
  explicit DataMatrix(Matrix<double> m) : values_(std::move(m)) {}
  Matrix<double> values_;
};

/// Checks shape and finiteness. Throws EmptyInput for a zero dimension and
/// NonFiniteError for the first NaN/Inf in row-major order.
inline DataMatrix validate_matrix(Matrix<double> raw) {
  if (raw.rows() == 0 || raw.cols() == 0)
    throw Error(ErrorKind::EmptyInput, "matrix has " + std::to_string(raw.rows()) + " rows and " +
                                           std::to_string(raw.cols()) + " columns");
  for (std::size_t r = 0; r < raw.rows(); ++r)
    for (std::size_t c = 0; c < raw.cols(); ++c)
      if (!std::isfinite(raw(r, c))) throw NonFiniteError(r, c);
  return DataMatrix(std::move(raw));
}

inline DataMatrix validate_matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (rows == 0 || cols == 0) return validate_matrix(Matrix<double>(rows, cols));
  return validate_matrix(Matrix<double>(rows, cols, std::move(values)));
}

inline DataMatrix validate_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t p = n == 0 ? 0 : rows.front().size();
  Matrix<double> m(n, p);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != p)
      throw Error(ErrorKind::DimensionMismatch, "ragged rows: row " + std::to_string(r) + " has " +
                                                    std::to_string(rows[r].size()) + " values, expected " +
                                                    std::to_string(p));
    for (std::size_t c = 0; c < p; ++c) m(r, c) = rows[r][c];
  }
  return validate_matrix(std::move(m));
}

/// Rows of `x` in the given order.
inline DataMatrix select_rows(const DataMatrix& x, std::span<const std::size_t> order) {
  Matrix<double> out(order.size(), x.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto src = x.row(order[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return validate_matrix(std::move(out));
}

/// Cluster id per sample, ids contiguous in 0..c-1 with no empty cluster.
class ClusterAssignment {
 public:
  ClusterAssignment() = default;

  /// Validates ids already in 0..clusters-1.
  ClusterAssignment(std::vector<std::uint32_t> labels, std::size_t clusters)
      : labels_(std::move(labels)), clusters_(clusters) {
    if (clusters_ == 0) throw Error(ErrorKind::InvalidAssignment, "cluster count must be >= 1");
    if (labels_.empty()) throw Error(ErrorKind::InvalidAssignment, "assignment is empty");
    std::vector<std::size_t> counts(clusters_, 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] >= clusters_)
        throw Error(ErrorKind::InvalidAssignment, "label " + std::to_string(labels_[i]) + " at sample " +
                                                      std::to_string(i) + " is outside 0.." +
                                                      std::to_string(clusters_ - 1));
      ++counts[labels_[i]];
    }
    for (std::size_t k = 0; k < clusters_; ++k)
      if (counts[k] == 0)
        throw Error(ErrorKind::InvalidAssignment, "cluster " + std::to_string(k) + " is empty");
  }

  /// Arbitrary integer labels, renumbered to 0..c-1 in ascending label order.
  static ClusterAssignment from_raw_labels(std::span<const std::int64_t> raw) {
    std::vector<std::int64_t> distinct(raw.begin(), raw.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::uint32_t> ids(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
      ids[i] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), raw[i]) - distinct.begin());
    return ClusterAssignment(std::move(ids), distinct.size());
  }

  static ClusterAssignment single(std::size_t n) {
    return ClusterAssignment(std::vector<std::uint32_t>(n, 0), 1);
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t clusters() const noexcept { return clusters_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return labels_[i]; }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }

  /// Sample indices grouped by cluster (counting sort; members ascending).
  std::vector<std::vector<std::size_t>> members() const {
    std::vector<std::size_t> counts(clusters_, 0);
    for (auto l : labels_) ++counts[l];
    std::vector<std::vector<std::size_t>> out(clusters_);
    for (std::size_t k = 0; k < clusters_; ++k) out[k].reserve(counts[k]);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
    return out;
  }

  bool operator==(const ClusterAssignment&) const = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t clusters_ = 0;
};

}  // namespace embedq
