#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "embedq/error.hpp"
#include "embedq/matrix.hpp"
#include "embedq/parallel.hpp"

namespace embedq {

/// Squared Euclidean distance by direct subtraction, summed in index order.
inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

inline double distance(std::span<const double> a, std::span<const double> b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

namespace detail {

// Median of `values` (reordered in place). Even counts average the two middle
// order statistics.
inline double median_inplace(std::span<double> values) {
  const std::size_t m = values.size();
  const std::size_t mid = m / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (m % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return (lower + upper) / 2.0;
}

}  // namespace detail

/// Coordinate-wise median of the selected rows of `x`.
inline std::vector<double> coordinatewise_median(const DataMatrix& x,
                                                 std::span<const std::size_t> rows) {
  if (rows.empty()) throw Error(ErrorKind::EmptySubset, "median of an empty subset");
  std::vector<double> out(x.cols());
  std::vector<double> column(rows.size());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t t = 0; t < rows.size(); ++t) column[t] = x(rows[t], j);
    out[j] = detail::median_inplace(column);
  }
  return out;
}

/// Coordinate-wise median over every row of `x`.
inline std::vector<double> coordinatewise_median(const DataMatrix& x) {
  std::vector<double> out(x.cols());
  std::vector<double> column(x.rows());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < x.rows(); ++i) column[i] = x(i, j);
    out[j] = detail::median_inplace(column);
  }
  return out;
}

/// Per-cluster medians and radii of one space.
///
/// `medians` has clusters+1 rows: row k is the median of cluster k and the
/// last row is the median of the whole data. `radii[k]` is the largest
/// distance from a member of cluster k to its median, or 1 when that largest
/// distance is 0 (singletons, coincident members).
struct ClusterSummary {
  DataMatrix medians;
  std::vector<double> radii;

  std::size_t clusters() const noexcept { return radii.size(); }
  std::size_t dim() const noexcept { return medians.cols(); }
  std::span<const double> cluster_median(std::size_t k) const noexcept { return medians.row(k); }
  std::span<const double> global_median() const noexcept { return medians.row(radii.size()); }
};

inline void check_assignment(const DataMatrix& x, const ClusterAssignment& a) {
  if (a.size() != x.rows())
    throw Error(ErrorKind::RowCountMismatch, "assignment has " + std::to_string(a.size()) +
                                                 " labels for " + std::to_string(x.rows()) + " rows");
}

inline ClusterSummary cluster_summary(const DataMatrix& x, const ClusterAssignment& a) {
  check_assignment(x, a);
  const std::size_t c = a.clusters();
  const std::size_t dim = x.cols();
  const auto members = a.members();

  Matrix<double> medians(c + 1, dim);
  std::vector<double> radii(c, 1.0);
  parallel_for(
      0, c,
      [&](std::size_t k) {
        const auto mu = coordinatewise_median(x, members[k]);
        std::copy(mu.begin(), mu.end(), medians.row(k).begin());
        double widest = 0.0;
        for (auto i : members[k]) widest = std::max(widest, distance(x.row(i), mu));
        radii[k] = widest > 0.0 ? widest : 1.0;
      },
      1);
  const auto global = coordinatewise_median(x);
  std::copy(global.begin(), global.end(), medians.row(c).begin());
  return ClusterSummary{validate_matrix(std::move(medians)), std::move(radii)};
}

/// Squared distance from every row of `x` to every row of `targets`
/// (n x t result).
inline Matrix<double> pairwise_sq_dist_to_rows(const DataMatrix& x, const DataMatrix& targets) {
  if (x.cols() != targets.cols())
    throw Error(ErrorKind::DimensionMismatch, "rows have " + std::to_string(x.cols()) +
                                                  " columns, targets have " +
                                                  std::to_string(targets.cols()));
  Matrix<double> out(x.rows(), targets.rows());
  parallel_for(0, x.rows(), [&](std::size_t i) {
    for (std::size_t t = 0; t < targets.rows(); ++t)
      out(i, t) = squared_distance(x.row(i), targets.row(t));
  });
  return out;
}

}  // namespace embedq
