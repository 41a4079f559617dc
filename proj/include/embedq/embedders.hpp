#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "embedq/error.hpp"
#include "embedq/matrix.hpp"
#include "embedq/parallel.hpp"
#include "embedq/random.hpp"

namespace embedq {

// Small embedding producers used as fixtures: PCA, random orthonormal
// projection, and destructive baselines (row shuffle, additive noise).

/// x -> (x - mean) * components^T, with orthonormal component rows.
struct LinearEmbedder {
  std::vector<double> mean;
  Matrix<double> components;  // q x p

  std::size_t input_dim() const noexcept { return components.cols(); }
  std::size_t output_dim() const noexcept { return components.rows(); }
};

struct SvdOptions {
  double tolerance = 1e-10;
  std::size_t max_sweeps = 100;
};

/// Thin SVD result of an n x p matrix: singular values (descending) and the
/// matching right singular vectors as rows of `right` (p x p).
struct RightSvd {
  std::vector<double> singular_values;
  Matrix<double> right;
};

/// One-sided (Hestenes) Jacobi SVD. Column pairs are rotated until every pair
/// is orthogonal to within `tolerance` relative to the column norms.
inline RightSvd jacobi_svd(const Matrix<double>& a, const SvdOptions& opts = {}) {
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  // Column-major working copy.
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) cols[j][i] = a(i, j);
  std::vector<std::vector<double>> v(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) v[j][j] = 1.0;

  double frob = 0.0;
  for (double x : a.values()) frob += x * x;
  const double negligible = frob * std::pow(64.0 * std::numeric_limits<double>::epsilon(), 2);

  bool converged = false;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i + 1 < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          alpha += cols[i][r] * cols[i][r];
          beta += cols[j][r] * cols[j][r];
          gamma += cols[i][r] * cols[j][r];
        }
        if (gamma == 0.0 || std::abs(gamma) <= opts.tolerance * std::sqrt(alpha * beta)) continue;
        // Columns at rounding level carry no direction worth orthogonalising.
        if (std::min(alpha, beta) <= negligible) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < n; ++r) {
          const double ai = cols[i][r];
          const double aj = cols[j][r];
          cols[i][r] = c * ai - s * aj;
          cols[j][r] = s * ai + c * aj;
        }
        for (std::size_t r = 0; r < p; ++r) {
          const double vi = v[i][r];
          const double vj = v[j][r];
          v[i][r] = c * vi - s * vj;
          v[j][r] = s * vi + c * vj;
        }
      }
  }
  if (!converged)
    throw Error(ErrorKind::SvdNonConvergence,
                "Jacobi SVD did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");

  std::vector<double> sigma(p);
  for (std::size_t j = 0; j < p; ++j) {
    double acc = 0.0;
    for (double x : cols[j]) acc += x * x;
    sigma[j] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return sigma[l] > sigma[r]; });

  RightSvd out{std::vector<double>(p), Matrix<double>(p, p)};
  for (std::size_t t = 0; t < p; ++t) {
    out.singular_values[t] = sigma[order[t]];
    for (std::size_t r = 0; r < p; ++r) out.right(t, r) = v[order[t]][r];
  }
  return out;
}

inline std::vector<double> column_means(const DataMatrix& x) {
  std::vector<double> mean(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) mean[j] += x(i, j);
  for (auto& m : mean) m /= static_cast<double>(x.rows());
  return mean;
}

namespace detail {

// Flip each row so its largest-magnitude entry (first on ties) is positive.
inline void canonical_signs(Matrix<double>& rows) {
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto row = rows.row(r);
    std::size_t arg = 0;
    for (std::size_t j = 1; j < row.size(); ++j)
      if (std::abs(row[j]) > std::abs(row[arg])) arg = j;
    if (row[arg] < 0.0)
      for (auto& v : row) v = -v;
  }
}

}  // namespace detail

/// Top-q principal axes of the mean-centred data.
inline LinearEmbedder fit_pca(const DataMatrix& x, std::size_t q, const SvdOptions& opts = {}) {
  if (q < 1 || q > std::min(x.rows(), x.cols()))
    throw Error(ErrorKind::InvalidTargetDim, "target dimension " + std::to_string(q) + " outside 1.." +
                                                 std::to_string(std::min(x.rows(), x.cols())));
  auto mean = column_means(x);
  Matrix<double> centred(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) centred(i, j) = x(i, j) - mean[j];
  const auto svd = jacobi_svd(centred, opts);
  Matrix<double> components(q, x.cols());
  for (std::size_t t = 0; t < q; ++t)
    for (std::size_t j = 0; j < x.cols(); ++j) components(t, j) = svd.right(t, j);
  detail::canonical_signs(components);
  return {std::move(mean), std::move(components)};
}

/// Random orthonormal projection to q dimensions (Gaussian rows,
/// Gram-Schmidt). Centres on the data mean.
inline LinearEmbedder fit_random_projection(const DataMatrix& x, std::size_t q, std::uint64_t seed) {
  const std::size_t p = x.cols();
  if (q < 1 || q > p)
    throw Error(ErrorKind::InvalidTargetDim, "target dimension " + std::to_string(q) + " outside 1.." + std::to_string(p));
  Rng rng(seed, 4);
  Matrix<double> comp(q, p);
  for (std::size_t r = 0; r < q; ++r) {
    for (;;) {
      auto row = comp.row(r);
      for (auto& v : row) v = rng.normal();
      for (std::size_t prev = 0; prev < r; ++prev) {
        const auto other = comp.row(prev);
        double dot = 0.0;
        for (std::size_t j = 0; j < p; ++j) dot += row[j] * other[j];
        for (std::size_t j = 0; j < p; ++j) row[j] -= dot * other[j];
      }
      double norm = 0.0;
      for (double v : row) norm += v * v;
      norm = std::sqrt(norm);
      if (norm < 1e-8) continue;
      for (auto& v : row) v /= norm;
      break;
    }
  }
  return {column_means(x), std::move(comp)};
}

inline DataMatrix transform(const LinearEmbedder& e, const DataMatrix& x) {
  if (x.cols() != e.input_dim())
    throw Error(ErrorKind::DimensionMismatch, "embedder expects " + std::to_string(e.input_dim()) +
                                                  " columns, data has " + std::to_string(x.cols()));
  const std::size_t q = e.output_dim();
  Matrix<double> out(x.rows(), q);
  parallel_for(0, x.rows(), [&](std::size_t i) {
    for (std::size_t t = 0; t < q; ++t) {
      double acc = 0.0;
      for (std::size_t j = 0; j < x.cols(); ++j) acc += (x(i, j) - e.mean[j]) * e.components(t, j);
      out(i, t) = acc;
    }
  });
  return validate_matrix(std::move(out));
}

/// Uniform random permutation of 0..n-1 (Fisher-Yates).
inline std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 5);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

/// Rows of x in a seeded random order: same point cloud, broken
/// correspondence with the original samples.
inline DataMatrix shuffle_embedding(const DataMatrix& x, std::uint64_t seed) {
  if (x.rows() < 2) throw Error(ErrorKind::InvalidCount, "shuffling needs at least 2 rows");
  const auto perm = random_permutation(x.rows(), seed);
  return select_rows(x, perm);
}

/// x plus isotropic Gaussian noise of standard deviation `sigma`.
inline DataMatrix jitter_embedding(const DataMatrix& x, double sigma, std::uint64_t seed) {
  Rng rng(seed, 6);
  Matrix<double> out = x.matrix();
  for (auto& v : out.values()) v += sigma * rng.normal();
  return validate_matrix(std::move(out));
}

}  // namespace embedq
