#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "embedq/core.hpp"
#include "embedq/error.hpp"
#include "embedq/matrix.hpp"
#include "embedq/parallel.hpp"

namespace embedq {

// Rank-based neighbourhood preservation metrics.
//
// These use the usual literature definitions. With rho(i,j) the rank of j
// among the neighbours of i in the original space and r(i,j) the rank in the
// embedding:
//
//   trustworthiness T(k) = 1 - 2/(n k (2n - 3k - 1)) * sum_i sum_{j in U_k(i)} (rho(i,j) - k)
//   continuity      C(k) = 1 - 2/(n k (2n - 3k - 1)) * sum_i sum_{j in V_k(i)} (r(i,j) - k)
//   LCMC(k)             = 1/(n k) * sum_i |N_k(i) ∩ N'_k(i)| - k/(n - 1)
//
// where U_k(i) are the embedded k-neighbours of i that are not original
// k-neighbours and V_k(i) the reverse. Every metric here needs O(n^2) memory,
// so inputs above `max_samples` are rejected rather than subsampled.

inline constexpr std::size_t kDefaultRankCap = 15000;

/// n x n neighbour ranks: ranks(i, j) in 1..n-1 for j != i, diagonal 0. Ties in
/// distance go to the smaller index.
struct RankMatrix {
  Matrix<std::uint32_t> ranks;
};

/// (n-1) x (n-1) counts: counts(k, l) = #{(i, j) : rho(i,j) = k+1, r(i,j) = l+1}.
struct CoRankingMatrix {
  Matrix<std::uint32_t> counts;
  std::size_t samples = 0;
};

namespace detail {

inline void check_rank_size(std::size_t n, std::size_t max_samples) {
  if (n > max_samples)
    throw Error(ErrorKind::TooLargeForRankMetrics,
                std::to_string(n) + " samples exceed the rank-metric cap of " + std::to_string(max_samples) +
                    " (these metrics need O(n^2) memory)");
  if (n < 2) throw Error(ErrorKind::TooFewSamples, "rank metrics need at least 2 samples");
}

// Fills out[j] with the rank of j around sample i; uses `order` as scratch.
inline void rank_row(const DataMatrix& x, std::size_t i, std::span<std::uint32_t> out,
                     std::vector<std::size_t>& order, std::vector<double>& dist) {
  const std::size_t n = x.rows();
  for (std::size_t j = 0; j < n; ++j) dist[j] = squared_distance(x.row(i), x.row(j));
  order.resize(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  });
  out[i] = 0;
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = static_cast<std::uint32_t>(r + 1);
}

inline void check_neighborhood(std::size_t n, std::size_t k, bool half) {
  const bool ok = half ? (k >= 1 && 2 * k < n) : (k >= 1 && k + 1 <= n);
  if (!ok)
    throw Error(ErrorKind::InvalidNeighborhoodSize,
                "k=" + std::to_string(k) + " is invalid for n=" + std::to_string(n) +
                    (half ? " (need 1 <= k < n/2)" : " (need 1 <= k <= n-1)"));
}

inline double intrusion_normalizer(std::size_t n, std::size_t k) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return 2.0 / (nd * kd * (2.0 * nd - 3.0 * kd - 1.0));
}

inline void check_same_rows(const DataMatrix& x, const DataMatrix& xp) {
  if (x.rows() != xp.rows())
    throw Error(ErrorKind::RowCountMismatch, "original has " + std::to_string(x.rows()) +
                                                 " rows, embedding has " + std::to_string(xp.rows()));
}

}  // namespace detail

inline RankMatrix rank_matrix(const DataMatrix& x, std::size_t max_samples = kDefaultRankCap) {
  const std::size_t n = x.rows();
  detail::check_rank_size(n, max_samples);
  Matrix<std::uint32_t> ranks(n, n, 0);
  parallel_for(
      0, n,
      [&](std::size_t i) {
        thread_local std::vector<std::size_t> order;
        thread_local std::vector<double> dist;
        dist.resize(n);
        detail::rank_row(x, i, ranks.row(i), order, dist);
      },
      16);
  return {std::move(ranks)};
}

/// Builds the co-ranking matrix row block by row block, so only the (n-1)^2
/// count table is ever held in full.
inline CoRankingMatrix coranking(const DataMatrix& x, const DataMatrix& xp,
                                 std::size_t max_samples = kDefaultRankCap) {
  detail::check_same_rows(x, xp);
  const std::size_t n = x.rows();
  detail::check_rank_size(n, max_samples);

  Matrix<std::uint32_t> counts(n - 1, n - 1, 0);
  const std::size_t block = std::min<std::size_t>(n, 256);
  Matrix<std::uint32_t> orig(block, n), emb(block, n);
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t stop = std::min(n, start + block);
    parallel_for(
        start, stop,
        [&](std::size_t i) {
          thread_local std::vector<std::size_t> order;
          thread_local std::vector<double> dist;
          dist.resize(n);
          detail::rank_row(x, i, orig.row(i - start), order, dist);
          detail::rank_row(xp, i, emb.row(i - start), order, dist);
        },
        8);
    for (std::size_t i = start; i < stop; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) ++counts(orig(i - start, j) - 1, emb(i - start, j) - 1);
  }
  return {std::move(counts), n};
}

inline double trustworthiness(const CoRankingMatrix& q, std::size_t k) {
  const std::size_t n = q.samples;
  detail::check_neighborhood(n, k, true);
  std::uint64_t penalty = 0;
  for (std::size_t rho = k; rho < n - 1; ++rho)
    for (std::size_t r = 0; r < k; ++r) penalty += static_cast<std::uint64_t>(rho + 1 - k) * q.counts(rho, r);
  return 1.0 - detail::intrusion_normalizer(n, k) * static_cast<double>(penalty);
}

inline double continuity(const CoRankingMatrix& q, std::size_t k) {
  const std::size_t n = q.samples;
  detail::check_neighborhood(n, k, true);
  std::uint64_t penalty = 0;
  for (std::size_t rho = 0; rho < k; ++rho)
    for (std::size_t r = k; r < n - 1; ++r) penalty += static_cast<std::uint64_t>(r + 1 - k) * q.counts(rho, r);
  return 1.0 - detail::intrusion_normalizer(n, k) * static_cast<double>(penalty);
}

inline double lcmc(const CoRankingMatrix& q, std::size_t k) {
  const std::size_t n = q.samples;
  detail::check_neighborhood(n, k, false);
  std::uint64_t overlap = 0;
  for (std::size_t rho = 0; rho < k; ++rho)
    for (std::size_t r = 0; r < k; ++r) overlap += q.counts(rho, r);
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return static_cast<double>(overlap) / (nd * kd) - kd / (nd - 1.0);
}

inline double trustworthiness(const DataMatrix& x, const DataMatrix& xp, std::size_t k,
                              std::size_t max_samples = kDefaultRankCap) {
  detail::check_same_rows(x, xp);
  detail::check_rank_size(x.rows(), max_samples);
  detail::check_neighborhood(x.rows(), k, true);
  return trustworthiness(coranking(x, xp, max_samples), k);
}

inline double continuity(const DataMatrix& x, const DataMatrix& xp, std::size_t k,
                         std::size_t max_samples = kDefaultRankCap) {
  detail::check_same_rows(x, xp);
  detail::check_rank_size(x.rows(), max_samples);
  detail::check_neighborhood(x.rows(), k, true);
  return continuity(coranking(x, xp, max_samples), k);
}

inline double lcmc(const DataMatrix& x, const DataMatrix& xp, std::size_t k,
                   std::size_t max_samples = kDefaultRankCap) {
  detail::check_same_rows(x, xp);
  detail::check_rank_size(x.rows(), max_samples);
  detail::check_neighborhood(x.rows(), k, false);
  return lcmc(coranking(x, xp, max_samples), k);
}

// Direct computations from the two rank matrices, bypassing the co-ranking
// table. Kept as an independent route for cross-checking.

inline double trustworthiness_from_ranks(const RankMatrix& orig, const RankMatrix& emb, std::size_t k) {
  const std::size_t n = orig.ranks.rows();
  detail::check_neighborhood(n, k, true);
  std::uint64_t penalty = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && emb.ranks(i, j) <= k && orig.ranks(i, j) > k) penalty += orig.ranks(i, j) - k;
  return 1.0 - detail::intrusion_normalizer(n, k) * static_cast<double>(penalty);
}

inline double continuity_from_ranks(const RankMatrix& orig, const RankMatrix& emb, std::size_t k) {
  return trustworthiness_from_ranks(emb, orig, k);
}

inline double lcmc_from_ranks(const RankMatrix& orig, const RankMatrix& emb, std::size_t k) {
  const std::size_t n = orig.ranks.rows();
  detail::check_neighborhood(n, k, false);
  std::uint64_t overlap = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && emb.ranks(i, j) <= k && orig.ranks(i, j) <= k) ++overlap;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return static_cast<double>(overlap) / (nd * kd) - kd / (nd - 1.0);
}

/// Default neighbourhood size for comparisons: max(1, floor(n/100)).
inline std::size_t default_neighborhood(std::size_t n) { return std::max<std::size_t>(1, n / 100); }

}  // namespace embedq
