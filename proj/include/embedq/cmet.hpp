#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "embedq/clustering.hpp"
#include "embedq/core.hpp"
#include "embedq/error.hpp"
#include "embedq/matrix.hpp"

namespace embedq {

// Cluster-guided shape preservation scores.
//
// Both spaces share one cluster assignment. The local score compares, per
// sample, the distance to its cluster median divided by that cluster's radius;
// the global score compares the max-normalized distance matrices among the
// cluster medians and the whole-data median. Both lie in [0, 1] with 1 meaning
// perfect preservation.

enum class Mode { Supervised, Unsupervised };

constexpr std::string_view to_string(Mode m) noexcept {
  return m == Mode::Supervised ? "supervised" : "unsupervised";
}

/// Gap matrix over the c cluster medians plus the global median (last
/// row/column), divided by its largest entry. All zero when every median
/// coincides.
struct MedianGapMatrix {
  Matrix<double> gamma;
};

struct CmetScore {
  double local = 0.0;
  double global = 0.0;
  // Values before clamping to [0, 1].
  double local_raw = 0.0;
  double global_raw = 0.0;
  Mode mode = Mode::Supervised;
  std::size_t clusters = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t q = 0;
};

inline std::vector<double> normalized_distances(const DataMatrix& x, const ClusterAssignment& a,
                                                const ClusterSummary& s) {
  check_assignment(x, a);
  if (s.clusters() != a.clusters() || s.dim() != x.cols() || s.medians.rows() != a.clusters() + 1)
    throw Error(ErrorKind::InconsistentSummary,
                "summary has " + std::to_string(s.clusters()) + " clusters of dimension " +
                    std::to_string(s.dim()) + "; data has " + std::to_string(a.clusters()) +
                    " clusters of dimension " + std::to_string(x.cols()));
  std::vector<double> d(x.rows());
  parallel_for(0, x.rows(), [&](std::size_t i) {
    const auto k = a[i];
    d[i] = distance(x.row(i), s.cluster_median(k)) / s.radii[k];
  });
  return d;
}

inline MedianGapMatrix median_gap_matrix(const ClusterSummary& s) {
  const std::size_t m = s.medians.rows();
  Matrix<double> gamma(m, m, 0.0);
  double widest = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k + 1; l < m; ++l) {
      const double g = distance(s.medians.row(k), s.medians.row(l));
      gamma(k, l) = g;
      gamma(l, k) = g;
      widest = std::max(widest, g);
    }
  if (widest == 0.0) return {Matrix<double>(m, m, 0.0)};
  for (auto& v : gamma.values()) v /= widest;
  return {std::move(gamma)};
}

namespace detail {

inline void check_pair(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a) {
  if (x.rows() != xp.rows())
    throw Error(ErrorKind::RowCountMismatch, "original has " + std::to_string(x.rows()) +
                                                 " rows, embedding has " + std::to_string(xp.rows()));
  check_assignment(x, a);
}

inline double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

inline double local_from_summaries(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a,
                                   const ClusterSummary& s, const ClusterSummary& sp) {
  const auto d = normalized_distances(x, a, s);
  const auto dp = normalized_distances(xp, a, sp);
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double diff = d[i] - dp[i];
    acc += diff * diff;
  }
  return 1.0 - std::sqrt(acc) / std::sqrt(static_cast<double>(d.size()));
}

inline double global_from_summaries(const ClusterSummary& s, const ClusterSummary& sp) {
  const auto g = median_gap_matrix(s);
  const auto gp = median_gap_matrix(sp);
  double acc = 0.0;
  const auto lhs = g.gamma.values();
  const auto rhs = gp.gamma.values();
  for (std::size_t t = 0; t < lhs.size(); ++t) {
    const double diff = lhs[t] - rhs[t];
    acc += diff * diff;
  }
  const double c = static_cast<double>(s.clusters());
  return 1.0 - std::sqrt(acc) / std::sqrt(c * (c + 1.0));
}

}  // namespace detail

/// Local score before clamping.
inline double cmet_local_raw(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a) {
  detail::check_pair(x, xp, a);
  return detail::local_from_summaries(x, xp, a, cluster_summary(x, a), cluster_summary(xp, a));
}

inline double cmet_local(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a) {
  return detail::clamp_unit(cmet_local_raw(x, xp, a));
}

/// Global score before clamping.
inline double cmet_global_raw(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a) {
  detail::check_pair(x, xp, a);
  return detail::global_from_summaries(cluster_summary(x, a), cluster_summary(xp, a));
}

inline double cmet_global(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a) {
  return detail::clamp_unit(cmet_global_raw(x, xp, a));
}

/// Cluster the original space agglomeratively into `clusters` groups.
struct Unsupervised {
  std::size_t clusters = 0;
  Linkage linkage = Linkage::Ward;
  std::size_t max_samples = kDefaultClusteringCap;
};

using ClusterSource = std::variant<ClusterAssignment, Unsupervised>;

/// Scores an (original, embedding) pair under an explicit assignment.
inline CmetScore cmet_score(const DataMatrix& x, const DataMatrix& xp, const ClusterAssignment& a,
                            Mode mode = Mode::Supervised) {
  detail::check_pair(x, xp, a);
  const auto s = cluster_summary(x, a);
  const auto sp = cluster_summary(xp, a);
  CmetScore out;
  out.local_raw = detail::local_from_summaries(x, xp, a, s, sp);
  out.global_raw = detail::global_from_summaries(s, sp);
  out.local = detail::clamp_unit(out.local_raw);
  out.global = detail::clamp_unit(out.global_raw);
  out.mode = mode;
  out.clusters = a.clusters();
  out.n = x.rows();
  out.p = x.cols();
  out.q = xp.cols();
  return out;
}

/// Assignment for an unsupervised request; clusters come from the original
/// space only and are reused verbatim for the embedding.
inline ClusterAssignment unsupervised_assignment(const DataMatrix& x, const Unsupervised& req) {
  if (req.clusters < 1 || req.clusters > x.rows())
    throw Error(ErrorKind::InvalidClusterCount, "cluster count " + std::to_string(req.clusters) +
                                                    " outside 1.." + std::to_string(x.rows()));
  if (req.clusters == 1) return ClusterAssignment::single(x.rows());
  return cut(agglomerate(x, req.linkage, req.max_samples), req.clusters);
}

inline CmetScore cmet_score(const DataMatrix& x, const DataMatrix& xp, const ClusterSource& source) {
  if (const auto* labels = std::get_if<ClusterAssignment>(&source))
    return cmet_score(x, xp, *labels, Mode::Supervised);
  const auto& req = std::get<Unsupervised>(source);
  if (x.rows() != xp.rows())
    throw Error(ErrorKind::RowCountMismatch, "original has " + std::to_string(x.rows()) +
                                                 " rows, embedding has " + std::to_string(xp.rows()));
  return cmet_score(x, xp, unsupervised_assignment(x, req), Mode::Unsupervised);
}

}  // namespace embedq
