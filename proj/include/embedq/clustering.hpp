#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "embedq/core.hpp"
#include "embedq/error.hpp"
#include "embedq/matrix.hpp"

namespace embedq {

enum class Linkage { Ward, Average, Complete, Single };

constexpr std::string_view to_string(Linkage l) noexcept {
  switch (l) {
    case Linkage::Ward: return "ward";
    case Linkage::Average: return "average";
    case Linkage::Complete: return "complete";
    case Linkage::Single: return "single";
  }
  return "unknown";
}

inline Linkage parse_linkage(std::string_view name) {
  if (name == "ward") return Linkage::Ward;
  if (name == "average") return Linkage::Average;
  if (name == "complete") return Linkage::Complete;
  if (name == "single") return Linkage::Single;
  throw Error(ErrorKind::InvalidArgument, "unknown linkage '" + std::string(name) + "'");
}

struct Merge {
  std::size_t left;   // node id; leaves are 0..n-1, merge t creates node n+t
  std::size_t right;
  double distance;
  std::size_t size;

  bool operator==(const Merge&) const = default;
};

/// Full merge history of n leaves: n-1 merges in the order they were made.
struct Dendrogram {
  std::vector<Merge> merges;
  std::size_t leaves = 0;
};

inline constexpr std::size_t kDefaultClusteringCap = 20000;

namespace detail {

// Condensed strict upper triangle of an n x n symmetric matrix.
class CondensedMatrix {
 public:
  explicit CondensedMatrix(std::size_t n) : n_(n), data_(n < 2 ? 0 : n * (n - 1) / 2) {}

  double& at(std::size_t i, std::size_t j) noexcept {
    if (i > j) std::swap(i, j);
    return data_[offset(i) + (j - i - 1)];
  }
  double at(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return data_[offset(i) + (j - i - 1)];
  }

 private:
  std::size_t offset(std::size_t i) const noexcept { return i * (2 * n_ - i - 1) / 2; }
  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace detail

/// Bottom-up clustering of the rows of `x`.
///
/// Every step merges the pair of active clusters with the smallest linkage
/// dissimilarity; among equal dissimilarities the pair whose
/// (min member index, max member index) key is lexicographically smallest wins,
/// where a cluster's member index is its smallest sample index. Dissimilarities
/// are maintained with Lance-Williams updates on an n(n-1)/2 store. Ward runs
/// on squared Euclidean distances and reports the square root, so every
/// linkage reports merge heights in distance units.
///
/// Each active cluster caches its best partner; after a merge only rows whose
/// cached partner disappeared are rescanned.
inline Dendrogram agglomerate(const DataMatrix& x, Linkage linkage = Linkage::Ward,
                              std::size_t max_samples = kDefaultClusteringCap) {
  const std::size_t n = x.rows();
  if (n < 2) throw Error(ErrorKind::TooFewSamples, "agglomerative clustering needs at least 2 samples");
  if (n > max_samples)
    throw Error(ErrorKind::ClusteringTooLarge,
                std::to_string(n) + " samples exceed the clustering cap of " + std::to_string(max_samples) +
                    "; use supervised mode (labels as clusters) for data this size");

  const bool squared = linkage == Linkage::Ward;
  detail::CondensedMatrix diss(n);
  parallel_for(0, n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sq = squared_distance(x.row(i), x.row(j));
      diss.at(i, j) = squared ? sq : std::sqrt(sq);
    }
  });

  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> min_member(n);
  std::vector<std::size_t> node(n);  // dendrogram node id held by each slot
  std::iota(min_member.begin(), min_member.end(), std::size_t{0});
  std::iota(node.begin(), node.end(), std::size_t{0});
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});

  using Key = std::tuple<double, std::size_t, std::size_t>;
  auto key = [&](std::size_t a, std::size_t b) -> Key {
    const auto lo = std::min(min_member[a], min_member[b]);
    const auto hi = std::max(min_member[a], min_member[b]);
    return {diss.at(a, b), lo, hi};
  };

  std::vector<std::size_t> partner(n, 0);
  auto rescan = [&](std::size_t a) {
    std::optional<Key> best;
    for (auto b : active) {
      if (b == a) continue;
      const Key k = key(a, b);
      if (!best || k < *best) {
        best = k;
        partner[a] = b;
      }
    }
  };
  if (n > 1)
    for (auto a : active) rescan(a);

  Dendrogram out;
  out.leaves = n;
  out.merges.reserve(n - 1);

  while (active.size() > 1) {
    std::size_t a = active.front();
    Key best = key(a, partner[a]);
    for (auto s : active) {
      const Key k = key(s, partner[s]);
      if (k < best) {
        best = k;
        a = s;
      }
    }
    std::size_t b = partner[a];
    if (min_member[b] < min_member[a]) std::swap(a, b);

    const double d_ab = diss.at(a, b);
    const double size_a = static_cast<double>(size[a]);
    const double size_b = static_cast<double>(size[b]);
    // New cluster lives in slot a; slot b is retired.
    for (auto k : active) {
      if (k == a || k == b) continue;
      const double d_ak = diss.at(a, k);
      const double d_bk = diss.at(b, k);
      double updated = 0.0;
      switch (linkage) {
        case Linkage::Single: updated = std::min(d_ak, d_bk); break;
        case Linkage::Complete: updated = std::max(d_ak, d_bk); break;
        case Linkage::Average: updated = (size_a * d_ak + size_b * d_bk) / (size_a + size_b); break;
        case Linkage::Ward: {
          const double size_k = static_cast<double>(size[k]);
          updated = ((size_a + size_k) * d_ak + (size_b + size_k) * d_bk - size_k * d_ab) /
                    (size_a + size_b + size_k);
          updated = std::max(updated, 0.0);
          break;
        }
      }
      diss.at(a, k) = updated;
    }

    out.merges.push_back(Merge{node[a], node[b], squared ? std::sqrt(d_ab) : d_ab, size[a] + size[b]});
    node[a] = n + out.merges.size() - 1;
    size[a] += size[b];
    min_member[a] = std::min(min_member[a], min_member[b]);
    active.erase(std::find(active.begin(), active.end(), b));
    if (active.size() < 2) break;

    for (auto k : active) {
      if (k == a) continue;
      if (partner[k] == a || partner[k] == b) {
        rescan(k);
      } else if (key(k, a) < key(k, partner[k])) {
        partner[k] = a;
      }
    }
    rescan(a);
  }
  return out;
}

/// Flat partition with `clusters` groups: the last clusters-1 merges are
/// undone. Groups are numbered in order of their smallest sample index.
inline ClusterAssignment cut(const Dendrogram& d, std::size_t clusters) {
  const std::size_t n = d.leaves;
  if (clusters < 1 || clusters > n)
    throw Error(ErrorKind::InvalidClusterCount,
                "cluster count " + std::to_string(clusters) + " outside 1.." + std::to_string(n));
  if (d.merges.size() + 1 != n)
    throw Error(ErrorKind::InvalidArgument, "dendrogram is incomplete");

  // Union-find over node ids 0..2n-2.
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  const std::size_t kept = n - clusters;
  for (std::size_t t = 0; t < kept; ++t) {
    const auto& m = d.merges[t];
    const std::size_t created = n + t;
    parent[find(m.left)] = created;
    parent[find(m.right)] = created;
  }

  std::vector<std::uint32_t> labels(n);
  std::vector<std::size_t> root_label(2 * n - 1, std::numeric_limits<std::size_t>::max());
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (root_label[r] == std::numeric_limits<std::size_t>::max()) root_label[r] = next++;
    labels[i] = static_cast<std::uint32_t>(root_label[r]);
  }
  return ClusterAssignment(std::move(labels), clusters);
}

}  // namespace embedq
