#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "embedq/cmet.hpp"
#include "embedq/datagen.hpp"
#include "embedq/embedders.hpp"
#include "test_util.hpp"

using namespace embedq;
using testutil::column;
using testutil::to_assignment;
using testutil::to_matrix;

namespace {

// Frozen from tests/oracle/worked_example.py (exact-fraction evaluation).
constexpr double kWorkedLocal = 0.29289321881345243;
constexpr double kWorkedGlobal = 0.91752559788608823;

const DataMatrix& worked_x() {
  static const auto x = column({0, 2, 10, 14});
  return x;
}
const DataMatrix& worked_xp() {
  static const auto x = column({0, 2, 10, 10});
  return x;
}
const ClusterAssignment& worked_labels() {
  static const ClusterAssignment a({0, 0, 1, 1}, 2);
  return a;
}

}  // namespace

TEST(NormalizedDistances, WorkedExample) {
  const auto s = cluster_summary(worked_x(), worked_labels());
  EXPECT_EQ(normalized_distances(worked_x(), worked_labels(), s), (std::vector<double>{1, 1, 1, 1}));
  const auto sp = cluster_summary(worked_xp(), worked_labels());
  EXPECT_EQ(normalized_distances(worked_xp(), worked_labels(), sp), (std::vector<double>{1, 1, 0, 0}));
}

TEST(NormalizedDistances, SingletonAndMedianPointsAreZero) {
  const auto x = column({3, 0, 1, 2});
  const ClusterAssignment a({0, 1, 1, 1}, 2);
  const auto d = normalized_distances(x, a, cluster_summary(x, a));
  EXPECT_EQ(d[0], 0.0);  // singleton
  EXPECT_EQ(d[2], 0.0);  // equals its cluster median
}

TEST(NormalizedDistances, InconsistentSummaryThrows) {
  const auto s = cluster_summary(worked_x(), worked_labels());
  try {
    normalized_distances(validate_matrix({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), worked_labels(), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentSummary);
  }
  try {
    normalized_distances(worked_x(), ClusterAssignment({0, 1, 2, 2}, 3), s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentSummary);
  }
}

TEST(CmetLocal, IdentityIsExactlyOne) {
  std::mt19937_64 rng(1);
  const auto x = to_matrix(oracle::random_points(rng, 30, 3));
  const auto a = to_assignment(oracle::random_labels(rng, 30, 4), 4);
  EXPECT_EQ(cmet_local(x, x, a), 1.0);
  EXPECT_EQ(cmet_global(x, x, a), 1.0);
}

TEST(CmetLocal, WorkedExample) {
  EXPECT_NEAR(cmet_local(worked_x(), worked_xp(), worked_labels()), 1.0 - std::sqrt(2.0) / 2.0, 1e-12);
  EXPECT_NEAR(cmet_local(worked_x(), worked_xp(), worked_labels()), kWorkedLocal, 1e-12);
}

TEST(CmetLocal, UniformScaleAndShiftIsOne) {
  std::mt19937_64 rng(2);
  const auto pts = oracle::random_points(rng, 25, 2);
  auto moved = pts;
  for (auto& row : moved)
    for (auto& v : row) v = 7.0 * v + 3.0;
  const auto a = to_assignment(oracle::random_labels(rng, 25, 3), 3);
  EXPECT_NEAR(cmet_local(to_matrix(pts), to_matrix(moved), a), 1.0, 1e-12);
  EXPECT_NEAR(cmet_global(to_matrix(pts), to_matrix(moved), a), 1.0, 1e-12);
}

TEST(CmetLocal, RowCountMismatch) {
  try {
    cmet_local(worked_x(), column({1, 2, 3}), worked_labels());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RowCountMismatch);
  }
}

TEST(MedianGap, CoincidentMediansGiveZeroMatrix) {
  const auto x = validate_matrix({{1, 1}, {1, 1}, {1, 1}});
  const auto g = median_gap_matrix(cluster_summary(x, ClusterAssignment({0, 1, 1}, 2)));
  for (double v : g.gamma.values()) EXPECT_EQ(v, 0.0);
}

TEST(MedianGap, OneDimensionalExample) {
  const auto g = median_gap_matrix(cluster_summary(worked_x(), worked_labels()));
  ASSERT_EQ(g.gamma.rows(), 3u);
  EXPECT_EQ(g.gamma(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g.gamma(0, 2), 5.0 / 11.0);
  EXPECT_DOUBLE_EQ(g.gamma(1, 2), 6.0 / 11.0);
}

TEST(MedianGap, SingleClusterIsAllZero) {
  std::mt19937_64 rng(4);
  const auto x = to_matrix(oracle::random_points(rng, 9, 3));
  const auto g = median_gap_matrix(cluster_summary(x, ClusterAssignment::single(9)));
  EXPECT_EQ(g.gamma.rows(), 2u);
  for (double v : g.gamma.values()) EXPECT_EQ(v, 0.0);
}

TEST(MedianGap, SymmetricZeroDiagonalUnitMax) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = to_matrix(oracle::random_points(rng, 40, 3));
    const auto g = median_gap_matrix(cluster_summary(x, to_assignment(oracle::random_labels(rng, 40, 5), 5))).gamma;
    double top = 0.0;
    for (std::size_t k = 0; k < g.rows(); ++k) {
      EXPECT_EQ(g(k, k), 0.0);
      for (std::size_t l = 0; l < g.cols(); ++l) {
        EXPECT_EQ(g(k, l), g(l, k));
        top = std::max(top, g(k, l));
      }
    }
    EXPECT_EQ(top, 1.0);
  }
}

TEST(CmetGlobal, WorkedExample) {
  const double g = cmet_global(worked_x(), worked_xp(), worked_labels());
  EXPECT_NEAR(g, 1.0 - (20.0 / 99.0) / std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(g, kWorkedGlobal, 1e-12);
}

TEST(CmetGlobal, SingleClusterIsOne) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = to_matrix(oracle::random_points(rng, 20, 3));
    const auto xp = to_matrix(oracle::random_points(rng, 20, 2));
    EXPECT_EQ(cmet_global(x, xp, ClusterAssignment::single(20)), 1.0);
  }
}

TEST(CmetScoreTest, SupervisedIdentity) {
  const auto s = cmet_score(worked_x(), worked_x(), ClusterSource{worked_labels()});
  EXPECT_EQ(s.local, 1.0);
  EXPECT_EQ(s.global, 1.0);
  EXPECT_EQ(s.mode, Mode::Supervised);
  EXPECT_EQ(s.clusters, 2u);
  EXPECT_EQ(s.n, 4u);
}

TEST(CmetScoreTest, UnsupervisedAllSingletonsGivesUnitLocal) {
  std::mt19937_64 rng(8);
  const auto x = to_matrix(oracle::random_points(rng, 12, 3));
  const auto xp = to_matrix(oracle::random_points(rng, 12, 2));
  const auto s = cmet_score(x, xp, ClusterSource{Unsupervised{12}});
  EXPECT_EQ(s.local, 1.0);
  EXPECT_EQ(s.mode, Mode::Unsupervised);
  EXPECT_EQ(s.q, 2u);
}

TEST(CmetScoreTest, WorkedExampleSupervised) {
  const auto s = cmet_score(worked_x(), worked_xp(), worked_labels());
  EXPECT_NEAR(s.local, kWorkedLocal, 1e-12);
  EXPECT_NEAR(s.global, kWorkedGlobal, 1e-12);
  EXPECT_EQ(s.local, s.local_raw);
}

TEST(CmetScoreTest, UnsupervisedClustersOriginalSpaceOnly) {
  // Original has two obvious groups; the embedding scrambles them. The
  // assignment must follow the original.
  const auto x = column({0, 0.1, 0.2, 10, 10.1, 10.2});
  const auto xp = column({0, 10, 0.1, 10.1, 0.2, 10.2});
  const auto a = unsupervised_assignment(x, Unsupervised{2});
  EXPECT_EQ(a, ClusterAssignment({0, 0, 0, 1, 1, 1}, 2));
  const auto s = cmet_score(x, xp, ClusterSource{Unsupervised{2}});
  const auto direct = cmet_score(x, xp, a, Mode::Unsupervised);
  EXPECT_EQ(s.local, direct.local);
  EXPECT_EQ(s.global, direct.global);
}

TEST(CmetScoreTest, InvalidClusterCount) {
  try {
    cmet_score(worked_x(), worked_xp(), ClusterSource{Unsupervised{5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidClusterCount);
  }
}

// ---------------------------------------------------------------- properties

TEST(CmetProperties, BoundedOnRandomInstances) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(4, 120), pd(1, 10);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<int> cd(1, static_cast<int>(std::min<std::size_t>(n, 12)));
    const int c = cd(rng);
    const auto x = to_matrix(oracle::random_points(rng, n, pd(rng)));
    const auto xp = to_matrix(oracle::random_points(rng, n, pd(rng)));
    const auto s = cmet_score(x, xp, to_assignment(oracle::random_labels(rng, n, c), c));
    EXPECT_GE(s.local_raw, -1e-12);
    EXPECT_LE(s.local_raw, 1 + 1e-12);
    EXPECT_GE(s.global_raw, -1e-12);
    EXPECT_LE(s.global_raw, 1 + 1e-12);
  }
}

TEST(CmetProperties, AxisAlignedSimilarityInvariance) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(4, 80), pd(1, 6);
    const std::size_t n = nd(rng);
    const int c = std::uniform_int_distribution<int>(1, 5)(rng);
    const auto x = to_matrix(oracle::random_points(rng, n, pd(rng)));
    const auto xp = to_matrix(oracle::random_points(rng, n, pd(rng)));
    const auto a = to_assignment(oracle::random_labels(rng, n, std::min<int>(c, static_cast<int>(n))),
                                 std::min<int>(c, static_cast<int>(n)));
    const auto base = cmet_score(x, xp, a);
    const auto tx = testutil::AxisTransform::random(rng, x.cols()).apply(x);
    const auto txp = testutil::AxisTransform::random(rng, xp.cols()).apply(xp);
    for (const auto& s : {cmet_score(tx, xp, a), cmet_score(x, txp, a), cmet_score(tx, txp, a)}) {
      EXPECT_NEAR(s.local, base.local, 1e-9);
      EXPECT_NEAR(s.global, base.global, 1e-9);
    }
  }
}

TEST(CmetProperties, JointRowPermutationInvariance) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 60)(rng);
    const int c = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto pts = oracle::random_points(rng, n, 3);
    const auto ptsp = oracle::random_points(rng, n, 2);
    const auto labels = oracle::random_labels(rng, n, c);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Points px, pxp;
    std::vector<int> pl;
    for (auto i : perm) {
      px.push_back(pts[i]);
      pxp.push_back(ptsp[i]);
      pl.push_back(labels[i]);
    }
    const auto a = cmet_score(to_matrix(pts), to_matrix(ptsp), to_assignment(labels, c));
    const auto b = cmet_score(to_matrix(px), to_matrix(pxp), to_assignment(pl, c));
    EXPECT_NEAR(a.local, b.local, 1e-12);
    EXPECT_NEAR(a.global, b.global, 1e-12);
  }
}

TEST(CmetProperties, SeparatedBlobsBeatLabelShuffles) {
  const auto blobs = gen_blobs(5, 60, 2, 1.0, 20.0, 17);
  const auto identity = cmet_score(blobs.x, blobs.x, blobs.labels);
  // The embedding keeps the point cloud but breaks which sample sits where,
  // so the true labels no longer describe groups in the embedded space.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = cmet_score(blobs.x, shuffle_embedding(blobs.x, seed), blobs.labels);
    EXPECT_GE(identity.local - s.local, 0.1) << "seed " << seed;
    EXPECT_GE(identity.global - s.global, 0.1) << "seed " << seed;
  }
}

TEST(CmetProperties, MatchesNaiveOracleOnSmallInstances) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const int c = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<std::size_t>(n, 3)))(rng);
    const auto pts = oracle::random_points(rng, n, std::uniform_int_distribution<std::size_t>(1, 4)(rng));
    const auto ptsp = oracle::random_points(rng, n, std::uniform_int_distribution<std::size_t>(1, 4)(rng));
    const auto labels = oracle::random_labels(rng, n, c);
    const auto expect = oracle::naive_cmet(pts, ptsp, labels, c);
    const auto got = cmet_score(to_matrix(pts), to_matrix(ptsp), to_assignment(labels, c));
    EXPECT_NEAR(got.local_raw, expect.local, 1e-12);
    EXPECT_NEAR(got.global_raw, expect.global, 1e-12);
  }
}

TEST(CmetScaling, SupervisedTimeGrowsRoughlyLinearly) {
  auto best_of_three = [](std::size_t n) {
    const auto data = gen_blobs(10, n / 10, 50, 1.0, 10.0, 1);
    const auto emb = transform(fit_random_projection(data.x, 2, 1), data.x);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      const auto s = cmet_score(data.x, emb, data.labels);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      EXPECT_LE(s.local, 1.0);
    }
    return best;
  };
  const double small = best_of_three(5000), large = best_of_three(20000);
  // 4x the samples: linear growth gives ~4x, quadratic ~16x.
  EXPECT_LE(large / small, 8.0) << small << " s vs " << large << " s";
}
