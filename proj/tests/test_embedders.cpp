#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "embedq/cmet.hpp"
#include "embedq/datagen.hpp"
#include "embedq/embedders.hpp"
#include "test_util.hpp"

using namespace embedq;
using testutil::to_matrix;

namespace {

Eigen::MatrixXd to_eigen(const DataMatrix& x) {
  Eigen::MatrixXd m(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
  return m;
}

double pair_distance(const DataMatrix& x, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.cols(); ++j) s += (x(a, j) - x(b, j)) * (x(a, j) - x(b, j));
  return std::sqrt(s);
}

void expect_orthonormal_rows(const Matrix<double>& c, double tol) {
  for (std::size_t a = 0; a < c.rows(); ++a)
    for (std::size_t b = 0; b < c.rows(); ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < c.cols(); ++j) dot += c(a, j) * c(b, j);
      EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, tol) << a << "," << b;
    }
}

}  // namespace

TEST(Pca, RankOneDataKeepsDistances) {
  oracle::Points pts;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.37 * i - 2.0 + 0.01 * i * i;
    pts.push_back({1.0 + 3.0 * t, -2.0 + 4.0 * t});
  }
  const auto x = to_matrix(pts);
  const auto y = transform(fit_pca(x, 1), x);
  for (std::size_t a = 0; a < x.rows(); ++a)
    for (std::size_t b = 0; b < x.rows(); ++b) EXPECT_NEAR(pair_distance(y, a, b), pair_distance(x, a, b), 1e-9);
}

TEST(Pca, FullRankFitIsAnIsometry) {
  std::mt19937_64 rng(1);
  const auto x = to_matrix(oracle::random_points(rng, 40, 6));
  const auto e = fit_pca(x, 6);
  expect_orthonormal_rows(e.components, 1e-8);
  const auto y = transform(e, x);
  for (std::size_t a = 0; a < x.rows(); ++a)
    for (std::size_t b = a + 1; b < x.rows(); ++b) EXPECT_NEAR(pair_distance(y, a, b), pair_distance(x, a, b), 1e-9);
}

TEST(Pca, MatchesGramEigendecomposition) {
  std::mt19937_64 rng(2);
  const auto x = to_matrix(oracle::random_points(rng, 30, 5));
  const auto e = fit_pca(x, 5);
  const auto y = transform(e, x);

  Eigen::MatrixXd xc = to_eigen(x);
  xc.rowwise() -= xc.colwise().mean();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(xc.transpose() * xc);
  // Eigen sorts ascending; compare axis t with eigenvector 4 - t up to sign.
  for (std::size_t t = 0; t < 5; ++t) {
    const Eigen::VectorXd v = eig.eigenvectors().col(4 - static_cast<Eigen::Index>(t));
    double dot = 0.0;
    for (std::size_t j = 0; j < 5; ++j) dot += e.components(t, j) * v(static_cast<Eigen::Index>(j));
    EXPECT_NEAR(std::abs(dot), 1.0, 1e-8) << "axis " << t;
  }

  Eigen::MatrixXd recon = to_eigen(y) * to_eigen(validate_matrix(e.components));
  EXPECT_LE((recon - xc).norm(), 1e-8);
}

TEST(Pca, SingularValuesMatchEigenvalues) {
  std::mt19937_64 rng(3);
  const auto x = to_matrix(oracle::random_points(rng, 25, 4));
  Eigen::MatrixXd xe = to_eigen(x);
  Eigen::MatrixXd xc = xe.rowwise() - xe.colwise().mean();
  Matrix<double> centred(25, 4);
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = 0; j < 4; ++j) centred(i, j) = xc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  const auto svd = jacobi_svd(centred);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(xc.transpose() * xc);
  for (std::size_t t = 0; t < 4; ++t)
    EXPECT_NEAR(svd.singular_values[t] * svd.singular_values[t], eig.eigenvalues()(3 - static_cast<Eigen::Index>(t)),
                1e-8 * eig.eigenvalues().maxCoeff());
  EXPECT_TRUE(std::is_sorted(svd.singular_values.rbegin(), svd.singular_values.rend()));
}

TEST(Pca, SignConventionAndOrthonormality) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = to_matrix(oracle::random_points(rng, 50, 7));
    const auto e = fit_pca(x, 3);
    expect_orthonormal_rows(e.components, 1e-8);
    for (std::size_t t = 0; t < 3; ++t) {
      const auto row = e.components.row(t);
      const auto it = std::max_element(row.begin(), row.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
      EXPECT_GT(*it, 0.0);
    }
  }
}

TEST(Pca, WideDataAndTargetDimension) {
  std::mt19937_64 rng(5);
  const auto x = to_matrix(oracle::random_points(rng, 4, 9));
  EXPECT_NO_THROW(fit_pca(x, 4));
  for (std::size_t q : {std::size_t{0}, std::size_t{5}}) {
    try {
      fit_pca(x, q);
      FAIL() << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidTargetDim);
    }
  }
}

TEST(Pca, FullRankFitScoresOneOnAxisAlignedData) {
  // A centred grid with distinct per-axis spreads has a diagonal covariance,
  // so the principal axes are the coordinate axes and the fit is a
  // translation plus sign flips.
  oracle::Points pts;
  std::vector<int> labels;
  for (int a = -3; a <= 3; ++a)
    for (int b = -1; b <= 1; ++b) {
      pts.push_back({2.0 * a + 5.0, 0.5 * b - 1.0});
      labels.push_back(a < 0 ? 0 : (a == 0 ? 1 : 2));
    }
  const auto x = to_matrix(pts);
  const auto y = transform(fit_pca(x, 2), x);
  const auto s = cmet_score(x, y, testutil::to_assignment(labels, 3));
  EXPECT_GE(s.local, 1.0 - 1e-6);
  EXPECT_GE(s.global, 1.0 - 1e-6);
}

TEST(Transform, MeanMapsToZeroAndAffineIdentity) {
  std::mt19937_64 rng(6);
  const auto x1 = to_matrix(oracle::random_points(rng, 20, 4));
  const auto x2 = to_matrix(oracle::random_points(rng, 20, 4));
  const auto e = fit_pca(x1, 2);
  const auto at_mean = transform(e, validate_matrix(1, 4, e.mean));
  EXPECT_NEAR(at_mean(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(at_mean(0, 1), 0.0, 1e-12);

  // T(a x1 + b x2) = a T(x1) + b T(x2) - (a + b - 1) T(0).
  const double a = 1.5, b = -0.75;
  Matrix<double> mix(20, 4);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 4; ++j) mix(i, j) = a * x1(i, j) + b * x2(i, j);
  const auto lhs = transform(e, validate_matrix(std::move(mix)));
  const auto t1 = transform(e, x1), t2 = transform(e, x2);
  const auto t0 = transform(e, validate_matrix(1, 4, std::vector<double>(4, 0.0)));
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t t = 0; t < 2; ++t)
      EXPECT_NEAR(lhs(i, t), a * t1(i, t) + b * t2(i, t) - (a + b - 1.0) * t0(0, t), 1e-10);
}

TEST(Transform, DimensionMismatch) {
  std::mt19937_64 rng(7);
  const auto e = fit_pca(to_matrix(oracle::random_points(rng, 10, 3)), 2);
  try {
    transform(e, to_matrix(oracle::random_points(rng, 10, 4)));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(RandomProjection, OrthonormalAndDeterministic) {
  std::mt19937_64 rng(8);
  const auto x = to_matrix(oracle::random_points(rng, 30, 9));
  const auto e = fit_random_projection(x, 2, 42);
  expect_orthonormal_rows(e.components, 1e-12);
  EXPECT_EQ(e.components, fit_random_projection(x, 2, 42).components);
  EXPECT_FALSE(e.components == fit_random_projection(x, 2, 43).components);
  EXPECT_THROW(fit_random_projection(x, 10, 1), Error);
}

TEST(Shuffle, TwoRowsAreIdentityOrSwap) {
  const auto x = testutil::column({1, 2});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto y = shuffle_embedding(x, seed);
    EXPECT_TRUE((y(0, 0) == 1 && y(1, 0) == 2) || (y(0, 0) == 2 && y(1, 0) == 1));
  }
  EXPECT_THROW(shuffle_embedding(testutil::column({1}), 0), Error);
}

TEST(Shuffle, PreservesRowMultisetAndIsDeterministic) {
  std::mt19937_64 rng(9);
  const auto pts = oracle::random_points(rng, 100, 3);
  const auto x = to_matrix(pts);
  const auto y = shuffle_embedding(x, 5);
  auto a = pts, b = testutil::to_points(y);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  EXPECT_EQ(y, shuffle_embedding(x, 5));
  EXPECT_FALSE(y == x);
}

TEST(Shuffle, PermutationIsUniformOnThreeElements) {
  std::map<std::vector<std::size_t>, int> counts;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) ++counts[random_permutation(3, seed)];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [perm, c] : counts) EXPECT_NEAR(c, 1000, 150);
}

TEST(Shuffle, ScoresBelowIdentityOnSeparatedBlobs) {
  const auto blobs = gen_blobs(4, 50, 3, 1.0, 25.0, 3);
  const auto identity = cmet_score(blobs.x, blobs.x, blobs.labels);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = cmet_score(blobs.x, shuffle_embedding(blobs.x, seed), blobs.labels);
    EXPECT_LT(s.local, identity.local);
    EXPECT_LT(s.global, identity.global);
  }
}

TEST(Jitter, ZeroSigmaIsIdentity) {
  std::mt19937_64 rng(10);
  const auto x = to_matrix(oracle::random_points(rng, 10, 2));
  EXPECT_EQ(jitter_embedding(x, 0.0, 3), x);
}
