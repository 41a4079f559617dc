#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "embedq/error.hpp"
#include "embedq/matrix.hpp"
#include "embedq/random.hpp"

namespace embedq {

struct LabeledDataset {
  DataMatrix x;
  ClusterAssignment labels;
  std::string name;
  std::vector<std::string> feature_names{};
  bool has_labels = true;
};

/// Geometry of the five interlaced rings.
struct RingLayout {
  static constexpr double radius = 1.0;
  static constexpr double jitter = 0.02;
  static constexpr std::array<std::array<double, 2>, 5> centers{{
      {-2.2, 0.0}, {0.0, 0.0}, {2.2, 0.0}, {-1.1, -0.9}, {1.1, -0.9}}};
};

/// Five interlaced unit rings (three on top, two below), points uniform in
/// angle with Gaussian radial jitter truncated at 3 standard deviations.
/// Labels are ring ids 0..4; rows are grouped by ring.
inline LabeledDataset gen_rings(std::size_t n_per_ring, std::uint64_t seed) {
  if (n_per_ring < 3)
    throw Error(ErrorKind::InvalidCount, "rings need at least 3 points each, got " + std::to_string(n_per_ring));
  Rng rng(seed, 1);
  const std::size_t n = 5 * n_per_ring;
  Matrix<double> m(n, 2);
  std::vector<std::uint32_t> labels(n);
  for (std::size_t ring = 0; ring < 5; ++ring) {
    const auto& center = RingLayout::centers[ring];
    for (std::size_t t = 0; t < n_per_ring; ++t) {
      const std::size_t i = ring * n_per_ring + t;
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      double offset = rng.normal();
      while (std::abs(offset) > 3.0) offset = rng.normal();
      const double r = RingLayout::radius + RingLayout::jitter * offset;
      m(i, 0) = center[0] + r * std::cos(angle);
      m(i, 1) = center[1] + r * std::sin(angle);
      labels[i] = static_cast<std::uint32_t>(ring);
    }
  }
  return {validate_matrix(std::move(m)), ClusterAssignment(std::move(labels), 5), "rings", {"x", "y"}};
}

struct SwissRollParams {
  static constexpr double t_min = 1.5 * std::numbers::pi;
  static constexpr double t_max = 4.5 * std::numbers::pi;
  static constexpr double height = 21.0;
  static constexpr std::size_t bands = 4;
};

/// Swiss roll (t cos t, h, t sin t), t in [1.5 pi, 4.5 pi], h uniform in
/// [0, 21]. The roll parameter is stratified (one uniform draw per equal slice
/// of the range) so each of the 4 label bands is populated for n >= 4. Labels
/// are the index of the equal-width t band.
inline LabeledDataset gen_swiss_roll(std::size_t n, std::uint64_t seed) {
  if (n < 4) throw Error(ErrorKind::InvalidCount, "swiss roll needs at least 4 points, got " + std::to_string(n));
  using P = SwissRollParams;
  Rng rng(seed, 2);
  Matrix<double> m(n, 3);
  std::vector<std::uint32_t> labels(n);
  const double span = P::t_max - P::t_min;
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = (static_cast<double>(i) + rng.uniform()) / static_cast<double>(n);
    const double t = P::t_min + span * frac;
    m(i, 0) = t * std::cos(t);
    m(i, 1) = rng.uniform(0.0, P::height);
    m(i, 2) = t * std::sin(t);
    const auto band = static_cast<std::size_t>((t - P::t_min) / span * static_cast<double>(P::bands));
    labels[i] = static_cast<std::uint32_t>(std::min(band, P::bands - 1));
  }
  return {validate_matrix(std::move(m)), ClusterAssignment(std::move(labels), P::bands), "swissroll", {"x", "y", "z"}};
}

/// Isotropic Gaussian blobs with centers drawn uniformly in
/// [-separation, separation]^dim. Rows are grouped by blob.
inline LabeledDataset gen_blobs(std::size_t blobs, std::size_t per_blob, std::size_t dim, double spread,
                                double separation, std::uint64_t seed) {
  if (blobs < 1 || per_blob < 1 || dim < 1)
    throw Error(ErrorKind::InvalidCount, "blobs need positive blob count, size, and dimension");
  Rng rng(seed, 3);
  Matrix<double> centers(blobs, dim);
  for (auto& v : centers.values()) v = rng.uniform(-separation, separation);
  Matrix<double> m(blobs * per_blob, dim);
  std::vector<std::uint32_t> labels(blobs * per_blob);
  for (std::size_t b = 0; b < blobs; ++b)
    for (std::size_t t = 0; t < per_blob; ++t) {
      const std::size_t i = b * per_blob + t;
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = centers(b, j) + spread * rng.normal();
      labels[i] = static_cast<std::uint32_t>(b);
    }
  return {validate_matrix(std::move(m)), ClusterAssignment(std::move(labels), blobs), "blobs"};
}

/// Polynomial lift (x, y) -> (x+y, x-y, xy, x^2, y^2, x^2 y, x y^2, x^3, y^3).
inline DataMatrix lift_2_9(const DataMatrix& x) {
  if (x.cols() != 2)
    throw Error(ErrorKind::WrongInputDimension, "lift expects 2 columns, got " + std::to_string(x.cols()));
  Matrix<double> out(x.rows(), 9);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double a = x(i, 0);
    const double b = x(i, 1);
    const std::array<double, 9> row{a + b, a - b, a * b, a * a, b * b, a * a * b, a * b * b, a * a * a, b * b * b};
    std::copy(row.begin(), row.end(), out.row(i).begin());
  }
  return validate_matrix(std::move(out));
}

}  // namespace embedq
