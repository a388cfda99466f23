#pragma once

// Shared random-instance generators for the unit and acceptance suites.

#include <random>
#include <vector>

#include "nnc/hardness.hpp"
#include "nnc/metric.hpp"

namespace nnc::testgen {

inline MetricKind pick_metric(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return MetricKind::L1;
    case 1: return MetricKind::L2;
    case 2: return MetricKind::LInf;
    default: return MetricKind::ExplicitMatrix;
  }
}

/// Uniform points in [0,1]^d with random labels; both classes guaranteed.
/// ExplicitMatrix draws coordinates and converts to an L1 distance table.
inline LabeledPointSet random_set(std::mt19937_64& rng, Index n, Index d, MetricKind kind) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RowMatrixXd pts(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) pts(i, j) = unif(rng);
  Eigen::VectorXi labels(n);
  for (Index i = 0; i < n; ++i) labels[i] = rng() % 2 == 0 ? 1 : -1;
  if (n >= 2) {
    labels[0] = 1;
    labels[1] = -1;
  } else {
    labels[0] = 1;
  }
  if (kind != MetricKind::ExplicitMatrix) return load_points(std::move(pts), std::move(labels), kind);
  Eigen::MatrixXd dist(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      dist(i, j) = vector_distance(pts.row(i), pts.row(j), MetricKind::L1);
  return load_matrix(std::move(dist), std::move(labels));
}

/// Two well-separated blobs: positives near the origin, negatives near ones.
inline LabeledPointSet cluster_set(std::mt19937_64& rng, Index per_side, Index d,
                                   MetricKind kind, double spread = 0.05) {
  std::uniform_real_distribution<double> noise(-spread / 2.0, spread / 2.0);
  const Index n = 2 * per_side;
  RowMatrixXd pts(n, d);
  Eigen::VectorXi labels(n);
  for (Index i = 0; i < per_side; ++i) {
    for (Index j = 0; j < d; ++j) pts(i, j) = noise(rng);
    labels[i] = 1;
    for (Index j = 0; j < d; ++j) pts(per_side + i, j) = 1.0 + noise(rng);
    labels[per_side + i] = -1;
  }
  return load_points(std::move(pts), std::move(labels), kind);
}

/// 1-D lattice on [0,1] with an exact label gap: positives on the left block,
/// negatives on the right, scaled margin exactly `gap` after normalization.
inline LabeledPointSet gap_grid_1d(Index per_side, double gap) {
  const double block = (1.0 - gap) / 2.0;
  const Index n = 2 * per_side;
  RowMatrixXd pts(n, 1);
  Eigen::VectorXi labels(n);
  for (Index i = 0; i < per_side; ++i) {
    pts(i, 0) = per_side == 1 ? 0.0 : block * static_cast<double>(i) / static_cast<double>(per_side - 1);
    labels[i] = 1;
    pts(per_side + i, 0) =
        per_side == 1 ? 1.0
                      : block + gap + block * static_cast<double>(i) / static_cast<double>(per_side - 1);
    labels[per_side + i] = -1;
  }
  pts(per_side - 1, 0) = block;  // pin the gap edges exactly
  pts(per_side, 0) = block + gap;
  pts(n - 1, 0) = 1.0;
  return load_points(std::move(pts), std::move(labels), MetricKind::L1);
}

/// D-dimensional L1 lattice on [0,1]^D split along the first axis by a gap of
/// `gap * D` original units, i.e. scaled margin exactly `gap` (L1 diameter D).
inline LabeledPointSet gap_grid(int D, Index side_per_block, double gap) {
  const double gap_raw = gap * static_cast<double>(D);
  const double block = (1.0 - gap_raw) / 2.0;
  std::vector<double> axis;  // first-axis coordinates, labels split at the gap
  std::vector<int> axis_label;
  for (Index i = 0; i < side_per_block; ++i) {
    axis.push_back(side_per_block == 1
                       ? 0.0
                       : block * static_cast<double>(i) / static_cast<double>(side_per_block - 1));
    axis_label.push_back(1);
  }
  for (Index i = 0; i < side_per_block; ++i) {
    axis.push_back(block + gap_raw +
                   (side_per_block == 1
                        ? 0.0
                        : block * static_cast<double>(i) / static_cast<double>(side_per_block - 1)));
    axis_label.push_back(-1);
  }
  axis[static_cast<std::size_t>(side_per_block - 1)] = block;
  axis[static_cast<std::size_t>(side_per_block)] = block + gap_raw;
  axis.back() = 1.0;

  // Cross with a small lattice on the remaining axes.
  const Index cross_side = D == 1 ? 1 : (D == 2 ? 8 : 4);
  Index cross_count = 1;
  for (int d = 1; d < D; ++d) cross_count *= cross_side;

  const Index n = static_cast<Index>(axis.size()) * cross_count;
  RowMatrixXd pts(n, D);
  Eigen::VectorXi labels(n);
  Index row = 0;
  std::vector<Index> idx(static_cast<std::size_t>(D - 1), 0);
  for (std::size_t a = 0; a < axis.size(); ++a) {
    std::fill(idx.begin(), idx.end(), 0);
    for (Index k = 0; k < cross_count; ++k) {
      pts(row, 0) = axis[a];
      for (int d = 1; d < D; ++d)
        pts(row, d) = cross_side == 1 ? 0.0
                                      : static_cast<double>(idx[static_cast<std::size_t>(d - 1)]) /
                                            static_cast<double>(cross_side - 1);
      labels[row] = axis_label[a];
      ++row;
      for (int d = D - 2; d >= 0; --d) {
        if (++idx[static_cast<std::size_t>(d)] < cross_side) break;
        idx[static_cast<std::size_t>(d)] = 0;
      }
    }
  }
  return load_points(std::move(pts), std::move(labels), MetricKind::L1);
}

/// Small random instance for the brute-force oracle suite (n <= 12).
inline LabeledPointSet tiny_set(std::mt19937_64& rng) {
  const Index n = 3 + static_cast<Index>(rng() % 10);
  const Index d = 1 + static_cast<Index>(rng() % 3);
  return random_set(rng, n, d, pick_metric(rng));
}

/// Gadget instances double as adversarial condensing inputs.
inline LabeledPointSet gadget_set(Index w, int D, double gamma) {
  return build_gadget(w, D, gamma).to_point_set();
}

}  // namespace nnc::testgen
