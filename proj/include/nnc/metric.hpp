#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "nnc/errors.hpp"

namespace nnc {

using Index = Eigen::Index;
using IndexList = std::vector<Index>;
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Built-in metrics. ExplicitMatrix sets carry their own n x n distance table.
enum class MetricKind { L1, L2, LInf, ExplicitMatrix };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

/// Distance between two coordinate rows under a Minkowski metric.
template <typename DerivedA, typename DerivedB>
double vector_distance(const Eigen::MatrixBase<DerivedA>& a,
                       const Eigen::MatrixBase<DerivedB>& b, MetricKind kind) {
  switch (kind) {
    case MetricKind::L1: return (a - b).template lpNorm<1>();
    case MetricKind::L2: return (a - b).template lpNorm<2>();
    case MetricKind::LInf: return (a - b).template lpNorm<Eigen::Infinity>();
    case MetricKind::ExplicitMatrix: break;
  }
  fail(ErrorCode::InvalidArgument, "vector_distance: metric has no coordinate form");
}

struct LoadOptions {
  /// Replace the exact O(n^2) diameter scan with the doubled farthest-point
  /// 2-approximation once n exceeds approximation_threshold.
  bool approximate_diameter = false;
  Index approximation_threshold = 50000;
  /// Tolerance for symmetry / zero-diagonal / triangle validation of
  /// explicit matrices.
  double matrix_tolerance = 1e-9;
  /// Triangle inequality is checked exhaustively up to this many points and
  /// by seeded sampling beyond.
  Index exhaustive_triangle_limit = 512;
};

/// Scaled margin gamma = dist(S+, S-) / diam(S) with the witness pair
/// realizing the minimum (ties broken by lowest positive, then negative index).
struct Margin {
  double gamma = 0.0;
  Index positive_index = -1;
  Index negative_index = -1;
};

/// Immutable labeled point set. Coordinates (or the explicit matrix) are kept
/// in original units; `scale()` is the factor that normalizes the diameter to 1
/// and `distance()` returns normalized values. Safe to share across threads.
class LabeledPointSet {
 public:
  Index size() const { return labels_.size(); }
  Index dim() const { return points_.cols(); }
  MetricKind metric() const { return kind_; }
  double scale() const { return scale_; }

  int label(Index i) const { return labels_[i]; }
  const Eigen::VectorXi& labels() const { return labels_; }
  const IndexList& positives() const { return positives_; }
  const IndexList& negatives() const { return negatives_; }

  bool has_coordinates() const { return kind_ != MetricKind::ExplicitMatrix; }
  const RowMatrixXd& points() const { return points_; }
  const Eigen::MatrixXd& matrix() const { return explicit_; }

  /// Normalized distance between sample points.
  double distance(Index i, Index j) const {
    return kind_ == MetricKind::ExplicitMatrix
               ? explicit_(i, j) * scale_
               : vector_distance(points_.row(i), points_.row(j), kind_) * scale_;
  }

  /// Distance in original input units.
  double raw_distance(Index i, Index j) const {
    return kind_ == MetricKind::ExplicitMatrix
               ? explicit_(i, j)
               : vector_distance(points_.row(i), points_.row(j), kind_);
  }

  /// Normalized distance from sample point i to an external point given in
  /// original units. Vector mode only.
  double distance_to(Index i, const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    if (kind_ == MetricKind::ExplicitMatrix)
      fail(ErrorCode::InvalidArgument,
           "distance_to: explicit-matrix sets cannot measure out-of-sample points");
    if (x.size() != points_.cols())
      fail(ErrorCode::DimensionMismatch, "distance_to: query dimension mismatch");
    return vector_distance(points_.row(i), x, kind_) * scale_;
  }

 private:
  friend LabeledPointSet load_points(RowMatrixXd, Eigen::VectorXi, MetricKind,
                                     const LoadOptions&);
  friend LabeledPointSet load_matrix(Eigen::MatrixXd, Eigen::VectorXi, const LoadOptions&);

  RowMatrixXd points_;       // n x d, vector mode
  Eigen::MatrixXd explicit_; // n x n, explicit mode
  Eigen::VectorXi labels_;   // entries in {+1, -1}
  MetricKind kind_ = MetricKind::L2;
  double scale_ = 1.0;
  IndexList positives_, negatives_;
};

/// Validate and load a coordinate point set; records scale = 1/diam(S).
LabeledPointSet load_points(RowMatrixXd points, Eigen::VectorXi labels, MetricKind kind,
                            const LoadOptions& opts = {});

/// Validate (symmetry, zero diagonal, triangle inequality) and load an
/// explicit distance matrix. The stored matrix is symmetrized and clamped
/// within the validation tolerance.
LabeledPointSet load_matrix(Eigen::MatrixXd distances, Eigen::VectorXi labels,
                            const LoadOptions& opts = {});

/// Exact max pairwise distance in original units, O(n^2). Requires n >= 2.
double diameter(const LabeledPointSet& set);

/// Minimum opposite-label normalized distance. Requires both labels present
/// and a strictly positive minimum.
Margin scaled_margin(const LabeledPointSet& set);

struct CsvFormat {
  char delimiter = '\0';          // '\0' = auto-detect (comma, else whitespace)
  IndexList feature_columns;      // empty = every column except the label
  Index label_column = -1;        // -1 = last column
  std::map<long, int> label_map;  // raw class value -> +1/-1; empty = file holds +/-1
};

/// Whole-file numeric CSV parse; rows must be rectangular.
RowMatrixXd parse_numeric_csv(const std::string& path, char delimiter = '\0');

/// One row per point, feature columns then a label column.
LabeledPointSet load_points_csv(const std::string& path, MetricKind kind,
                                const CsvFormat& fmt = {}, const LoadOptions& opts = {});

/// Square distance-matrix CSV plus a label file (one +1/-1 per line).
LabeledPointSet load_matrix_csv(const std::string& matrix_path,
                                const std::string& labels_path,
                                const LoadOptions& opts = {});

}  // namespace nnc
