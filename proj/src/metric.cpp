#include "nnc/metric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace nnc {

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::L1: return "l1";
    case MetricKind::L2: return "l2";
    case MetricKind::LInf: return "linf";
    case MetricKind::ExplicitMatrix: return "explicit";
  }
  return "?";
}

MetricKind metric_kind_from_string(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "l1") return MetricKind::L1;
  if (s == "l2") return MetricKind::L2;
  if (s == "linf" || s == "loo" || s == "chebyshev") return MetricKind::LInf;
  if (s == "explicit" || s == "matrix" || s == "explicit-matrix") return MetricKind::ExplicitMatrix;
  fail(ErrorCode::InvalidArgument, "unknown metric '" + name + "'");
}

namespace {

void validate_labels(const Eigen::VectorXi& labels) {
  for (Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 1 && labels[i] != -1)
      fail(ErrorCode::InvalidLabel,
           "label at index " + std::to_string(i) + " is " + std::to_string(labels[i]) +
               "; labels must be +1 or -1");
}

void split_classes(const Eigen::VectorXi& labels, IndexList& pos, IndexList& neg) {
  for (Index i = 0; i < labels.size(); ++i)
    (labels[i] == 1 ? pos : neg).push_back(i);
}

double raw_diameter_exact(const LabeledPointSet& set) {
  double best = 0.0;
  const Index n = set.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) best = std::max(best, set.raw_distance(i, j));
  return best;
}

// Doubled farthest-point radius: an upper bound on the diameter within 2x.
double raw_diameter_approx(const LabeledPointSet& set) {
  double r = 0.0;
  for (Index j = 1; j < set.size(); ++j) r = std::max(r, set.raw_distance(0, j));
  return 2.0 * r;
}

double pick_diameter(const LabeledPointSet& set, const LoadOptions& opts) {
  if (opts.approximate_diameter && set.size() > opts.approximation_threshold)
    return raw_diameter_approx(set);
  return raw_diameter_exact(set);
}

}  // namespace

LabeledPointSet load_points(RowMatrixXd points, Eigen::VectorXi labels, MetricKind kind,
                            const LoadOptions& opts) {
  if (points.rows() == 0) fail(ErrorCode::EmptyInput, "load_points: no points");
  if (kind == MetricKind::ExplicitMatrix)
    fail(ErrorCode::InvalidArgument, "load_points: use load_matrix for explicit metrics");
  if (labels.size() != points.rows())
    fail(ErrorCode::DimensionMismatch,
         "load_points: " + std::to_string(points.rows()) + " points but " +
             std::to_string(labels.size()) + " labels");
  if (!points.allFinite())
    fail(ErrorCode::InvalidArgument, "load_points: non-finite coordinate");
  validate_labels(labels);

  LabeledPointSet set;
  set.points_ = std::move(points);
  set.labels_ = std::move(labels);
  set.kind_ = kind;
  split_classes(set.labels_, set.positives_, set.negatives_);

  if (set.size() >= 2) {
    const double diam = pick_diameter(set, opts);
    if (diam == 0.0)
      fail(ErrorCode::ZeroDiameter, "load_points: all points coincide");
    set.scale_ = 1.0 / diam;
  }
  return set;
}

LabeledPointSet load_matrix(Eigen::MatrixXd distances, Eigen::VectorXi labels,
                            const LoadOptions& opts) {
  const Index n = distances.rows();
  if (n == 0) fail(ErrorCode::EmptyInput, "load_matrix: empty matrix");
  if (distances.cols() != n)
    fail(ErrorCode::DimensionMismatch, "load_matrix: matrix is not square");
  if (labels.size() != n)
    fail(ErrorCode::DimensionMismatch, "load_matrix: label count does not match matrix size");
  if (!distances.allFinite())
    fail(ErrorCode::MetricViolation, "load_matrix: non-finite entry");
  validate_labels(labels);

  const double tol = opts.matrix_tolerance;
  for (Index i = 0; i < n; ++i) {
    if (std::abs(distances(i, i)) > tol)
      fail(ErrorCode::MetricViolation, "diagonal entry (" + std::to_string(i) + "," +
                                           std::to_string(i) + ") is nonzero");
    for (Index j = 0; j < n; ++j) {
      if (distances(i, j) < -tol)
        fail(ErrorCode::MetricViolation, "negative distance at (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
      if (std::abs(distances(i, j) - distances(j, i)) > tol)
        fail(ErrorCode::MetricViolation, "asymmetry at (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
    }
  }

  auto check_triangle = [&](Index i, Index j, Index k) {
    if (distances(i, j) > distances(i, k) + distances(k, j) + tol)
      fail(ErrorCode::MetricViolation,
           "triangle inequality violated for (" + std::to_string(i) + "," + std::to_string(j) +
               "," + std::to_string(k) + ")");
  };
  if (n <= opts.exhaustive_triangle_limit) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        for (Index k = 0; k < n; ++k) check_triangle(i, j, k);
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (Index t = 0; t < n * n; ++t) check_triangle(pick(rng), pick(rng), pick(rng));
  }

  // Canonicalize within tolerance: exact symmetry, zero diagonal, nonnegative.
  Eigen::MatrixXd sym = 0.5 * (distances + distances.transpose());
  sym.diagonal().setZero();
  sym = sym.cwiseMax(0.0);

  LabeledPointSet set;
  set.explicit_ = std::move(sym);
  set.labels_ = std::move(labels);
  set.kind_ = MetricKind::ExplicitMatrix;
  split_classes(set.labels_, set.positives_, set.negatives_);

  if (n >= 2) {
    const double diam = set.explicit_.maxCoeff();
    if (diam == 0.0) fail(ErrorCode::ZeroDiameter, "load_matrix: all points coincide");
    set.scale_ = 1.0 / diam;
  }
  return set;
}

double diameter(const LabeledPointSet& set) {
  if (set.size() < 2)
    fail(ErrorCode::TooFewPoints, "diameter: need at least 2 points");
  return raw_diameter_exact(set);
}

Margin scaled_margin(const LabeledPointSet& set) {
  const auto& pos = set.positives();
  const auto& neg = set.negatives();
  if (pos.empty() || neg.empty())
    fail(ErrorCode::SingleClass, "scaled_margin: both labels must be present");

  Margin m;
  m.gamma = std::numeric_limits<double>::infinity();
  for (Index i : pos)
    for (Index j : neg) {
      const double d = set.distance(i, j);
      if (d < m.gamma) {
        m.gamma = d;
        m.positive_index = i;
        m.negative_index = j;
      }
    }
  if (m.gamma == 0.0)
    fail(ErrorCode::ZeroMargin, "scaled_margin: points " + std::to_string(m.positive_index) +
                                    " and " + std::to_string(m.negative_index) +
                                    " coincide with opposite labels");
  m.gamma = std::min(m.gamma, 1.0);  // guard the last-ulp of diam normalization
  return m;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  if (delim == '\0') {  // whitespace mode
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
  }
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

RowMatrixXd parse_numeric_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  Index lineno = 0;
  char delim = delimiter;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (delim == '\0' && delimiter == '\0')
      delim = line.find(',') != std::string::npos ? ',' : '\0';

    auto fields = split_fields(line, delim);
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string& f = fields[c];
      try {
        std::size_t used = 0;
        double v = std::stod(f, &used);
        while (used < f.size() && std::isspace(static_cast<unsigned char>(f[used]))) ++used;
        if (used != f.size()) throw std::invalid_argument(f);
        row.push_back(v);
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, path + ": row " + std::to_string(lineno) + ", column " +
                                        std::to_string(c + 1) + ": '" + f + "' is not numeric");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorCode::ParseError, path + ": row " + std::to_string(lineno) + " has " +
                                      std::to_string(row.size()) + " fields, expected " +
                                      std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::EmptyInput, path + ": no data rows");

  RowMatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

namespace {

int map_label(double raw, const std::map<long, int>& label_map, const std::string& where) {
  if (label_map.empty()) {
    if (raw == 1.0) return 1;
    if (raw == -1.0) return -1;
    fail(ErrorCode::InvalidLabel, where + ": label must be +1/-1 when no label map is given");
  }
  const double r = std::round(raw);
  if (std::abs(raw - r) > 1e-9)
    fail(ErrorCode::InvalidLabel, where + ": non-integral class value");
  auto it = label_map.find(static_cast<long>(r));
  if (it == label_map.end())
    fail(ErrorCode::InvalidLabel, where + ": class value " + std::to_string(static_cast<long>(r)) +
                                      " not in label map");
  if (it->second != 1 && it->second != -1)
    fail(ErrorCode::InvalidLabel, where + ": label map must target +1/-1");
  return it->second;
}

}  // namespace

LabeledPointSet load_points_csv(const std::string& path, MetricKind kind, const CsvFormat& fmt,
                                const LoadOptions& opts) {
  RowMatrixXd raw = parse_numeric_csv(path, fmt.delimiter);
  const Index cols = raw.cols();
  Index label_col = fmt.label_column < 0 ? cols + fmt.label_column : fmt.label_column;
  if (label_col < 0 || label_col >= cols)
    fail(ErrorCode::InvalidArgument, path + ": label column out of range");

  IndexList feat = fmt.feature_columns;
  if (feat.empty()) {
    for (Index c = 0; c < cols; ++c)
      if (c != label_col) feat.push_back(c);
  }
  for (Index c : feat)
    if (c < 0 || c >= cols)
      fail(ErrorCode::InvalidArgument, path + ": feature column out of range");

  RowMatrixXd pts(raw.rows(), static_cast<Index>(feat.size()));
  Eigen::VectorXi labels(raw.rows());
  for (Index i = 0; i < raw.rows(); ++i) {
    for (std::size_t j = 0; j < feat.size(); ++j) pts(i, static_cast<Index>(j)) = raw(i, feat[j]);
    labels[i] = map_label(raw(i, label_col), fmt.label_map, path);
  }
  return load_points(std::move(pts), std::move(labels), kind, opts);
}

LabeledPointSet load_matrix_csv(const std::string& matrix_path, const std::string& labels_path,
                                const LoadOptions& opts) {
  RowMatrixXd raw = parse_numeric_csv(matrix_path);
  RowMatrixXd lab = parse_numeric_csv(labels_path);
  if (lab.cols() != 1)
    fail(ErrorCode::ParseError, labels_path + ": expected one label per line");
  Eigen::VectorXi labels(lab.rows());
  for (Index i = 0; i < lab.rows(); ++i) {
    if (lab(i, 0) != 1.0 && lab(i, 0) != -1.0)
      fail(ErrorCode::InvalidLabel, labels_path + ": line " + std::to_string(i + 1) +
                                        " must be +1 or -1");
    labels[i] = static_cast<int>(lab(i, 0));
  }
  return load_matrix(Eigen::MatrixXd(raw), std::move(labels), opts);
}

}  // namespace nnc
