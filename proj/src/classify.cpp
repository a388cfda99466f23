#include "nnc/classify.hpp"

#include <limits>

namespace nnc {

namespace {

void check_classifier(const Classifier& clf) {
  if (clf.reference == nullptr)
    fail(ErrorCode::InvalidArgument, "classifier has no reference set");
  if (clf.members.empty()) fail(ErrorCode::EmptySubset, "classifier has no members");
  for (Index m : clf.members)
    if (m < 0 || m >= clf.reference->size())
      fail(ErrorCode::InvalidArgument, "classifier member index out of range");
}

template <typename DistFn>
int vote(const Classifier& clf, DistFn&& dist) {
  double dpos = std::numeric_limits<double>::infinity();
  double dneg = std::numeric_limits<double>::infinity();
  for (Index m : clf.members) {
    const double d = dist(m);
    if (clf.reference->label(m) == 1)
      dpos = std::min(dpos, d);
    else
      dneg = std::min(dneg, d);
  }
  return dpos < dneg ? 1 : -1;
}

}  // namespace

int predict(const Classifier& clf, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  check_classifier(clf);
  return vote(clf, [&](Index m) { return clf.reference->distance_to(m, x); });
}

int predict_index(const Classifier& clf, Index q) {
  check_classifier(clf);
  if (q < 0 || q >= clf.reference->size())
    fail(ErrorCode::InvalidArgument, "predict_index: point index out of range");
  return vote(clf, [&](Index m) { return clf.reference->distance(m, q); });
}

double empirical_error(const Classifier& clf, const RowMatrixXd& test_points,
                       const Eigen::VectorXi& test_labels) {
  check_classifier(clf);
  if (test_points.rows() == 0) fail(ErrorCode::EmptyInput, "empirical_error: empty test set");
  if (test_labels.size() != test_points.rows())
    fail(ErrorCode::DimensionMismatch, "empirical_error: label count mismatch");

  Index wrong = 0;
  for (Index i = 0; i < test_points.rows(); ++i) {
    if (test_labels[i] != 1 && test_labels[i] != -1)
      fail(ErrorCode::InvalidLabel, "empirical_error: test label must be +1/-1");
    if (predict(clf, test_points.row(i)) != test_labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(test_points.rows());
}

double epsilon_consistency(const IndexList& members, const LabeledPointSet& set) {
  if (members.empty()) fail(ErrorCode::EmptySubset, "epsilon_consistency: empty subset");
  if (set.positives().empty() || set.negatives().empty())
    fail(ErrorCode::SingleClass, "epsilon_consistency: set must carry both labels");

  IndexList all(static_cast<std::size_t>(set.size()));
  for (Index i = 0; i < set.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  Classifier full{&set, all};
  Classifier sub{&set, members};

  Index disagreements = 0;
  for (Index q = 0; q < set.size(); ++q)
    if (predict_index(full, q) != predict_index(sub, q)) ++disagreements;
  return static_cast<double>(disagreements) / static_cast<double>(set.size());
}

}  // namespace nnc
