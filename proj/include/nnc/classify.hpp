#pragma once

#include "nnc/metric.hpp"

namespace nnc {

/// 1-NN classifier nu_S over a member subset of an immutable reference set.
/// Non-owning view; the reference must outlive the classifier.
struct Classifier {
  const LabeledPointSet* reference = nullptr;
  IndexList members;
};

/// +1 iff the nearest positive member is strictly closer than the nearest
/// negative member; -1 otherwise (ties and an absent positive class fall into
/// the else branch). Vector-mode sets only; x is in original units.
int predict(const Classifier& clf, const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Same rule for an in-sample point; works in explicit-matrix mode too.
int predict_index(const Classifier& clf, Index q);

/// Fraction of mispredicted labels over a labeled test set.
double empirical_error(const Classifier& clf, const RowMatrixXd& test_points,
                       const Eigen::VectorXi& test_labels);

/// Fraction of sample points where nu_{members} disagrees with nu_S over the
/// full sample; 0 is epsilon-consistency in the strict sense.
double epsilon_consistency(const IndexList& members, const LabeledPointSet& set);

}  // namespace nnc
