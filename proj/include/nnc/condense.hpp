#pragma once

#include <optional>

#include "nnc/metric.hpp"
#include "nnc/nets.hpp"

namespace nnc {

enum class CondenseSource { Net, Heuristic, BruteForceOpt, Full };

std::string to_string(CondenseSource source);
CondenseSource condense_source_from_string(const std::string& name);

/// A consistent subset of sample indices with its certificate metadata.
struct CondensedSet {
  IndexList members;  // ascending
  CondenseSource source = CondenseSource::Net;
  bool verified = false;
  double retention = 0.0;  // |members| / n
};

struct ConsistencyReport {
  bool consistent = true;
  IndexList violations;  // sample points whose k-NN vote over the subset fails
};

/// k = 1: every sample point's exact nearest members must all carry its label
/// (a cross-label tie is a violation). k > 1 (odd): majority vote among the k
/// nearest members, ties in distance broken by index.
ConsistencyReport verify_consistent(const IndexList& members, const LabeledPointSet& set,
                                    int k = 1);

struct CondenseOptions {
  bool slow = false;  // brute-force net at epsilon = gamma instead of the hierarchy
  std::optional<double> gamma_hint;
  Index seed_index = 0;
};

struct CondenseResult {
  CondensedSet set;
  Margin margin;
  std::optional<NetHierarchy> hierarchy;  // absent on the slow path
};

/// Terminal-net condensing: the gamma-net of the sample is consistent.
CondenseResult condense(const LabeledPointSet& set, const CondenseOptions& opts = {});

struct PruneOptions {
  /// Radius subtracted in the removal threshold 2^i - gamma. Defaults to the
  /// gamma argument; callers may substitute the terminal net radius 2^{i_min}.
  std::optional<double> removal_margin;
};

/// Pruning pass over a consistent net: for i = 0 down to ceil(log2 gamma),
/// any surviving p whose distance to all surviving opposite-labeled members is
/// >= 2*2^i removes every other member strictly within 2^i - gamma of it.
CondensedSet prune_heuristic(const IndexList& net_members, const LabeledPointSet& set,
                             double gamma, const PruneOptions& opts = {});

/// Exhaustive minimum-cardinality consistent subset; subsets are enumerated by
/// increasing cardinality, lexicographically within each. Test oracle only.
CondensedSet brute_force_min_consistent(const LabeledPointSet& set, Index max_n = 16);

}  // namespace nnc
