#pragma once

#include <optional>
#include <vector>

#include "nnc/metric.hpp"

namespace nnc {

/// An epsilon-net over a LabeledPointSet: members are pairwise >= radius
/// apart (packing) and every sample point lies strictly within radius of some
/// member (covering). Distances are in normalized units.
struct Net {
  double radius = 0.0;
  IndexList members;  // ascending
};

/// Nested nets S_{2^i} for i = 0, -1, ..., terminal_exponent(), with per-level
/// neighbor lists N(p,i), child lists C(p,i) and covering pointers P(q,i).
class NetHierarchy {
 public:
  struct Level {
    int exponent = 0;                  // net radius is 2^exponent
    IndexList members;                 // insertion order: previous level first
    std::vector<IndexList> neighbors;  // by member slot; includes the member itself
    std::vector<IndexList> children;   // by member slot; members of the level below
    std::vector<Index> cover;          // P(q, exponent) for every sample point
    std::vector<int> slot;             // point index -> member slot, -1 if absent

    double radius() const;
    bool is_member(Index q) const { return slot[static_cast<std::size_t>(q)] >= 0; }
  };

  const std::vector<Level>& levels() const { return levels_; }
  const Level& top() const { return levels_.front(); }
  const Level& terminal() const { return levels_.back(); }
  int terminal_exponent() const { return levels_.back().exponent; }
  Index point_count() const { return point_count_; }

 private:
  friend class HierarchyBuilder;
  std::vector<Level> levels_;
  Index point_count_ = 0;
};

/// Algorithm: seed the net, then scan remaining points in ascending index
/// order and admit p iff dist(p, net so far) >= epsilon.
Net build_net_bruteforce(const LabeledPointSet& set, double epsilon, Index seed_index = 0);

struct HierarchyOptions {
  /// When set, levels are built down to floor(log2(gamma_hint)) before the
  /// label-consistency stopping test is applied; without it the test runs
  /// after every level.
  std::optional<double> gamma_hint;
  Index seed_index = 0;
};

/// Fast hierarchical net construction with the margin-free stopping
/// condition. Throws ZeroMargin when coincident opposite-labeled points make
/// the stopping condition unattainable.
NetHierarchy build_hierarchy(const LabeledPointSet& set, const HierarchyOptions& opts = {});

/// Bookkeeping-only variant: builds levels down to min_exponent with no
/// consistency checks. Used for doubling-dimension estimation on sets whose
/// margin may be zero.
NetHierarchy build_hierarchy_to_depth(const LabeledPointSet& set, int min_exponent,
                                      Index seed_index = 0);

/// The net at the terminal level; radius 2^{i_min} <= gamma, consistent by the
/// stopping condition.
Net extract_terminal_net(const NetHierarchy& hierarchy);

struct NetLawReport {
  bool packing_ok = true;
  bool covering_ok = true;
  std::string detail;
  bool ok() const { return packing_ok && covering_ok; }
};

/// Exhaustive O(n * |net|) packing / covering verification.
NetLawReport check_net_laws(const Net& net, const LabeledPointSet& set);

struct HierarchyLawReport {
  bool nesting_ok = true;
  bool neighbor_rule_ok = true;    // q in N(p,i) iff dist(p,q) < 4*2^i, both members
  bool neighbor_symmetry_ok = true;
  bool parent_ok = true;           // cover pointers valid; dist < 2^i below the top
  bool closure_ok = true;          // neighbors' parents are neighbors one level up
  bool children_ok = true;         // child lists partition the level below
  std::string detail;
  bool ok() const {
    return nesting_ok && neighbor_rule_ok && neighbor_symmetry_ok && parent_ok && closure_ok &&
           children_ok;
  }
};

/// Verifies every stored level against the hierarchy invariants. The seeded
/// top level is exempt from the strict parent-distance rule (a single seed
/// need not cover diameter-attaining points strictly within 2^0).
HierarchyLawReport check_hierarchy_laws(const NetHierarchy& hierarchy,
                                        const LabeledPointSet& set);

}  // namespace nnc
