#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnc/metric.hpp"

namespace nnc {

struct LabelCoverEdge {
  Index u = 0;
  Index v = 0;
  std::vector<std::pair<Index, Index>> pairs;  // admissible (a, b) label pairs
};

/// Bipartite constraint-labeling instance; vertices and labels are dense
/// 0-based ranges of the given sizes.
struct LabelCoverInstance {
  Index num_u = 0, num_v = 0, num_a = 0, num_b = 0;
  std::vector<LabelCoverEdge> edges;

  /// m = |U| + |V| + |A| + |B| + |E| + sum |Pi_e|.
  Index total_size() const;
  void validate() const;
};

enum class PointRole {
  PPlus,
  PMinus,
  PPlusPrime,
  SE,   // edge points, negative, heavy
  SVB,  // (v, b) points, negative, weight 1
  SL,   // (e, b) points, positive, heavy
  SUA,  // (u, a) points, positive, weight c
  GadgetTwinPos,
  GadgetTwinNeg,
  GadgetApexPos,
  GadgetApexNeg,
  Base,  // original WNNC point inside an NNC reduction output
};

std::string to_string(PointRole role);
PointRole point_role_from_string(const std::string& name);

/// Explicit-matrix weighted instance produced by the first reduction. The
/// matrix is raw (unnormalized); to_point_set() validates and normalizes.
struct WnncInstance {
  Eigen::MatrixXd dist;
  Eigen::VectorXi labels;
  Eigen::VectorXd weights;
  std::vector<PointRole> roles;
  std::vector<std::string> names;
  std::vector<IndexList> se_connected;  // per S_E point: connected S_VB indices
  double c = 0.0;
  double eta = 0.0;

  Index size() const { return labels.size(); }
  Index find_role(PointRole role) const;  // first point of that role, -1 if none
  LabeledPointSet to_point_set() const;
};

/// Steps 1-4 of the Label Cover -> WNNC reduction with the four point families
/// packed into diameter-1 balls on a D-dimensional grid, eta fixed to one
/// eighth of the smallest intra-ball spacing, c = m^4, heavy weight c^2, and
/// all unspecified distances maximized by shortest-path closure.
WnncInstance reduce_labelcover_to_wnnc(const LabelCoverInstance& lc, int D);

/// Remove one point (negative-control helper for the claim verifier).
WnncInstance drop_point(const WnncInstance& inst, Index which);

/// Weight-simulation gadget G(w, D): w grid cells, each carrying a +/- twin
/// pair at mutual distance gamma/2, plus one apex per label at distance
/// side (same label) / side + gamma/2 (opposite label) from the twins.
struct GadgetGraph {
  Index w = 0;
  int D = 1;
  double gamma = 0.0;
  Index side = 0;  // ceil(w^(1/D))
  Eigen::MatrixXd dist;
  Eigen::VectorXi labels;
  Index apex_pos = 0, apex_neg = 0;

  Index size() const { return labels.size(); }
  Index twin_pos(Index cell) const { return 2 * cell; }
  Index twin_neg(Index cell) const { return 2 * cell + 1; }
  Index cell_of(Index point) const { return point / 2; }  // twins only
  LabeledPointSet to_point_set() const;
};

GadgetGraph build_gadget(Index w, int D, double gamma);

/// Twin indices forced once start_point (a twin) enters a solution: the
/// sibling first, then both twins of every unit-adjacent cell, iterated to
/// fixpoint.
IndexList gadget_forced_closure(const GadgetGraph& gadget, Index start_point);

struct WnncToNncOptions {
  int D = 1;
  /// Multiplier applied to the instance weights before materializing gadgets
  /// (the n^2 rescaling of the reduction protocol is the caller's choice).
  double weight_scale = 1.0;
  /// Twin separation; defaults to the WNNC instance's scaled margin.
  std::optional<double> gamma;
  Index max_points = 20000;
};

/// Unweighted output of the second reduction: one gadget per weighted point,
/// opposite-label gadget points at distance ceil(w^(1/D)) from their base.
struct NncInstance {
  Eigen::MatrixXd dist;
  Eigen::VectorXi labels;
  std::vector<PointRole> roles;
  std::vector<std::string> names;
  IndexList base_points;                 // output indices of the WNNC points
  std::vector<IndexList> gadget_points;  // per base: its gadget block
  double margin = 0.0;                   // achieved scaled margin (reported)

  Index size() const { return labels.size(); }
  LabeledPointSet to_point_set() const;
};

NncInstance reduce_wnnc_to_nnc(const WnncInstance& wnnc, const WnncToNncOptions& opts = {});

/// Exhaustive minimum-total-weight consistent subset (ties: lexicographically
/// smallest member list). Oracle for the WNNC objective.
struct WeightedOptimum {
  IndexList members;
  double total_weight = 0.0;
};

WeightedOptimum brute_force_min_weight(const WnncInstance& inst, Index max_n = 16);

/// Structural certification of the solution-shape claims on small instances:
///  (1) every consistent subset contains p+;
///  (2) no minimum-weight consistent subset contains a heavy (c^2) point;
///  (3) in every consistent subset avoiding S_E, each edge point's nearest
///      members are connected S_VB points.
struct ReductionClaimsReport {
  bool claim1_pplus_forced = false;
  bool claim2_no_heavy_in_optimum = false;
  bool claim3_se_covered_by_connected = false;
  Index consistent_subsets = 0;
  double optimum_weight = 0.0;
  std::string detail;
  bool all() const {
    return claim1_pplus_forced && claim2_no_heavy_in_optimum && claim3_se_covered_by_connected;
  }
};

ReductionClaimsReport verify_reduction_claims(const WnncInstance& inst, Index max_n = 16);

}  // namespace nnc
