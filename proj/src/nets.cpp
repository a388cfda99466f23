#include "nnc/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nnc/mathutil.hpp"

namespace nnc {

double NetHierarchy::Level::radius() const { return exp2i(exponent); }

Net build_net_bruteforce(const LabeledPointSet& set, double epsilon, Index seed_index) {
  const Index n = set.size();
  if (n == 0) fail(ErrorCode::EmptyInput, "build_net_bruteforce: empty set");
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "build_net_bruteforce: epsilon must be > 0");
  if (seed_index < 0 || seed_index >= n)
    fail(ErrorCode::InvalidArgument, "build_net_bruteforce: seed index out of range");

  Net net;
  net.radius = epsilon;
  net.members.push_back(seed_index);
  for (Index p = 0; p < n; ++p) {
    if (p == seed_index) continue;
    double dmin = std::numeric_limits<double>::infinity();
    for (Index m : net.members) dmin = std::min(dmin, set.distance(p, m));
    if (dmin >= epsilon) net.members.push_back(p);
  }
  std::sort(net.members.begin(), net.members.end());
  return net;
}

namespace {

constexpr int kExponentFloor = -1100;  // below double subnormals; unreachable for gamma > 0

}  // namespace

/// Incremental construction of the level stack. One builder per hierarchy;
/// levels are sequentially dependent.
class HierarchyBuilder {
 public:
  HierarchyBuilder(const LabeledPointSet& set, Index seed) : set_(set), seed_(seed) {
    const Index n = set.size();
    if (n == 0) fail(ErrorCode::EmptyInput, "build_hierarchy: empty set");
    if (seed < 0 || seed >= n)
      fail(ErrorCode::InvalidArgument, "build_hierarchy: seed index out of range");
    h_.point_count_ = n;
    stamp_.assign(static_cast<std::size_t>(n), 0);

    NetHierarchy::Level top;
    top.exponent = 0;
    top.members = {seed};
    top.neighbors = {{seed}};
    top.children = {{}};
    top.cover.assign(static_cast<std::size_t>(n), seed);
    top.slot.assign(static_cast<std::size_t>(n), -1);
    top.slot[static_cast<std::size_t>(seed)] = 0;
    h_.levels_.push_back(std::move(top));
  }

  /// Stopping test for the current bottom level: every point must be strictly
  /// covered, and every member within 2^i of a point must share its label.
  /// Detects coincident opposite-labeled points (ZeroMargin) on the way.
  bool bottom_level_consistent() const {
    const auto& lv = h_.levels_.back();
    const double r = lv.radius();
    for (Index q = 0; q < h_.point_count_; ++q) {
      const Index par = lv.cover[static_cast<std::size_t>(q)];
      if (!(set_.distance(q, par) < r)) return false;  // top-level seed may fail this
      const int ps = lv.slot[static_cast<std::size_t>(par)];
      for (Index m : lv.neighbors[static_cast<std::size_t>(ps)]) {
        const double d = set_.distance(q, m);
        if (d < r && set_.label(m) != set_.label(q)) {
          if (d == 0.0)
            fail(ErrorCode::ZeroMargin, "build_hierarchy: points " + std::to_string(q) + " and " +
                                            std::to_string(m) +
                                            " coincide with opposite labels");
          return false;
        }
      }
    }
    return true;
  }

  /// Builds S_{2^{i-1}} from the current bottom level S_{2^i}: candidate set
  /// T = union of C(r,i) over r in N(P(q,i),i); q joins iff dist(q,T) >= 2^{i-1}.
  void build_next_level() {
    auto& prev = h_.levels_.back();
    const int i = prev.exponent;
    if (i <= kExponentFloor)
      fail(ErrorCode::Internal, "build_hierarchy: exponent floor reached");
    const double r_child = exp2i(i - 1);
    const double r_neigh = 4.0 * r_child;
    const Index n = h_.point_count_;

    // Every level-i member is its own child at level i-1.
    for (std::size_t s = 0; s < prev.members.size(); ++s)
      prev.children[s] = {prev.members[s]};

    NetHierarchy::Level next;
    next.exponent = i - 1;
    next.cover.assign(static_cast<std::size_t>(n), -1);
    next.slot.assign(static_cast<std::size_t>(n), -1);
    next.members.reserve(prev.members.size());
    for (Index m : prev.members) {
      const int s = static_cast<int>(next.members.size());
      next.members.push_back(m);
      next.slot[static_cast<std::size_t>(m)] = s;
      next.cover[static_cast<std::size_t>(m)] = m;
      IndexList filtered;
      for (Index r : prev.neighbors[static_cast<std::size_t>(prev.slot[static_cast<std::size_t>(m)])])
        if (set_.distance(m, r) < r_neigh) filtered.push_back(r);
      next.neighbors.push_back(std::move(filtered));
    }

    IndexList candidates;
    for (Index q = 0; q < n; ++q) {
      if (next.slot[static_cast<std::size_t>(q)] >= 0) continue;  // carried member
      const Index par = prev.cover[static_cast<std::size_t>(q)];
      const int ps = prev.slot[static_cast<std::size_t>(par)];

      candidates.clear();
      ++generation_;
      for (Index r : prev.neighbors[static_cast<std::size_t>(ps)])
        for (Index c : prev.children[static_cast<std::size_t>(prev.slot[static_cast<std::size_t>(r)])])
          if (stamp_[static_cast<std::size_t>(c)] != generation_) {
            stamp_[static_cast<std::size_t>(c)] = generation_;
            candidates.push_back(c);
          }

      double dmin = std::numeric_limits<double>::infinity();  // dist(q, empty T) = +inf
      Index argmin = -1;
      for (Index c : candidates) {
        const double d = set_.distance(q, c);
        if (d < dmin) {
          dmin = d;
          argmin = c;
        }
      }

      if (dmin < r_child) {
        next.cover[static_cast<std::size_t>(q)] = argmin;
      } else {
        const int s = static_cast<int>(next.members.size());
        next.members.push_back(q);
        next.slot[static_cast<std::size_t>(q)] = s;
        next.cover[static_cast<std::size_t>(q)] = q;
        prev.children[static_cast<std::size_t>(ps)].push_back(q);
        next.neighbors.push_back({q});
        for (Index c : candidates) {
          const int cs = next.slot[static_cast<std::size_t>(c)];
          if (cs < 0 || c == q) continue;
          if (set_.distance(q, c) < r_neigh) {
            next.neighbors[static_cast<std::size_t>(s)].push_back(c);
            next.neighbors[static_cast<std::size_t>(cs)].push_back(q);
          }
        }
      }
    }
    next.children.assign(next.members.size(), {});
    h_.levels_.push_back(std::move(next));
  }

  int bottom_exponent() const { return h_.levels_.back().exponent; }
  NetHierarchy take() { return std::move(h_); }

 private:
  const LabeledPointSet& set_;
  Index seed_;
  NetHierarchy h_;
  mutable std::vector<long> stamp_;
  long generation_ = 0;
};

NetHierarchy build_hierarchy(const LabeledPointSet& set, const HierarchyOptions& opts) {
  std::optional<int> target;
  if (opts.gamma_hint) {
    const double g = *opts.gamma_hint;
    if (!(g > 0.0)) fail(ErrorCode::InvalidArgument, "build_hierarchy: gamma hint must be > 0");
    target = floor_log2(std::min(g, 1.0));
  }

  HierarchyBuilder b(set, opts.seed_index);
  while (true) {
    const bool at_or_below_target = !target || b.bottom_exponent() <= *target;
    if (at_or_below_target && b.bottom_level_consistent()) break;
    b.build_next_level();
  }
  return b.take();
}

NetHierarchy build_hierarchy_to_depth(const LabeledPointSet& set, int min_exponent,
                                      Index seed_index) {
  if (min_exponent > 0)
    fail(ErrorCode::InvalidArgument, "build_hierarchy_to_depth: exponent must be <= 0");
  if (min_exponent <= kExponentFloor)
    fail(ErrorCode::InvalidArgument, "build_hierarchy_to_depth: exponent too small");
  HierarchyBuilder b(set, seed_index);
  while (b.bottom_exponent() > min_exponent) b.build_next_level();
  return b.take();
}

Net extract_terminal_net(const NetHierarchy& hierarchy) {
  const auto& lv = hierarchy.terminal();
  Net net;
  net.radius = lv.radius();
  net.members = lv.members;
  std::sort(net.members.begin(), net.members.end());
  return net;
}

NetLawReport check_net_laws(const Net& net, const LabeledPointSet& set) {
  NetLawReport rep;
  if (net.members.empty()) {
    rep.packing_ok = rep.covering_ok = false;
    rep.detail = "net has no members";
    return rep;
  }
  for (std::size_t a = 0; a < net.members.size() && rep.packing_ok; ++a)
    for (std::size_t b = a + 1; b < net.members.size(); ++b) {
      if (set.distance(net.members[a], net.members[b]) < net.radius) {
        rep.packing_ok = false;
        rep.detail = "packing violated by members " + std::to_string(net.members[a]) + "," +
                     std::to_string(net.members[b]);
        break;
      }
    }
  for (Index q = 0; q < set.size() && rep.covering_ok; ++q) {
    bool covered = false;
    for (Index m : net.members)
      if (set.distance(q, m) < net.radius) {
        covered = true;
        break;
      }
    if (!covered) {
      rep.covering_ok = false;
      rep.detail = "point " + std::to_string(q) + " not strictly covered";
    }
  }
  return rep;
}

HierarchyLawReport check_hierarchy_laws(const NetHierarchy& h, const LabeledPointSet& set) {
  HierarchyLawReport rep;
  const auto& levels = h.levels();
  const Index n = h.point_count();

  for (std::size_t li = 0; li < levels.size(); ++li) {
    const auto& lv = levels[li];
    const double r = lv.radius();

    // Nesting: members of the level above reappear here.
    if (li > 0) {
      for (Index m : levels[li - 1].members)
        if (!lv.is_member(m)) {
          rep.nesting_ok = false;
          rep.detail = "nesting broken at exponent " + std::to_string(lv.exponent);
        }
    }

    // Neighbor rule as an iff over member pairs, plus symmetry.
    for (std::size_t sa = 0; sa < lv.members.size(); ++sa) {
      const Index p = lv.members[sa];
      for (std::size_t sb = 0; sb < lv.members.size(); ++sb) {
        const Index q = lv.members[sb];
        const bool should = set.distance(p, q) < 4.0 * r;
        const auto& np = lv.neighbors[sa];
        const bool listed = std::find(np.begin(), np.end(), q) != np.end();
        if (should != listed) {
          rep.neighbor_rule_ok = false;
          rep.detail = "neighbor rule broken for (" + std::to_string(p) + "," +
                       std::to_string(q) + ") at exponent " + std::to_string(lv.exponent);
        }
        const auto& nq = lv.neighbors[sb];
        const bool back = std::find(nq.begin(), nq.end(), p) != nq.end();
        if (listed != back) rep.neighbor_symmetry_ok = false;
      }
    }

    // Cover pointers: always a member; strictly within 2^i below the seeded top.
    for (Index q = 0; q < n; ++q) {
      const Index par = lv.cover[static_cast<std::size_t>(q)];
      if (par < 0 || !lv.is_member(par)) {
        rep.parent_ok = false;
        rep.detail = "cover pointer of " + std::to_string(q) + " invalid at exponent " +
                     std::to_string(lv.exponent);
        continue;
      }
      if (li > 0 && !(set.distance(q, par) < r)) {
        rep.parent_ok = false;
        rep.detail = "cover distance of " + std::to_string(q) + " not < 2^" +
                     std::to_string(lv.exponent);
      }
    }

    // Child lists of the level above partition this level's members.
    if (li > 0) {
      const auto& up = levels[li - 1];
      std::vector<int> seen(static_cast<std::size_t>(n), 0);
      for (std::size_t s = 0; s < up.members.size(); ++s)
        for (Index c : up.children[s]) {
          if (!lv.is_member(c)) rep.children_ok = false;
          if (++seen[static_cast<std::size_t>(c)] > 1) rep.children_ok = false;
        }
      for (Index m : lv.members)
        if (seen[static_cast<std::size_t>(m)] != 1) rep.children_ok = false;
    }

    // Parent-of-neighbors closure: neighbors at this level have neighboring
    // parents one level up (chain 2^{i+1} + 4*2^i + 2^{i+1} = 4*2^{i+1}).
    if (li > 0) {
      const auto& up = levels[li - 1];
      for (std::size_t sa = 0; sa < lv.members.size(); ++sa) {
        const Index p = lv.members[sa];
        for (Index q : lv.neighbors[sa]) {
          const Index pp = up.cover[static_cast<std::size_t>(p)];
          const Index qp = up.cover[static_cast<std::size_t>(q)];
          const auto& npp = up.neighbors[static_cast<std::size_t>(
              up.slot[static_cast<std::size_t>(pp)])];
          if (std::find(npp.begin(), npp.end(), qp) == npp.end()) {
            rep.closure_ok = false;
            rep.detail = "parents of neighbors (" + std::to_string(p) + "," + std::to_string(q) +
                         ") not neighbors at exponent " + std::to_string(up.exponent);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace nnc
