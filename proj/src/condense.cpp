#include "nnc/condense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nnc/mathutil.hpp"

namespace nnc {

std::string to_string(CondenseSource source) {
  switch (source) {
    case CondenseSource::Net: return "net";
    case CondenseSource::Heuristic: return "heuristic";
    case CondenseSource::BruteForceOpt: return "bruteforce-opt";
    case CondenseSource::Full: return "full";
  }
  return "?";
}

CondenseSource condense_source_from_string(const std::string& name) {
  if (name == "net") return CondenseSource::Net;
  if (name == "heuristic") return CondenseSource::Heuristic;
  if (name == "bruteforce-opt") return CondenseSource::BruteForceOpt;
  if (name == "full") return CondenseSource::Full;
  fail(ErrorCode::InvalidArgument, "unknown condensed-set source '" + name + "'");
}

ConsistencyReport verify_consistent(const IndexList& members, const LabeledPointSet& set,
                                    int k) {
  if (members.empty()) fail(ErrorCode::EmptySubset, "verify_consistent: empty subset");
  if (k < 1 || k % 2 == 0)
    fail(ErrorCode::InvalidArgument, "verify_consistent: k must be odd and >= 1");
  if (static_cast<std::size_t>(k) > members.size())
    fail(ErrorCode::InvalidArgument, "verify_consistent: k exceeds subset size");

  ConsistencyReport rep;
  const Index n = set.size();
  if (k == 1) {
    for (Index q = 0; q < n; ++q) {
      double dmin = std::numeric_limits<double>::infinity();
      for (Index m : members) dmin = std::min(dmin, set.distance(q, m));
      bool ok = true;
      for (Index m : members)
        if (set.distance(q, m) == dmin && set.label(m) != set.label(q)) {
          ok = false;
          break;
        }
      if (!ok) rep.violations.push_back(q);
    }
  } else {
    std::vector<std::pair<double, Index>> order(members.size());
    for (Index q = 0; q < n; ++q) {
      for (std::size_t s = 0; s < members.size(); ++s)
        order[s] = {set.distance(q, members[s]), members[s]};
      std::sort(order.begin(), order.end());
      int vote = 0;
      for (int s = 0; s < k; ++s) vote += set.label(order[static_cast<std::size_t>(s)].second);
      if ((vote > 0 ? 1 : -1) != set.label(q)) rep.violations.push_back(q);
    }
  }
  rep.consistent = rep.violations.empty();
  return rep;
}

CondenseResult condense(const LabeledPointSet& set, const CondenseOptions& opts) {
  CondenseResult result;
  result.margin = scaled_margin(set);  // surfaces SingleClass / ZeroMargin

  Net net;
  if (opts.slow) {
    net = build_net_bruteforce(set, result.margin.gamma, opts.seed_index);
  } else {
    HierarchyOptions hopts;
    hopts.gamma_hint = opts.gamma_hint;
    hopts.seed_index = opts.seed_index;
    result.hierarchy = build_hierarchy(set, hopts);
    net = extract_terminal_net(*result.hierarchy);
  }

  CondensedSet out;
  out.members = std::move(net.members);
  out.source = CondenseSource::Net;
  out.retention = static_cast<double>(out.members.size()) / static_cast<double>(set.size());
  auto rep = verify_consistent(out.members, set, 1);
  if (!rep.consistent)
    fail(ErrorCode::Internal,
         "condense: produced net is not consistent (" + std::to_string(rep.violations.size()) +
             " violations)");
  out.verified = true;
  result.set = std::move(out);
  return result;
}

CondensedSet prune_heuristic(const IndexList& net_members, const LabeledPointSet& set,
                             double gamma, const PruneOptions& opts) {
  if (!(gamma > 0.0) || gamma > 1.0)
    fail(ErrorCode::InvalidArgument, "prune_heuristic: gamma must be in (0, 1]");
  auto input = verify_consistent(net_members, set, 1);
  if (!input.consistent)
    fail(ErrorCode::InconsistentInput, "prune_heuristic: input subset is not consistent");
  const double removal_margin = opts.removal_margin.value_or(gamma);

  IndexList surviving = net_members;
  std::sort(surviving.begin(), surviving.end());
  std::vector<char> alive(surviving.size(), 1);

  const int bottom = ceil_log2(gamma);
  for (int i = 0; i >= bottom; --i) {
    const double guard = 2.0 * exp2i(i);
    const double removal = exp2i(i) - removal_margin;
    if (removal <= 0.0) continue;  // inner loop cannot remove anything
    for (std::size_t a = 0; a < surviving.size(); ++a) {
      if (!alive[a]) continue;
      const Index p = surviving[a];
      bool clear = true;
      for (std::size_t b = 0; b < surviving.size(); ++b) {
        if (!alive[b] || set.label(surviving[b]) == set.label(p)) continue;
        if (set.distance(p, surviving[b]) < guard) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      for (std::size_t b = 0; b < surviving.size(); ++b) {
        if (!alive[b] || b == a) continue;
        if (set.distance(p, surviving[b]) < removal) alive[b] = 0;
      }
    }
  }

  CondensedSet out;
  for (std::size_t a = 0; a < surviving.size(); ++a)
    if (alive[a]) out.members.push_back(surviving[a]);
  out.source = CondenseSource::Heuristic;
  out.retention = static_cast<double>(out.members.size()) / static_cast<double>(set.size());
  auto rep = verify_consistent(out.members, set, 1);
  if (!rep.consistent)
    fail(ErrorCode::Internal, "prune_heuristic: output lost consistency");
  out.verified = true;
  return out;
}

CondensedSet brute_force_min_consistent(const LabeledPointSet& set, Index max_n) {
  const Index n = set.size();
  if (n > max_n)
    fail(ErrorCode::TooLarge, "brute_force_min_consistent: n = " + std::to_string(n) +
                                  " exceeds limit " + std::to_string(max_n));

  IndexList subset;
  // Lexicographically ordered k-combinations of {0..n-1}.
  auto search = [&](auto&& self, Index next, Index remaining) -> bool {
    if (remaining == 0) {
      auto rep = verify_consistent(subset, set, 1);
      return rep.consistent;
    }
    for (Index c = next; c <= n - remaining; ++c) {
      subset.push_back(c);
      if (self(self, c + 1, remaining - 1)) return true;
      subset.pop_back();
    }
    return false;
  };

  for (Index k = 1; k <= n; ++k) {
    subset.clear();
    if (search(search, 0, k)) {
      CondensedSet out;
      out.members = subset;
      out.source = CondenseSource::BruteForceOpt;
      out.verified = true;
      out.retention = static_cast<double>(k) / static_cast<double>(n);
      return out;
    }
  }
  // Only coincident opposite-labeled points make every subset inconsistent.
  fail(ErrorCode::ZeroMargin, "brute_force_min_consistent: no consistent subset exists");
}

}  // namespace nnc
