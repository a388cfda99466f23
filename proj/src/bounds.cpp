#include "nnc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nnc/classify.hpp"
#include "nnc/mathutil.hpp"

namespace nnc {

PackingBound packing_bound(double beta, double alpha, int ddim) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    fail(ErrorCode::InvalidArgument, "packing_bound: alpha and beta must be positive");
  if (ddim < 0) fail(ErrorCode::InvalidArgument, "packing_bound: ddim must be >= 0");

  const double ratio = beta / alpha;
  std::uint64_t base = ratio <= 1.0 ? 1 : static_cast<std::uint64_t>(std::ceil(ratio));

  constexpr std::uint64_t kCap = 1ULL << 63;
  PackingBound out;
  unsigned __int128 acc = 1;
  for (int e = 0; e < ddim + 1; ++e) {
    acc *= base;
    if (acc > kCap) {
      out.value = kCap;
      out.saturated = true;
      return out;
    }
  }
  out.value = static_cast<std::uint64_t>(acc);
  return out;
}

namespace {

void check_bound_inputs(Index n, std::uint64_t subset_size, double delta) {
  if (subset_size < 1) fail(ErrorCode::InvalidArgument, "bounds: subset size must be >= 1");
  if (n < 1) fail(ErrorCode::InvalidArgument, "bounds: n must be >= 1");
  if (subset_size >= static_cast<std::uint64_t>(n))
    fail(ErrorCode::SubsetTooLarge, "bounds: subset size must be < n");
  if (!(delta > 0.0) || !(delta < 1.0))
    fail(ErrorCode::InvalidArgument, "bounds: delta must lie in (0,1)");
}

}  // namespace

double bound_consistent(Index n, std::uint64_t subset_size, double delta) {
  check_bound_inputs(n, subset_size, delta);
  const double nn = static_cast<double>(n);
  const double ell = static_cast<double>(subset_size);
  return (ell * std::log(nn) + std::log(nn) + std::log(1.0 / delta)) / (nn - ell);
}

double bound_eps_consistent(Index n, std::uint64_t subset_size, double epsilon, double delta) {
  check_bound_inputs(n, subset_size, delta);
  if (!(epsilon >= 0.0) || !(epsilon <= 1.0))
    fail(ErrorCode::InvalidArgument, "bounds: epsilon must lie in [0,1]");
  const double nn = static_cast<double>(n);
  const double ell = static_cast<double>(subset_size);
  const double linear = epsilon * nn / (nn - ell);
  const double root =
      std::sqrt((ell * std::log(nn) + 2.0 * std::log(nn) + std::log(1.0 / delta)) /
                (2.0 * (nn - ell)));
  return linear + root;
}

NetSizeBound net_size_bound(Index n, double epsilon, double delta, double gamma, int ddim) {
  if (!(gamma > 0.0) || gamma > 1.0)
    fail(ErrorCode::InvalidArgument, "net_size_bound: gamma must lie in (0,1]");
  NetSizeBound out;
  out.ell = packing_bound(1.0, gamma, ddim);
  if (out.ell.saturated || out.ell.value >= static_cast<std::uint64_t>(n)) return out;
  out.value = bound_eps_consistent(n, out.ell.value, epsilon, delta);
  return out;
}

double fat_shattering_bound(Index n, double epsilon, double delta, double gamma, int ddim_ambient) {
  if (!(gamma > 0.0)) fail(ErrorCode::InvalidArgument, "fat_shattering_bound: gamma must be > 0");
  if (n < 1) fail(ErrorCode::InvalidArgument, "fat_shattering_bound: n must be >= 1");
  if (!(delta > 0.0) || !(delta < 1.0))
    fail(ErrorCode::InvalidArgument, "fat_shattering_bound: delta must lie in (0,1)");
  const PackingBound pb = packing_bound(16.0, gamma, ddim_ambient);
  const double dg = pb.saturated
                        ? std::pow(std::max(1.0, std::ceil(16.0 / gamma)),
                                   static_cast<double>(ddim_ambient + 1))
                        : static_cast<double>(pb.value);
  const double nn = static_cast<double>(n);
  const double inner = dg * std::log(34.0 * std::numbers::e * nn / dg) * std::log2(578.0 * nn) +
                       std::log(4.0 / delta);
  return epsilon + std::sqrt((2.0 / nn) * inner);
}

DdimEstimate estimate_ddim(const NetHierarchy& hierarchy) {
  const auto& levels = hierarchy.levels();
  if (levels.size() < 2)
    fail(ErrorCode::TooFewLevels, "estimate_ddim: need at least two hierarchy levels");

  DdimEstimate est;
  for (const auto& lv : levels)
    est.per_scale.emplace_back(lv.exponent, static_cast<Index>(lv.members.size()));
  for (std::size_t k = 1; k < est.per_scale.size(); ++k) {
    const double ratio = static_cast<double>(est.per_scale[k].second) /
                         static_cast<double>(est.per_scale[k - 1].second);
    est.value = std::max(est.value, std::log2(ratio));
  }
  return est;
}

namespace {

/// Greedy (epsilon, gamma)-separability witness: repeatedly drop the point
/// participating in the most sub-gamma opposite-label pairs.
IndexList greedy_margin_witness(const LabeledPointSet& set, double gamma) {
  std::vector<char> alive(static_cast<std::size_t>(set.size()), 1);
  while (true) {
    std::vector<Index> degree(static_cast<std::size_t>(set.size()), 0);
    bool any = false;
    for (Index i : set.positives()) {
      if (!alive[static_cast<std::size_t>(i)]) continue;
      for (Index j : set.negatives()) {
        if (!alive[static_cast<std::size_t>(j)]) continue;
        if (set.distance(i, j) < gamma) {
          ++degree[static_cast<std::size_t>(i)];
          ++degree[static_cast<std::size_t>(j)];
          any = true;
        }
      }
    }
    if (!any) break;
    Index worst = -1;
    for (Index q = 0; q < set.size(); ++q)
      if (alive[static_cast<std::size_t>(q)] &&
          (worst < 0 || degree[static_cast<std::size_t>(q)] > degree[static_cast<std::size_t>(worst)]))
        worst = q;
    alive[static_cast<std::size_t>(worst)] = 0;
  }
  IndexList witness;
  for (Index q = 0; q < set.size(); ++q)
    if (alive[static_cast<std::size_t>(q)]) witness.push_back(q);
  return witness;
}

}  // namespace

SrmResult srm_grid_search(const LabeledPointSet& set, std::span<const double> gamma_grid,
                          double delta) {
  if (gamma_grid.empty()) fail(ErrorCode::InvalidArgument, "srm_grid_search: empty grid");
  for (double g : gamma_grid)
    if (!(g > 0.0) || g > 1.0)
      fail(ErrorCode::InvalidArgument, "srm_grid_search: grid gammas must lie in (0,1]");
  if (set.positives().empty() || set.negatives().empty())
    fail(ErrorCode::SingleClass, "srm_grid_search: set must carry both labels");

  const double min_gamma = *std::min_element(gamma_grid.begin(), gamma_grid.end());
  const int depth = std::max(floor_log2(min_gamma), -40);
  int ddim = 0;
  if (set.size() >= 2) {
    const auto h = build_hierarchy_to_depth(set, std::min(depth, -1));
    ddim = static_cast<int>(std::ceil(estimate_ddim(h).value));
  }

  std::optional<SrmResult> best;
  for (double g : gamma_grid) {
    IndexList witness = greedy_margin_witness(set, g);
    if (witness.empty()) continue;
    bool has_pos = false, has_neg = false;
    for (Index m : witness) (set.label(m) == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) continue;  // margin of the witness undefined

    double achieved_gamma = std::numeric_limits<double>::infinity();
    for (Index i : witness)
      for (Index j : witness)
        if (set.label(i) == 1 && set.label(j) == -1)
          achieved_gamma = std::min(achieved_gamma, set.distance(i, j));
    achieved_gamma = std::min(achieved_gamma, 1.0);

    const double eps = epsilon_consistency(witness, set);
    const auto cb = net_size_bound(set.size(), eps, delta, achieved_gamma, ddim);
    if (cb.vacuous()) continue;
    if (!best || *cb.value < best->bound) {
      best = SrmResult{eps, achieved_gamma, witness, *cb.value};
    }
  }
  if (!best) fail(ErrorCode::NoFeasiblePoint, "srm_grid_search: every grid cell is vacuous");
  return *best;
}

}  // namespace nnc
