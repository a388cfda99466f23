#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "nnc/metric.hpp"
#include "nnc/nets.hpp"

namespace nnc {

/// ceil(beta/alpha)^(ddim+1) in exact integer arithmetic, saturating at 2^63.
struct PackingBound {
  std::uint64_t value = 0;
  bool saturated = false;
};

PackingBound packing_bound(double beta, double alpha, int ddim);

/// Consistent-subset generalization bound:
/// (|S~| log n + log n + log(1/delta)) / (n - |S~|), natural logs.
double bound_consistent(Index n, std::uint64_t subset_size, double delta);

/// Epsilon-consistent bound:
/// eps*n/(n-|S~|) + sqrt((|S~| log n + 2 log n + log(1/delta)) / (2(n-|S~|))).
double bound_eps_consistent(Index n, std::uint64_t subset_size, double epsilon, double delta);

/// bound_eps_consistent at subset size l = ceil(1/gamma)^(ddim+1). A vacuous
/// bound (l >= n, or l saturated) is reported as an absent value.
struct NetSizeBound {
  PackingBound ell;
  std::optional<double> value;
  bool vacuous() const { return !value.has_value(); }
};

NetSizeBound net_size_bound(Index n, double epsilon, double delta, double gamma, int ddim);

/// Prior comparison bound:
/// eps + sqrt((2/n) (d_g ln(34 e n / d_g) log2(578 n) + ln(4/delta)))
/// with d_g = ceil(16/gamma)^(ddim_ambient+1).
double fat_shattering_bound(Index n, double epsilon, double delta, double gamma, int ddim_ambient);

/// Level-ratio doubling-dimension estimate: max over consecutive hierarchy
/// levels of log2(|S_{2^{i-1}}| / |S_{2^i}|).
struct DdimEstimate {
  double value = 0.0;
  std::string method = "level-ratio";
  std::vector<std::pair<int, Index>> per_scale;  // (exponent, level size), top down
};

DdimEstimate estimate_ddim(const NetHierarchy& hierarchy);

/// Grid-search structural risk minimization: per grid gamma, greedily drop
/// margin-violating points, then score the witness with net_size_bound at the
/// achieved (epsilon, gamma).
struct SrmResult {
  double epsilon_star = 0.0;
  double gamma_star = 0.0;
  IndexList members;  // witness, ascending
  double bound = 0.0;
};

SrmResult srm_grid_search(const LabeledPointSet& set, std::span<const double> gamma_grid,
                          double delta);

}  // namespace nnc
