#include "nnc/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Index LabelCoverInstance::total_size() const {
  Index pairs = 0;
  for (const auto& e : edges) pairs += static_cast<Index>(e.pairs.size());
  return num_u + num_v + num_a + num_b + static_cast<Index>(edges.size()) + pairs;
}

void LabelCoverInstance::validate() const {
  if (num_u < 1 || num_v < 1 || num_a < 1 || num_b < 1)
    fail(ErrorCode::InvalidArgument, "label cover: vertex and label sets must be nonempty");
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= num_u || e.v < 0 || e.v >= num_v)
      fail(ErrorCode::InvalidArgument, "label cover: edge endpoint out of range");
    if (e.pairs.empty())
      fail(ErrorCode::InvalidArgument, "label cover: every edge needs a nonempty relation");
    for (auto [a, b] : e.pairs)
      if (a < 0 || a >= num_a || b < 0 || b >= num_b)
        fail(ErrorCode::InvalidArgument, "label cover: relation pair out of range");
  }
}

std::string to_string(PointRole role) {
  switch (role) {
    case PointRole::PPlus: return "p+";
    case PointRole::PMinus: return "p-";
    case PointRole::PPlusPrime: return "p'+";
    case PointRole::SE: return "S_E";
    case PointRole::SVB: return "S_VB";
    case PointRole::SL: return "S_L";
    case PointRole::SUA: return "S_UA";
    case PointRole::GadgetTwinPos: return "twin+";
    case PointRole::GadgetTwinNeg: return "twin-";
    case PointRole::GadgetApexPos: return "apex+";
    case PointRole::GadgetApexNeg: return "apex-";
    case PointRole::Base: return "base";
  }
  return "?";
}

PointRole point_role_from_string(const std::string& name) {
  static const std::pair<const char*, PointRole> table[] = {
      {"p+", PointRole::PPlus},        {"p-", PointRole::PMinus},
      {"p'+", PointRole::PPlusPrime},  {"S_E", PointRole::SE},
      {"S_VB", PointRole::SVB},        {"S_L", PointRole::SL},
      {"S_UA", PointRole::SUA},        {"twin+", PointRole::GadgetTwinPos},
      {"twin-", PointRole::GadgetTwinNeg}, {"apex+", PointRole::GadgetApexPos},
      {"apex-", PointRole::GadgetApexNeg}, {"base", PointRole::Base},
  };
  for (auto& [s, r] : table)
    if (name == s) return r;
  fail(ErrorCode::InvalidArgument, "unknown point role '" + name + "'");
}

Index WnncInstance::find_role(PointRole role) const {
  for (Index i = 0; i < size(); ++i)
    if (roles[static_cast<std::size_t>(i)] == role) return i;
  return -1;
}

LabeledPointSet WnncInstance::to_point_set() const { return load_matrix(dist, labels); }

LabeledPointSet GadgetGraph::to_point_set() const { return load_matrix(dist, labels); }

LabeledPointSet NncInstance::to_point_set() const { return load_matrix(dist, labels); }

namespace {

/// First `count` points of the {0..side-1}^D lattice in lexicographic order.
std::vector<std::vector<Index>> lattice_prefix(Index count, int D, Index side) {
  std::vector<std::vector<Index>> coords;
  coords.reserve(static_cast<std::size_t>(count));
  std::vector<Index> cur(static_cast<std::size_t>(D), 0);
  for (Index k = 0; k < count; ++k) {
    coords.push_back(cur);
    for (int d = D - 1; d >= 0; --d) {
      if (++cur[static_cast<std::size_t>(d)] < side) break;
      cur[static_cast<std::size_t>(d)] = 0;
    }
  }
  return coords;
}

Index lattice_l1(const std::vector<Index>& a, const std::vector<Index>& b) {
  Index s = 0;
  for (std::size_t d = 0; d < a.size(); ++d) s += std::abs(a[d] - b[d]);
  return s;
}

/// Smallest s with s^D >= w, i.e. ceil(w^(1/D)) for integer w >= 1.
Index grid_side(Index w, int D) {
  Index s = 1;
  auto pow_ge = [&](Index side) {
    Index acc = 1;
    for (int d = 0; d < D; ++d) {
      if (acc >= w) return true;
      if (side != 0 && acc > w / side + 1) return true;
      acc *= side;
    }
    return acc >= w;
  };
  while (!pow_ge(s)) ++s;
  return s;
}

/// Floyd-Warshall min-plus closure: turns the partially specified symmetric
/// distance table into the largest metric consistent with the specified pairs.
void shortest_path_closure(Eigen::MatrixXd& d) {
  const Index n = d.rows();
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      const double dik = d(i, k);
      if (dik == kInf) continue;
      for (Index j = 0; j < n; ++j) {
        const double via = dik + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
    }
}

void require_specified_preserved(const Eigen::MatrixXd& closed, const Eigen::MatrixXd& spec,
                                 const std::string& where) {
  for (Index i = 0; i < spec.rows(); ++i)
    for (Index j = 0; j < spec.cols(); ++j)
      if (spec(i, j) != kInf && std::abs(closed(i, j) - spec(i, j)) > 1e-12)
        fail(ErrorCode::InfeasibleMetric,
             where + ": prescribed distance (" + std::to_string(i) + "," + std::to_string(j) +
                 ") = " + std::to_string(spec(i, j)) + " shortened to " +
                 std::to_string(closed(i, j)) + " by the triangle inequality");
  if (!closed.allFinite())
    fail(ErrorCode::InfeasibleMetric, where + ": specified-distance graph is disconnected");
}

struct Ball {
  IndexList points;                         // instance indices
  std::vector<std::vector<Index>> coords;   // lattice coordinates
  double spacing = 0.0;                     // min positive intra-ball distance
};

/// Pack `points` into a diameter-1 ball on a D-dimensional grid and write all
/// intra-ball distances into `spec`.
Ball pack_ball(Eigen::MatrixXd& spec, const IndexList& points, int D) {
  Ball ball;
  ball.points = points;
  const Index count = static_cast<Index>(points.size());
  if (count == 0) return ball;
  const Index side = grid_side(count, D);
  ball.coords = lattice_prefix(count, D, side);
  const double scale = side > 1 ? 1.0 / (static_cast<double>(D) * static_cast<double>(side - 1))
                                : 1.0;
  ball.spacing = side > 1 ? scale : 0.0;
  for (Index a = 0; a < count; ++a)
    for (Index b = a + 1; b < count; ++b) {
      const double d = scale * static_cast<double>(lattice_l1(
                                   ball.coords[static_cast<std::size_t>(a)],
                                   ball.coords[static_cast<std::size_t>(b)]));
      spec(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]) = d;
      spec(points[static_cast<std::size_t>(b)], points[static_cast<std::size_t>(a)]) = d;
    }
  return ball;
}

void set_dist(Eigen::MatrixXd& spec, Index i, Index j, double d) {
  spec(i, j) = d;
  spec(j, i) = d;
}

}  // namespace

WnncInstance reduce_labelcover_to_wnnc(const LabelCoverInstance& lc, int D) {
  lc.validate();
  if (D < 1) fail(ErrorCode::InvalidArgument, "reduce_labelcover_to_wnnc: D must be >= 1");
  if (lc.edges.empty())
    fail(ErrorCode::DegenerateInstance,
         "reduce_labelcover_to_wnnc: empty edge set leaves p+ with no forcing role");

  const Index m = lc.total_size();
  const double c = std::pow(static_cast<double>(m), 4.0);

  WnncInstance inst;
  auto add_point = [&](PointRole role, int label, double weight, std::string name) {
    inst.roles.push_back(role);
    inst.names.push_back(std::move(name));
    const Index idx = static_cast<Index>(inst.roles.size()) - 1;
    inst.labels.conservativeResize(idx + 1);
    inst.weights.conservativeResize(idx + 1);
    inst.labels[idx] = label;
    inst.weights[idx] = weight;
    return idx;
  };

  const double c2 = c * c;
  const Index p_plus = add_point(PointRole::PPlus, 1, 1.0, "p+");

  IndexList se;  // per edge, in edge order
  for (std::size_t e = 0; e < lc.edges.size(); ++e)
    se.push_back(add_point(PointRole::SE, -1, c2, "p_e[" + std::to_string(e) + "]"));

  // (v, b) points, v-major.
  std::vector<std::vector<Index>> svb(static_cast<std::size_t>(lc.num_v),
                                      std::vector<Index>(static_cast<std::size_t>(lc.num_b)));
  IndexList svb_flat;
  for (Index v = 0; v < lc.num_v; ++v)
    for (Index b = 0; b < lc.num_b; ++b) {
      const Index idx = add_point(PointRole::SVB, -1, 1.0,
                                  "p_vb[" + std::to_string(v) + "," + std::to_string(b) + "]");
      svb[static_cast<std::size_t>(v)][static_cast<std::size_t>(b)] = idx;
      svb_flat.push_back(idx);
    }

  const Index p_minus = add_point(PointRole::PMinus, -1, 1.0, "p-");

  // (e, b) points for b appearing in Pi_e.
  std::vector<std::vector<std::pair<Index, Index>>> sl_of_edge(lc.edges.size());  // (b, idx)
  IndexList sl_flat;
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    std::vector<Index> bs;
    for (auto [a, b] : lc.edges[e].pairs) bs.push_back(b);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    for (Index b : bs) {
      const Index idx = add_point(PointRole::SL, 1, c2,
                                  "p_eb[" + std::to_string(e) + "," + std::to_string(b) + "]");
      sl_of_edge[e].emplace_back(b, idx);
      sl_flat.push_back(idx);
    }
  }

  const Index p_plus_prime = add_point(PointRole::PPlusPrime, 1, 1.0, "p'+");

  std::vector<std::vector<Index>> sua(static_cast<std::size_t>(lc.num_u),
                                      std::vector<Index>(static_cast<std::size_t>(lc.num_a)));
  IndexList sua_flat;
  for (Index u = 0; u < lc.num_u; ++u)
    for (Index a = 0; a < lc.num_a; ++a) {
      const Index idx = add_point(PointRole::SUA, 1, c,
                                  "p_ua[" + std::to_string(u) + "," + std::to_string(a) + "]");
      sua[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)] = idx;
      sua_flat.push_back(idx);
    }

  const Index n = inst.size();
  Eigen::MatrixXd spec = Eigen::MatrixXd::Constant(n, n, kInf);
  spec.diagonal().setZero();

  // Intra-ball packings fix eta = min spacing / 8 ("infinitesimally small").
  std::vector<Ball> balls;
  balls.push_back(pack_ball(spec, se, D));
  balls.push_back(pack_ball(spec, svb_flat, D));
  balls.push_back(pack_ball(spec, sl_flat, D));
  balls.push_back(pack_ball(spec, sua_flat, D));
  double min_spacing = kInf;
  for (const auto& ball : balls)
    if (ball.spacing > 0.0) min_spacing = std::min(min_spacing, ball.spacing);
  const double eta = min_spacing == kInf ? 0.125 : min_spacing / 8.0;
  inst.c = c;
  inst.eta = eta;

  inst.se_connected.assign(se.size(), {});
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    const auto& edge = lc.edges[e];
    set_dist(spec, p_plus, se[e], 3.0 + eta);  // step 1

    // step 2: connected (v, b) points at exactly 3.
    std::vector<char> b_seen(static_cast<std::size_t>(lc.num_b), 0);
    for (auto [a, b] : edge.pairs) b_seen[static_cast<std::size_t>(b)] = 1;
    for (Index b = 0; b < lc.num_b; ++b)
      if (b_seen[static_cast<std::size_t>(b)]) {
        const Index vb = svb[static_cast<std::size_t>(edge.v)][static_cast<std::size_t>(b)];
        set_dist(spec, se[e], vb, 3.0);
        inst.se_connected[e].push_back(vb);
      }

    // step 3: p_eb sits at 2 + eta from its (v, b) point.
    for (auto [b, eb] : sl_of_edge[e]) {
      const Index vb = svb[static_cast<std::size_t>(edge.v)][static_cast<std::size_t>(b)];
      set_dist(spec, eb, vb, 2.0 + eta);
      // step 4: admissible (a, b) pairs connect p_eb to p_ua at exactly 2.
      for (auto [a, bb] : edge.pairs)
        if (bb == b)
          set_dist(spec, eb, sua[static_cast<std::size_t>(edge.u)][static_cast<std::size_t>(a)],
                   2.0);
    }
  }
  for (Index vb : svb_flat) set_dist(spec, p_minus, vb, 2.0);
  for (Index eb : sl_flat) set_dist(spec, p_plus_prime, eb, 2.0 + 2.0 * eta);

  Eigen::MatrixXd closed = spec;
  shortest_path_closure(closed);
  require_specified_preserved(closed, spec, "reduce_labelcover_to_wnnc");
  inst.dist = std::move(closed);
  return inst;
}

WnncInstance drop_point(const WnncInstance& inst, Index which) {
  if (which < 0 || which >= inst.size())
    fail(ErrorCode::InvalidArgument, "drop_point: index out of range");
  WnncInstance out;
  out.c = inst.c;
  out.eta = inst.eta;
  const Index n = inst.size();
  IndexList keep;
  for (Index i = 0; i < n; ++i)
    if (i != which) keep.push_back(i);
  const Index k = static_cast<Index>(keep.size());
  out.dist.resize(k, k);
  out.labels.resize(k);
  out.weights.resize(k);
  std::vector<Index> remap(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < k; ++i) {
    const Index src = keep[static_cast<std::size_t>(i)];
    remap[static_cast<std::size_t>(src)] = i;
    out.labels[i] = inst.labels[src];
    out.weights[i] = inst.weights[src];
    out.roles.push_back(inst.roles[static_cast<std::size_t>(src)]);
    out.names.push_back(inst.names[static_cast<std::size_t>(src)]);
    for (Index j = 0; j < k; ++j) out.dist(i, j) = inst.dist(src, keep[static_cast<std::size_t>(j)]);
  }
  // se_connected rows track surviving S_E points, entries remapped.
  std::size_t row = 0;
  for (Index i = 0; i < n && row < inst.se_connected.size(); ++i) {
    if (inst.roles[static_cast<std::size_t>(i)] != PointRole::SE) continue;
    if (i != which) {
      IndexList mapped;
      for (Index q : inst.se_connected[row])
        if (q != which) mapped.push_back(remap[static_cast<std::size_t>(q)]);
      out.se_connected.push_back(std::move(mapped));
    }
    ++row;
  }
  return out;
}

GadgetGraph build_gadget(Index w, int D, double gamma) {
  if (w < 1) fail(ErrorCode::InvalidArgument, "build_gadget: w must be >= 1");
  if (D < 1) fail(ErrorCode::InvalidArgument, "build_gadget: D must be >= 1");
  if (!(gamma > 0.0) || gamma >= 2.0)
    fail(ErrorCode::InvalidArgument, "build_gadget: gamma must lie in (0, 2)");

  GadgetGraph g;
  g.w = w;
  g.D = D;
  g.gamma = gamma;
  g.side = grid_side(w, D);
  const auto coords = lattice_prefix(w, D, g.side);
  const double s = static_cast<double>(g.side);
  const double half = gamma / 2.0;

  const Index n = 2 * w + 2;
  g.apex_pos = n - 2;
  g.apex_neg = n - 1;
  g.labels.resize(n);
  g.dist = Eigen::MatrixXd::Zero(n, n);

  for (Index cell = 0; cell < w; ++cell) {
    g.labels[g.twin_pos(cell)] = 1;
    g.labels[g.twin_neg(cell)] = -1;
  }
  g.labels[g.apex_pos] = 1;
  g.labels[g.apex_neg] = -1;

  for (Index p = 0; p < w; ++p) {
    g.dist(g.twin_pos(p), g.twin_neg(p)) = half;
    g.dist(g.twin_neg(p), g.twin_pos(p)) = half;
    for (Index q = p + 1; q < w; ++q) {
      const double d = static_cast<double>(lattice_l1(coords[static_cast<std::size_t>(p)],
                                                      coords[static_cast<std::size_t>(q)]));
      for (Index x : {g.twin_pos(p), g.twin_neg(p)})
        for (Index y : {g.twin_pos(q), g.twin_neg(q)}) {
          g.dist(x, y) = d;
          g.dist(y, x) = d;
        }
    }
    set_dist(g.dist, g.apex_pos, g.twin_pos(p), s);
    set_dist(g.dist, g.apex_pos, g.twin_neg(p), s + half);
    set_dist(g.dist, g.apex_neg, g.twin_neg(p), s);
    set_dist(g.dist, g.apex_neg, g.twin_pos(p), s + half);
  }
  set_dist(g.dist, g.apex_pos, g.apex_neg, 2.0 * s + half);  // shortest-path maximum

  // The prescription is only a metric while the grid's L1 diameter stays
  // within 2 * side; reject combinations where it does not.
  try {
    (void)load_matrix(g.dist, g.labels);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::MetricViolation)
      fail(ErrorCode::InfeasibleMetric, std::string("build_gadget: ") + err.what());
    throw;
  }
  return g;
}

IndexList gadget_forced_closure(const GadgetGraph& gadget, Index start_point) {
  if (start_point < 0 || start_point >= 2 * gadget.w)
    fail(ErrorCode::InvalidArgument, "gadget_forced_closure: start must be a twin point");
  const auto coords = lattice_prefix(gadget.w, gadget.D, gadget.side);
  std::vector<char> forced(static_cast<std::size_t>(gadget.w), 0);
  IndexList queue{gadget.cell_of(start_point)};
  forced[static_cast<std::size_t>(queue.front())] = 1;
  while (!queue.empty()) {
    const Index p = queue.back();
    queue.pop_back();
    for (Index q = 0; q < gadget.w; ++q)
      if (!forced[static_cast<std::size_t>(q)] &&
          lattice_l1(coords[static_cast<std::size_t>(p)], coords[static_cast<std::size_t>(q)]) == 1) {
        forced[static_cast<std::size_t>(q)] = 1;
        queue.push_back(q);
      }
  }
  IndexList out;
  for (Index cell = 0; cell < gadget.w; ++cell)
    if (forced[static_cast<std::size_t>(cell)]) {
      out.push_back(gadget.twin_pos(cell));
      out.push_back(gadget.twin_neg(cell));
    }
  std::sort(out.begin(), out.end());
  return out;
}

NncInstance reduce_wnnc_to_nnc(const WnncInstance& wnnc, const WnncToNncOptions& opts) {
  const Index n = wnnc.size();
  if (n == 0) fail(ErrorCode::EmptyInput, "reduce_wnnc_to_nnc: empty instance");
  if (opts.D < 1) fail(ErrorCode::InvalidArgument, "reduce_wnnc_to_nnc: D must be >= 1");
  if (!(opts.weight_scale >= 1.0))
    fail(ErrorCode::InvalidArgument, "reduce_wnnc_to_nnc: weight scale must be >= 1");
  for (Index i = 0; i < n; ++i)
    if (!(wnnc.weights[i] >= 1.0))
      fail(ErrorCode::InvalidArgument, "reduce_wnnc_to_nnc: weights must be >= 1");

  // Normalize the base block to diameter 1 so the twin separation gamma and
  // the unit-grid gadgets live on one scale.
  Eigen::MatrixXd base = wnnc.dist;
  const double diam = base.maxCoeff();
  if (n >= 2) {
    if (diam == 0.0) fail(ErrorCode::ZeroDiameter, "reduce_wnnc_to_nnc: all base points coincide");
    base /= diam;
  }

  double gamma;
  if (opts.gamma) {
    gamma = *opts.gamma;
  } else {
    double best = kInf;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (wnnc.labels[i] == 1 && wnnc.labels[j] == -1) best = std::min(best, base(i, j));
    if (best == kInf)
      fail(ErrorCode::SingleClass,
           "reduce_wnnc_to_nnc: single-class instance needs an explicit gamma");
    if (best == 0.0) fail(ErrorCode::ZeroMargin, "reduce_wnnc_to_nnc: base margin is zero");
    gamma = best;
  }
  if (!(gamma > 0.0) || gamma >= 2.0)
    fail(ErrorCode::InvalidArgument, "reduce_wnnc_to_nnc: gamma must lie in (0, 2)");

  std::vector<Index> scaled(static_cast<std::size_t>(n));
  Index total = n;
  for (Index i = 0; i < n; ++i) {
    scaled[static_cast<std::size_t>(i)] =
        static_cast<Index>(std::ceil(wnnc.weights[i] * opts.weight_scale));
    total += 2 * scaled[static_cast<std::size_t>(i)] + 2;
  }
  if (total > opts.max_points)
    fail(ErrorCode::TooLarge, "reduce_wnnc_to_nnc: output would hold " + std::to_string(total) +
                                  " points (limit " + std::to_string(opts.max_points) + ")");

  NncInstance out;
  Eigen::MatrixXd spec = Eigen::MatrixXd::Constant(total, total, kInf);
  spec.diagonal().setZero();
  out.labels.resize(total);
  out.roles.resize(static_cast<std::size_t>(total));
  out.names.resize(static_cast<std::size_t>(total));

  for (Index i = 0; i < n; ++i) {
    out.base_points.push_back(i);
    out.labels[i] = wnnc.labels[i];
    out.roles[static_cast<std::size_t>(i)] = PointRole::Base;
    const std::string base_name =
        static_cast<std::size_t>(i) < wnnc.names.size() ? wnnc.names[static_cast<std::size_t>(i)]
                                                        : std::to_string(i);
    out.names[static_cast<std::size_t>(i)] = "base[" + base_name + "]";
    for (Index j = 0; j < n; ++j)
      if (i != j) spec(i, j) = base(i, j);
  }

  Index cursor = n;
  out.gadget_points.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Index w = scaled[static_cast<std::size_t>(i)];
    GadgetGraph g = build_gadget(w, opts.D, gamma);
    const Index offset = cursor;
    const double s = static_cast<double>(g.side);
    for (Index a = 0; a < g.size(); ++a) {
      const Index ga = offset + a;
      out.gadget_points[static_cast<std::size_t>(i)].push_back(ga);
      if (a == g.apex_pos) {
        out.roles[static_cast<std::size_t>(ga)] = PointRole::GadgetApexPos;
      } else if (a == g.apex_neg) {
        out.roles[static_cast<std::size_t>(ga)] = PointRole::GadgetApexNeg;
      } else {
        out.roles[static_cast<std::size_t>(ga)] =
            g.labels[a] == 1 ? PointRole::GadgetTwinPos : PointRole::GadgetTwinNeg;
      }
      out.names[static_cast<std::size_t>(ga)] =
          "g" + std::to_string(i) + "[" + std::to_string(a) + "]";
      out.labels[ga] = g.labels[a];
      for (Index b = 0; b < g.size(); ++b)
        if (a != b) spec(ga, offset + b) = g.dist(a, b);
      // Opposite-label gadget points sit at exactly side from their base.
      if (g.labels[a] != wnnc.labels[i]) set_dist(spec, i, ga, s);
    }
    cursor += g.size();
  }

  Eigen::MatrixXd closed = spec;
  shortest_path_closure(closed);
  require_specified_preserved(closed, spec, "reduce_wnnc_to_nnc");
  out.dist = std::move(closed);

  const double out_diam = out.dist.maxCoeff();
  double min_cross = kInf;
  for (Index i = 0; i < total; ++i)
    for (Index j = 0; j < total; ++j)
      if (out.labels[i] == 1 && out.labels[j] == -1)
        min_cross = std::min(min_cross, out.dist(i, j));
  out.margin = min_cross / out_diam;
  return out;
}

WeightedOptimum brute_force_min_weight(const WnncInstance& inst, Index max_n) {
  const Index n = inst.size();
  if (n > max_n)
    fail(ErrorCode::TooLarge, "brute_force_min_weight: n = " + std::to_string(n) +
                                  " exceeds limit " + std::to_string(max_n));
  if (n >= 63) fail(ErrorCode::TooLarge, "brute_force_min_weight: n too large for masks");

  auto consistent = [&](std::uint64_t mask) {
    for (Index q = 0; q < n; ++q) {
      double dmin = kInf;
      for (Index m = 0; m < n; ++m)
        if (mask & (1ULL << m)) dmin = std::min(dmin, inst.dist(q, m));
      for (Index m = 0; m < n; ++m)
        if ((mask & (1ULL << m)) && inst.dist(q, m) == dmin &&
            inst.labels[m] != inst.labels[q])
          return false;
    }
    return true;
  };

  WeightedOptimum best;
  best.total_weight = kInf;
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    if (!consistent(mask)) continue;
    double weight = 0.0;
    for (Index m = 0; m < n; ++m)
      if (mask & (1ULL << m)) weight += inst.weights[m];
    if (weight < best.total_weight) {
      best.total_weight = weight;
      best.members.clear();
      for (Index m = 0; m < n; ++m)
        if (mask & (1ULL << m)) best.members.push_back(m);
    }
  }
  if (best.total_weight == kInf)
    fail(ErrorCode::ZeroMargin, "brute_force_min_weight: no consistent subset exists");
  return best;
}

ReductionClaimsReport verify_reduction_claims(const WnncInstance& inst, Index max_n) {
  const Index n = inst.size();
  if (n > max_n || n >= 63)
    fail(ErrorCode::TooLarge, "verify_reduction_claims: instance too large for enumeration");

  const Index p_plus = inst.find_role(PointRole::PPlus);

  auto consistent = [&](std::uint64_t mask) {
    for (Index q = 0; q < n; ++q) {
      double dmin = kInf;
      for (Index m = 0; m < n; ++m)
        if (mask & (1ULL << m)) dmin = std::min(dmin, inst.dist(q, m));
      for (Index m = 0; m < n; ++m)
        if ((mask & (1ULL << m)) && inst.dist(q, m) == dmin &&
            inst.labels[m] != inst.labels[q])
          return false;
    }
    return true;
  };

  std::vector<std::uint64_t> consistent_masks;
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask)
    if (consistent(mask)) consistent_masks.push_back(mask);

  ReductionClaimsReport rep;
  rep.consistent_subsets = static_cast<Index>(consistent_masks.size());

  // Claim 1: p+ in every consistent subset.
  rep.claim1_pplus_forced = p_plus >= 0;
  if (p_plus >= 0)
    for (std::uint64_t mask : consistent_masks)
      if (!(mask & (1ULL << p_plus))) {
        rep.claim1_pplus_forced = false;
        rep.detail = "consistent subset without p+ found";
        break;
      }

  // Claim 2: heavy (c^2) points never appear in a minimum-weight optimum.
  double best = kInf;
  for (std::uint64_t mask : consistent_masks) {
    double weight = 0.0;
    for (Index m = 0; m < n; ++m)
      if (mask & (1ULL << m)) weight += inst.weights[m];
    best = std::min(best, weight);
  }
  rep.optimum_weight = best;
  rep.claim2_no_heavy_in_optimum = best < kInf;
  const double heavy = inst.c * inst.c;
  for (std::uint64_t mask : consistent_masks) {
    double weight = 0.0;
    for (Index m = 0; m < n; ++m)
      if (mask & (1ULL << m)) weight += inst.weights[m];
    if (weight != best) continue;
    for (Index m = 0; m < n; ++m)
      if ((mask & (1ULL << m)) && inst.weights[m] == heavy) {
        rep.claim2_no_heavy_in_optimum = false;
        rep.detail = "heavy point inside a minimum-weight optimum";
      }
  }

  // Claim 3: with S_E excluded, edge points are covered exactly by connected
  // S_VB points.
  IndexList se_points;
  for (Index i = 0; i < n; ++i)
    if (inst.roles[static_cast<std::size_t>(i)] == PointRole::SE) se_points.push_back(i);
  if (inst.se_connected.size() != se_points.size())
    fail(ErrorCode::InvalidArgument,
         "verify_reduction_claims: instance lacks S_E connectivity metadata");
  rep.claim3_se_covered_by_connected = true;
  for (std::uint64_t mask : consistent_masks) {
    bool touches_se = false;
    for (Index e : se_points)
      if (mask & (1ULL << e)) touches_se = true;
    if (touches_se) continue;
    for (std::size_t row = 0; row < se_points.size(); ++row) {
      const Index e = se_points[row];
      double dmin = kInf;
      for (Index m = 0; m < n; ++m)
        if (mask & (1ULL << m)) dmin = std::min(dmin, inst.dist(e, m));
      for (Index m = 0; m < n; ++m) {
        if (!(mask & (1ULL << m)) || inst.dist(e, m) != dmin) continue;
        const auto& conn = inst.se_connected[row];
        if (std::find(conn.begin(), conn.end(), m) == conn.end()) {
          rep.claim3_se_covered_by_connected = false;
          rep.detail = "edge point " + std::to_string(e) +
                       " covered by a non-connected point in some consistent subset";
        }
      }
    }
  }
  return rep;
}

}  // namespace nnc
