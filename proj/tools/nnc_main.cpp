#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nnc/bounds.hpp"
#include "nnc/classify.hpp"
#include "nnc/condense.hpp"
#include "nnc/hardness.hpp"
#include "nnc/harness.hpp"
#include "nnc/json_io.hpp"
#include "nnc/mathutil.hpp"
#include "nnc/metric.hpp"
#include "nnc/nets.hpp"

namespace {

using namespace nnc;

struct DatasetArgs {
  std::string input;
  std::string matrix;
  std::string matrix_labels;
  std::string metric = "l1";
  std::string delimiter;
  std::string label_map;
  std::vector<Index> feature_columns;
  Index label_column = -1;
  bool approx_diameter = false;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("--input", args.input, "point CSV: feature columns then a label column");
  cmd->add_option("--matrix", args.matrix, "explicit distance-matrix CSV");
  cmd->add_option("--matrix-labels", args.matrix_labels, "label file for --matrix");
  cmd->add_option("--metric", args.metric, "l1|l2|linf (vector mode)")->capture_default_str();
  cmd->add_option("--delimiter", args.delimiter, "CSV delimiter (default: auto)");
  cmd->add_option("--label-map", args.label_map,
                  "class mapping like '1:+1,2:-1' (default: file holds +/-1)");
  cmd->add_option("--feature-columns", args.feature_columns,
                  "feature column indices (default: all but the label)");
  cmd->add_option("--label-column", args.label_column, "label column, -1 = last")
      ->capture_default_str();
  cmd->add_flag("--approx-diameter", args.approx_diameter,
                "doubled farthest-point diameter above 50000 points instead of the exact scan");
}

std::map<long, int> parse_label_map(const std::string& text) {
  std::map<long, int> map;
  if (text.empty()) return map;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::InvalidArgument, "label map entries look like 'class:+1'");
    map[std::stol(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return map;
}

LabeledPointSet load_dataset(const DatasetArgs& args) {
  LoadOptions opts;
  opts.approximate_diameter = args.approx_diameter;
  if (!args.matrix.empty()) {
    if (args.matrix_labels.empty())
      fail(ErrorCode::InvalidArgument, "--matrix needs --matrix-labels");
    return load_matrix_csv(args.matrix, args.matrix_labels, opts);
  }
  if (args.input.empty())
    fail(ErrorCode::InvalidArgument, "provide --input or --matrix/--matrix-labels");
  CsvFormat fmt;
  if (!args.delimiter.empty()) fmt.delimiter = args.delimiter[0];
  fmt.feature_columns = args.feature_columns;
  fmt.label_column = args.label_column;
  fmt.label_map = parse_label_map(args.label_map);
  return load_points_csv(args.input, metric_kind_from_string(args.metric), fmt, opts);
}

int cmd_condense(const DatasetArgs& data, bool slow, bool prune,
                 std::optional<double> gamma_hint, const std::string& dump_net,
                 const std::string& output) {
  LabeledPointSet set = load_dataset(data);
  CondenseOptions opts;
  opts.slow = slow;
  opts.gamma_hint = gamma_hint;
  CondenseResult result = condense(set, opts);

  std::printf("n = %lld, gamma = %.6g (witness %lld/%lld)\n",
              static_cast<long long>(set.size()), result.margin.gamma,
              static_cast<long long>(result.margin.positive_index),
              static_cast<long long>(result.margin.negative_index));
  std::printf("net: %zu members, retention %.2f%%\n", result.set.members.size(),
              100.0 * result.set.retention);

  if (result.hierarchy && result.hierarchy->levels().size() >= 2) {
    const auto est = estimate_ddim(*result.hierarchy);
    const auto cap = packing_bound(1.0, result.margin.gamma,
                                   static_cast<int>(std::ceil(std::max(0.0, est.value))));
    std::printf("ddim estimate %.3f; size cap ceil(1/gamma)^(ddim+1) = %s%llu (|net| %s cap)\n",
                est.value, cap.saturated ? ">= " : "",
                static_cast<unsigned long long>(cap.value),
                !cap.saturated && result.set.members.size() <= cap.value ? "<=" : "vs");
  }

  CondensedSet final_set = result.set;
  if (prune) {
    final_set = prune_heuristic(result.set.members, set, result.margin.gamma);
    std::printf("heuristic: %zu members, retention %.2f%%\n", final_set.members.size(),
                100.0 * final_set.retention);
  }
  if (!dump_net.empty() && result.hierarchy)
    write_json_file(hierarchy_to_json(*result.hierarchy), dump_net);
  if (!output.empty()) {
    write_json_file(condensed_to_json(final_set, set.size(), &set), output);
    std::printf("wrote %s\n", output.c_str());
  }
  return 0;
}

int cmd_classify(const std::string& model_path, const std::string& test_path,
                 const std::string& delimiter, Index label_column, const std::string& output) {
  SavedCondensedSet saved = condensed_from_json(load_json_file(model_path));
  if (!saved.member_set)
    fail(ErrorCode::InvalidArgument,
         "model lacks embedded coordinates (explicit-matrix sets cannot classify new points)");
  const LabeledPointSet& ref = *saved.member_set;
  IndexList all(static_cast<std::size_t>(ref.size()));
  for (Index i = 0; i < ref.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  Classifier clf{&ref, all};

  char delim = delimiter.empty() ? '\0' : delimiter[0];
  RowMatrixXd raw = parse_numeric_csv(test_path, delim);

  std::optional<Index> label_col;
  if (label_column != std::numeric_limits<Index>::min()) {
    Index lc = label_column < 0 ? raw.cols() + label_column : label_column;
    if (lc < 0 || lc >= raw.cols())
      fail(ErrorCode::InvalidArgument, "classify: label column out of range");
    label_col = lc;
  }
  const Index dims = raw.cols() - (label_col ? 1 : 0);
  if (dims != ref.dim())
    fail(ErrorCode::DimensionMismatch, "classify: test dimension " + std::to_string(dims) +
                                           " != model dimension " + std::to_string(ref.dim()));

  std::ofstream out;
  std::ostream* os = &std::cout;
  if (!output.empty()) {
    out.open(output);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + output + "'");
    os = &out;
  }
  (*os) << "index,prediction\n";
  Index wrong = 0;
  for (Index i = 0; i < raw.rows(); ++i) {
    Eigen::RowVectorXd x(dims);
    Index c = 0;
    for (Index j = 0; j < raw.cols(); ++j)
      if (!label_col || j != *label_col) x[c++] = raw(i, j);
    const int pred = predict(clf, x);
    (*os) << i << ',' << pred << '\n';
    if (label_col && pred != static_cast<int>(raw(i, *label_col))) ++wrong;
  }
  if (label_col)
    std::fprintf(stderr, "empirical error: %.6f (%lld/%lld)\n",
                 static_cast<double>(wrong) / static_cast<double>(raw.rows()),
                 static_cast<long long>(wrong), static_cast<long long>(raw.rows()));
  return 0;
}

int cmd_bounds(Index n, std::uint64_t subset_size, double epsilon, double delta, double gamma,
               int ddim) {
  const auto ell = packing_bound(1.0, gamma, ddim);
  std::printf("packing bound  ceil(1/gamma)^(ddim+1)      = %s%llu\n", ell.saturated ? ">= " : "",
              static_cast<unsigned long long>(ell.value));
  std::printf("consistent-subset bound                    = %.6g\n",
              bound_consistent(n, subset_size, delta));
  std::printf("eps-consistent-subset bound                = %.6g\n",
              bound_eps_consistent(n, subset_size, epsilon, delta));
  const auto cor = net_size_bound(n, epsilon, delta, gamma, ddim);
  if (cor.vacuous())
    std::printf("net-size bound                             = vacuous (l >= n)\n");
  else
    std::printf("net-size bound (l = %llu)%*s= %.6g\n",
                static_cast<unsigned long long>(cor.ell.value),
                static_cast<int>(18 - std::to_string(cor.ell.value).size()), " ", *cor.value);
  const double gkk = fat_shattering_bound(n, epsilon, delta, gamma, ddim);
  if (std::isnan(gkk))
    std::printf("fat-shattering comparison bound            = undefined (d_gamma >> n)\n");
  else
    std::printf("fat-shattering comparison bound            = %.6g\n", gkk);
  return 0;
}

int cmd_experiment(const std::string& config_path, std::optional<Index> trials,
                   std::optional<Index> sample_size, std::optional<std::uint64_t> seed,
                   std::optional<int> threads, const std::string& output,
                   const std::string& dataset_path) {
  ExperimentConfig config;
  if (!config_path.empty()) config = experiment_config_from_json(load_json_file(config_path));
  if (trials) config.trials = *trials;
  if (sample_size) config.sample_size = *sample_size;
  if (seed) config.seed = *seed;
  if (threads) config.threads = *threads;
  if (!output.empty()) config.output_path = output;
  if (!dataset_path.empty()) config.dataset.path = dataset_path;
  if (config.dataset.path.empty())
    fail(ErrorCode::InvalidArgument, "experiment: no dataset path configured");

  CompressionReport report = run_experiment(config);
  std::fputs(format_report_table(config.dataset.path, config, report).c_str(), stdout);
  if (!config.output_path.empty()) {
    write_json_file(report_to_json(config, report), config.output_path);
    std::printf("wrote %s\n", config.output_path.c_str());
  }
  return report.interrupted ? 1 : 0;
}

int cmd_genharness_labelcover(const std::string& input, int D, const std::string& prefix,
                              bool to_nnc, double weight_scale, bool verify) {
  LabelCoverInstance lc = labelcover_from_json(load_json_file(input));
  WnncInstance wnnc = reduce_labelcover_to_wnnc(lc, D);
  std::printf("label cover m = %lld -> WNNC instance with %lld points (c = %.6g, eta = %.6g)\n",
              static_cast<long long>(lc.total_size()), static_cast<long long>(wnnc.size()),
              wnnc.c, wnnc.eta);
  (void)wnnc.to_point_set();  // metric validation
  write_instance_files(wnnc.dist, wnnc.labels, wnnc_meta_to_json(wnnc), prefix + "_wnnc");
  std::printf("wrote %s_wnnc_{dist.csv,labels.csv,meta.json}\n", prefix.c_str());

  if (verify) {
    const auto rep = verify_reduction_claims(wnnc);
    std::printf("claim 1 (p+ forced):            %s\n", rep.claim1_pplus_forced ? "pass" : "FAIL");
    std::printf("claim 2 (no heavy in optimum):  %s\n",
                rep.claim2_no_heavy_in_optimum ? "pass" : "FAIL");
    std::printf("claim 3 (S_E covering):         %s\n",
                rep.claim3_se_covered_by_connected ? "pass" : "FAIL");
    std::printf("consistent subsets: %lld, optimum weight: %.6g\n",
                static_cast<long long>(rep.consistent_subsets), rep.optimum_weight);
    if (!rep.all()) return 2;
  }
  if (to_nnc) {
    WnncToNncOptions opts;
    opts.D = D;
    opts.weight_scale = weight_scale;
    NncInstance nnc_inst = reduce_wnnc_to_nnc(wnnc, opts);
    const auto set = nnc_inst.to_point_set();
    std::printf("NNC instance: %lld points, scaled margin %.6g\n",
                static_cast<long long>(set.size()), nnc_inst.margin);
    write_instance_files(nnc_inst.dist, nnc_inst.labels, nnc_meta_to_json(nnc_inst),
                         prefix + "_nnc");
    std::printf("wrote %s_nnc_{dist.csv,labels.csv,meta.json}\n", prefix.c_str());
  }
  return 0;
}

int cmd_genharness_gadget(Index w, int D, double gamma, const std::string& prefix, bool verify) {
  GadgetGraph gadget = build_gadget(w, D, gamma);
  const auto set = gadget.to_point_set();
  std::printf("gadget G(w=%lld, D=%d): %lld points, side %lld, scaled margin %.6g\n",
              static_cast<long long>(w), D, static_cast<long long>(set.size()),
              static_cast<long long>(gadget.side), scaled_margin(set).gamma);
  if (!prefix.empty()) {
    json meta{{"type", "gadget"}, {"w", w}, {"D", D}, {"gamma", gamma}, {"side", gadget.side}};
    write_instance_files(gadget.dist, gadget.labels, meta, prefix + "_gadget");
    std::printf("wrote %s_gadget_{dist.csv,labels.csv,meta.json}\n", prefix.c_str());
  }
  if (verify) {
    bool ok = true;
    if (2 * w + 2 <= 16) {
      const auto opt = brute_force_min_consistent(set);
      const bool apex_opt = opt.members.size() == 2 &&
                            opt.members[0] == gadget.apex_pos && opt.members[1] == gadget.apex_neg;
      std::printf("apex optimality (optimum = the two apexes): %s\n", apex_opt ? "pass" : "FAIL");
      ok = ok && apex_opt;
    }
    const auto closure = gadget_forced_closure(gadget, 0);
    const bool all_t = static_cast<Index>(closure.size()) == 2 * w;
    std::printf("closure (one twin forces all of T): %s\n", all_t ? "pass" : "FAIL");
    ok = ok && all_t;
    if (!ok) return 2;
  }
  return 0;
}

int cmd_verify(const std::string& model_path, const DatasetArgs& data, int k) {
  SavedCondensedSet saved = condensed_from_json(load_json_file(model_path));
  LabeledPointSet set = load_dataset(data);
  if (saved.sample_size != set.size())
    fail(ErrorCode::InvalidArgument,
         "verify: model was built from n = " + std::to_string(saved.sample_size) +
             " but the dataset has n = " + std::to_string(set.size()));
  const auto rep = verify_consistent(saved.set.members, set, k);
  if (rep.consistent) {
    std::printf("consistent: %zu members cover all %lld points (k = %d)\n",
                saved.set.members.size(), static_cast<long long>(set.size()), k);
    return 0;
  }
  std::printf("INCONSISTENT: %zu violations (first:", rep.violations.size());
  for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i)
    std::printf(" %lld", static_cast<long long>(rep.violations[i]));
  std::printf(")\n");
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearest-neighbor condensing: gamma-net compression, pruning heuristic, "
               "generalization bounds, hardness instances and the experiment harness"};
  app.require_subcommand(1);

  // condense
  auto* condense_cmd = app.add_subcommand("condense", "compress a dataset to a consistent subset");
  DatasetArgs condense_data;
  add_dataset_options(condense_cmd, condense_data);
  bool slow = false, prune = false;
  double gamma_hint_value = 0.0;
  auto* hint_opt = condense_cmd->add_option("--gamma-hint", gamma_hint_value,
                                            "build the hierarchy down to floor(log2 gamma))");
  condense_cmd->add_flag("--slow", slow, "O(n^2) brute-force net instead of the hierarchy");
  condense_cmd->add_flag("--prune", prune, "apply the consistent pruning heuristic");
  std::string dump_net, condense_output;
  condense_cmd->add_option("--dump-net", dump_net, "write the net hierarchy as JSON");
  condense_cmd->add_option("--output,-o", condense_output, "condensed-set JSON path");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "1-NN predictions from a saved set");
  std::string model_path, test_path, classify_delim, classify_output;
  Index classify_label_col = std::numeric_limits<Index>::min();
  classify_cmd->add_option("--model", model_path, "condensed-set JSON")->required();
  classify_cmd->add_option("--test", test_path, "test CSV (features only by default)")->required();
  classify_cmd->add_option("--delimiter", classify_delim, "CSV delimiter (default: auto)");
  classify_cmd->add_option("--label-column", classify_label_col,
                           "treat this column as true labels and report the error");
  classify_cmd->add_option("--output,-o", classify_output, "predictions CSV (default: stdout)");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "generalization-bound table");
  Index b_n = 1000;
  std::uint64_t b_subset = 10;
  double b_eps = 0.0, b_delta = 0.05, b_gamma = 0.1;
  int b_ddim = 1;
  bounds_cmd->add_option("--n", b_n, "sample size")->capture_default_str();
  bounds_cmd->add_option("--subset-size", b_subset, "|S~| for the subset bounds")->capture_default_str();
  bounds_cmd->add_option("--epsilon", b_eps, "epsilon-consistency level")->capture_default_str();
  bounds_cmd->add_option("--delta", b_delta, "confidence")->capture_default_str();
  bounds_cmd->add_option("--gamma", b_gamma, "scaled margin")->capture_default_str();
  bounds_cmd->add_option("--ddim", b_ddim, "doubling dimension")->capture_default_str();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "repeated-trial compression experiment");
  std::string config_path, exp_output, exp_dataset;
  Index exp_trials = -1, exp_sample = -1;
  std::uint64_t exp_seed = 0;
  int exp_threads = 0;
  auto* exp_trials_opt = exp_cmd->add_option("--trials", exp_trials, "trial count override");
  auto* exp_sample_opt = exp_cmd->add_option("--sample-size", exp_sample, "per-split size override");
  auto* exp_seed_opt = exp_cmd->add_option("--seed", exp_seed, "RNG seed override");
  auto* exp_threads_opt = exp_cmd->add_option("--threads", exp_threads, "worker threads");
  exp_cmd->add_option("--config", config_path, "experiment config JSON");
  exp_cmd->add_option("--dataset", exp_dataset, "dataset path override");
  exp_cmd->add_option("--output,-o", exp_output, "report JSON path override");

  // genharness
  auto* gen_cmd = app.add_subcommand("genharness", "hardness-instance generation");
  gen_cmd->require_subcommand(1);
  auto* lc_cmd = gen_cmd->add_subcommand("labelcover", "Label Cover -> WNNC (-> NNC)");
  std::string lc_input, lc_prefix = "instance";
  int lc_D = 1;
  bool lc_to_nnc = false, lc_verify = false;
  double lc_weight_scale = 1.0;
  lc_cmd->add_option("--input", lc_input, "label cover JSON")->required();
  lc_cmd->add_option("--out", lc_prefix, "output file prefix")->capture_default_str();
  lc_cmd->add_option("--D", lc_D, "target doubling dimension")->capture_default_str();
  lc_cmd->add_option("--weight-scale", lc_weight_scale, "weight multiplier for the NNC step")
      ->capture_default_str();
  lc_cmd->add_flag("--to-nnc", lc_to_nnc, "also run the WNNC -> NNC gadget reduction");
  lc_cmd->add_flag("--verify", lc_verify, "certify solution-structure claims 1-3");

  auto* gadget_cmd = gen_cmd->add_subcommand("gadget", "standalone weight gadget G(w, D)");
  Index g_w = 4;
  int g_D = 1;
  double g_gamma = 0.25;
  std::string g_prefix;
  bool g_verify = false;
  gadget_cmd->add_option("--w", g_w, "simulated weight")->capture_default_str();
  gadget_cmd->add_option("--D", g_D, "doubling dimension")->capture_default_str();
  gadget_cmd->add_option("--gamma", g_gamma, "twin separation margin")->capture_default_str();
  gadget_cmd->add_option("--out", g_prefix, "output file prefix (optional)");
  gadget_cmd->add_flag("--verify", g_verify, "certify apex optimality and twin closure");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check a saved set against its dataset");
  DatasetArgs verify_data;
  add_dataset_options(verify_cmd, verify_data);
  std::string verify_model;
  int verify_k = 1;
  verify_cmd->add_option("--model", verify_model, "condensed-set JSON")->required();
  verify_cmd->add_option("--k", verify_k, "odd vote size")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (condense_cmd->parsed())
      return cmd_condense(condense_data, slow, prune,
                          hint_opt->count() ? std::optional<double>(gamma_hint_value)
                                            : std::nullopt,
                          dump_net, condense_output);
    if (classify_cmd->parsed())
      return cmd_classify(model_path, test_path, classify_delim, classify_label_col,
                          classify_output);
    if (bounds_cmd->parsed()) return cmd_bounds(b_n, b_subset, b_eps, b_delta, b_gamma, b_ddim);
    if (exp_cmd->parsed())
      return cmd_experiment(config_path,
                            exp_trials_opt->count() ? std::optional<Index>(exp_trials) : std::nullopt,
                            exp_sample_opt->count() ? std::optional<Index>(exp_sample) : std::nullopt,
                            exp_seed_opt->count() ? std::optional<std::uint64_t>(exp_seed)
                                                  : std::nullopt,
                            exp_threads_opt->count() ? std::optional<int>(exp_threads) : std::nullopt,
                            exp_output, exp_dataset);
    if (gen_cmd->parsed()) {
      if (lc_cmd->parsed())
        return cmd_genharness_labelcover(lc_input, lc_D, lc_prefix, lc_to_nnc, lc_weight_scale,
                                         lc_verify);
      if (gadget_cmd->parsed())
        return cmd_genharness_gadget(g_w, g_D, g_gamma, g_prefix, g_verify);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_model, verify_data, verify_k);
  } catch (const nnc::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return is_input_error(err.code()) ? 1 : 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "internal error: %s\n", err.what());
    return 2;
  }
  return 0;
}
