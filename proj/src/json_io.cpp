#include "nnc/json_io.hpp"

#include <cmath>
#include <fstream>

namespace nnc {

namespace {

json index_list_to_json(const IndexList& v) { return json(v); }

IndexList index_list_from_json(const json& j) {
  IndexList out;
  for (const auto& e : j) out.push_back(e.get<Index>());
  return out;
}

json nan_to_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

json net_to_json(const Net& net) {
  return json{{"type", "net"}, {"radius", net.radius}, {"members", index_list_to_json(net.members)}};
}

json hierarchy_to_json(const NetHierarchy& hierarchy) {
  json levels = json::array();
  for (const auto& lv : hierarchy.levels()) {
    IndexList members = lv.members;
    std::sort(members.begin(), members.end());
    levels.push_back(json{{"exponent", lv.exponent},
                          {"radius", lv.radius()},
                          {"members", index_list_to_json(members)},
                          {"cover", json(lv.cover)}});
  }
  return json{{"type", "net_hierarchy"},
              {"points", hierarchy.point_count()},
              {"terminal_exponent", hierarchy.terminal_exponent()},
              {"levels", std::move(levels)}};
}

json condensed_to_json(const CondensedSet& set, Index sample_size,
                       const LabeledPointSet* reference) {
  json doc{{"type", "condensed_set"},
           {"source", to_string(set.source)},
           {"n", sample_size},
           {"members", index_list_to_json(set.members)},
           {"retention", set.retention},
           {"verified", set.verified}};
  if (reference != nullptr) {
    json ref{{"metric", to_string(reference->metric())}, {"scale", reference->scale()}};
    json labels = json::array();
    for (Index m : set.members) labels.push_back(reference->label(m));
    ref["labels"] = std::move(labels);
    if (reference->has_coordinates()) {
      json pts = json::array();
      for (Index m : set.members) {
        json row = json::array();
        for (Index c = 0; c < reference->dim(); ++c) row.push_back(reference->points()(m, c));
        pts.push_back(std::move(row));
      }
      ref["points"] = std::move(pts);
    }
    doc["reference"] = std::move(ref);
  }
  return doc;
}

SavedCondensedSet condensed_from_json(const json& doc) {
  if (doc.value("type", "") != "condensed_set")
    fail(ErrorCode::ParseError, "document is not a condensed_set");
  SavedCondensedSet out;
  out.set.members = index_list_from_json(doc.at("members"));
  out.set.source = condense_source_from_string(doc.at("source").get<std::string>());
  out.set.retention = doc.at("retention").get<double>();
  out.set.verified = doc.at("verified").get<bool>();
  out.sample_size = doc.at("n").get<Index>();

  if (doc.contains("reference") && doc["reference"].contains("points")) {
    const auto& ref = doc["reference"];
    const auto& pts = ref["points"];
    const Index rows = static_cast<Index>(pts.size());
    if (rows == 0) fail(ErrorCode::ParseError, "condensed_set reference has no points");
    const Index cols = static_cast<Index>(pts.front().size());
    RowMatrixXd points(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      if (static_cast<Index>(pts[static_cast<std::size_t>(i)].size()) != cols)
        fail(ErrorCode::ParseError, "condensed_set reference rows are ragged");
      for (Index j = 0; j < cols; ++j)
        points(i, j) = pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
    }
    Eigen::VectorXi labels(rows);
    for (Index i = 0; i < rows; ++i)
      labels[i] = ref.at("labels")[static_cast<std::size_t>(i)].get<int>();
    out.member_set =
        load_points(std::move(points), std::move(labels),
                    metric_kind_from_string(ref.at("metric").get<std::string>()));
  }
  return out;
}

json experiment_config_to_json(const ExperimentConfig& config) {
  json ds{{"path", config.dataset.path},
          {"label_column", config.dataset.label_column},
          {"feature_columns", index_list_to_json(config.dataset.feature_columns)},
          {"positive_classes", config.dataset.positive_classes},
          {"negative_classes", config.dataset.negative_classes}};
  if (config.dataset.delimiter != '\0')
    ds["delimiter"] = std::string(1, config.dataset.delimiter);
  return json{{"dataset", std::move(ds)},
              {"metric", to_string(config.metric)},
              {"sample_size", config.sample_size},
              {"trials", config.trials},
              {"seed", config.seed},
              {"slow_net", config.slow_net},
              {"heuristic", config.run_heuristic},
              {"prune_radius_terminal", config.prune_radius_terminal},
              {"threads", config.threads},
              {"max_resamples", config.max_resamples},
              {"output", config.output_path},
              {"dump_dir", config.dump_dir}};
}

ExperimentConfig experiment_config_from_json(const json& doc) {
  ExperimentConfig config;
  if (doc.contains("dataset")) {
    const auto& ds = doc["dataset"];
    config.dataset.path = ds.value("path", "");
    if (ds.contains("delimiter")) {
      const auto d = ds["delimiter"].get<std::string>();
      if (d.size() != 1) fail(ErrorCode::ParseError, "config: delimiter must be one character");
      config.dataset.delimiter = d[0];
    }
    if (ds.contains("feature_columns"))
      config.dataset.feature_columns = index_list_from_json(ds["feature_columns"]);
    config.dataset.label_column = ds.value("label_column", Index{-1});
    if (ds.contains("positive_classes"))
      config.dataset.positive_classes = ds["positive_classes"].get<std::vector<long>>();
    if (ds.contains("negative_classes"))
      config.dataset.negative_classes = ds["negative_classes"].get<std::vector<long>>();
  }
  if (doc.contains("metric"))
    config.metric = metric_kind_from_string(doc["metric"].get<std::string>());
  config.sample_size = doc.value("sample_size", config.sample_size);
  config.trials = doc.value("trials", config.trials);
  config.seed = doc.value("seed", config.seed);
  config.slow_net = doc.value("slow_net", config.slow_net);
  config.run_heuristic = doc.value("heuristic", config.run_heuristic);
  config.prune_radius_terminal =
      doc.value("prune_radius_terminal", config.prune_radius_terminal);
  config.threads = doc.value("threads", config.threads);
  config.max_resamples = doc.value("max_resamples", config.max_resamples);
  config.output_path = doc.value("output", config.output_path);
  config.dump_dir = doc.value("dump_dir", config.dump_dir);
  return config;
}

json report_to_json(const ExperimentConfig& config, const CompressionReport& report) {
  json trials = json::array();
  json timings = json::array();
  for (const auto& r : report.trials) {
    trials.push_back(json{{"trial", r.trial},
                          {"n", r.n},
                          {"pct_after_net", r.pct_after_net},
                          {"pct_after_heuristic", r.pct_after_heuristic},
                          {"acc_full", r.acc_full},
                          {"acc_compressed", r.acc_compressed},
                          {"accuracy_delta", r.accuracy_delta},
                          {"gamma", r.gamma},
                          {"ddim_estimate", nan_to_null(r.ddim_estimate)},
                          {"zero_margin_resamples", r.zero_margin_resamples}});
    timings.push_back(json{{"trial", r.trial},
                           {"condense_ms", r.condense_ms},
                           {"prune_ms", r.prune_ms}});
  }
  const auto& a = report.aggregate;
  json aggregate{{"trials", a.trials},
                 {"mean_pct_after_net", a.mean_pct_after_net},
                 {"mean_pct_after_heuristic", a.mean_pct_after_heuristic},
                 {"mean_acc_full", a.mean_acc_full},
                 {"mean_acc_compressed", a.mean_acc_compressed},
                 {"mean_accuracy_delta", a.mean_accuracy_delta},
                 {"mean_gamma", a.mean_gamma},
                 {"mean_ddim_estimate", nan_to_null(a.mean_ddim_estimate)},
                 {"zero_margin_resamples", a.zero_margin_resamples}};
  return json{{"type", "compression_report"},
              {"config", experiment_config_to_json(config)},
              {"interrupted", report.interrupted},
              {"trials", std::move(trials)},
              {"aggregate", std::move(aggregate)},
              {"timings", json{{"per_trial", std::move(timings)}, {"total_ms", report.total_ms}}}};
}

LabelCoverInstance labelcover_from_json(const json& doc) {
  LabelCoverInstance lc;
  lc.num_u = doc.at("U").get<Index>();
  lc.num_v = doc.at("V").get<Index>();
  lc.num_a = doc.at("A").get<Index>();
  lc.num_b = doc.at("B").get<Index>();
  for (const auto& e : doc.at("edges")) {
    LabelCoverEdge edge;
    edge.u = e.at("u").get<Index>();
    edge.v = e.at("v").get<Index>();
    for (const auto& p : e.at("pairs")) {
      if (p.size() != 2) fail(ErrorCode::ParseError, "label cover: pair must be [a, b]");
      edge.pairs.emplace_back(p[0].get<Index>(), p[1].get<Index>());
    }
    lc.edges.push_back(std::move(edge));
  }
  lc.validate();
  return lc;
}

json labelcover_to_json(const LabelCoverInstance& lc) {
  json edges = json::array();
  for (const auto& e : lc.edges) {
    json pairs = json::array();
    for (auto [a, b] : e.pairs) pairs.push_back(json::array({a, b}));
    edges.push_back(json{{"u", e.u}, {"v", e.v}, {"pairs", std::move(pairs)}});
  }
  return json{{"U", lc.num_u}, {"V", lc.num_v}, {"A", lc.num_a}, {"B", lc.num_b},
              {"edges", std::move(edges)}};
}

namespace {

json roles_names_json(const std::vector<PointRole>& roles,
                      const std::vector<std::string>& names) {
  json jr = json::array();
  for (auto r : roles) jr.push_back(to_string(r));
  return json{{"roles", std::move(jr)}, {"names", json(names)}};
}

}  // namespace

json wnnc_meta_to_json(const WnncInstance& inst) {
  json doc = roles_names_json(inst.roles, inst.names);
  doc["type"] = "wnnc_instance";
  doc["c"] = inst.c;
  doc["eta"] = inst.eta;
  doc["weights"] = std::vector<double>(inst.weights.data(), inst.weights.data() + inst.size());
  json conn = json::array();
  for (const auto& row : inst.se_connected) conn.push_back(index_list_to_json(row));
  doc["se_connected"] = std::move(conn);
  return doc;
}

json nnc_meta_to_json(const NncInstance& inst) {
  json doc = roles_names_json(inst.roles, inst.names);
  doc["type"] = "nnc_instance";
  doc["margin"] = inst.margin;
  doc["base_points"] = index_list_to_json(inst.base_points);
  json gadgets = json::array();
  for (const auto& g : inst.gadget_points) gadgets.push_back(index_list_to_json(g));
  doc["gadget_points"] = std::move(gadgets);
  return doc;
}

void write_instance_files(const Eigen::MatrixXd& dist, const Eigen::VectorXi& labels,
                          const json& meta, const std::string& prefix) {
  {
    std::ofstream out(prefix + "_dist.csv");
    if (!out) fail(ErrorCode::IoError, "cannot write " + prefix + "_dist.csv");
    out.precision(17);
    for (Index i = 0; i < dist.rows(); ++i) {
      for (Index j = 0; j < dist.cols(); ++j) {
        if (j) out << ',';
        out << dist(i, j);
      }
      out << '\n';
    }
  }
  {
    std::ofstream out(prefix + "_labels.csv");
    if (!out) fail(ErrorCode::IoError, "cannot write " + prefix + "_labels.csv");
    for (Index i = 0; i < labels.size(); ++i) out << labels[i] << '\n';
  }
  write_json_file(meta, prefix + "_meta.json");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return doc;
}

void write_json_file(const json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace nnc
