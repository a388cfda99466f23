#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nnc/condense.hpp"
#include "nnc/metric.hpp"

namespace nnc {

struct DatasetDescriptor {
  std::string path;
  char delimiter = '\0';      // '\0' = auto
  IndexList feature_columns;  // empty = all columns except the label
  Index label_column = -1;    // -1 = last column
  std::vector<long> positive_classes;  // raw class values mapped to +1
  std::vector<long> negative_classes;  // raw class values mapped to -1
};

struct ExperimentConfig {
  DatasetDescriptor dataset;
  MetricKind metric = MetricKind::L1;
  Index sample_size = 2000;  // per split, even; sample_size/2 points per label
  Index trials = 50;
  std::uint64_t seed = 1;
  bool slow_net = false;
  bool run_heuristic = true;
  bool prune_radius_terminal = false;  // removal radius 2^{i_min} instead of gamma
  int threads = 1;
  Index max_resamples = 20;  // zero-margin draws tolerated per trial
  std::string output_path;   // JSON report destination; empty = stdout table only
  std::string dump_dir;      // per-trial condensed-set artifacts; empty = off

  void validate() const;
};

/// Raw binary pool: unnormalized features with mapped +/-1 labels. Trials
/// draw and normalize their own samples.
struct DatasetPool {
  RowMatrixXd features;
  Eigen::VectorXi labels;
  MetricKind metric = MetricKind::L1;
  IndexList positives, negatives;

  Index size() const { return labels.size(); }
};

DatasetPool ingest(const ExperimentConfig& config);

/// Pool assembly from in-memory data (synthetic pools in tests).
DatasetPool make_pool(RowMatrixXd features, Eigen::VectorXi labels, MetricKind metric);

struct TrialRecord {
  Index trial = 0;
  Index n = 0;  // training sample size
  double pct_after_net = 0.0;
  double pct_after_heuristic = 0.0;
  double acc_full = 0.0;
  double acc_compressed = 0.0;
  double accuracy_delta = 0.0;  // acc_compressed - acc_full
  double gamma = 0.0;
  double ddim_estimate = 0.0;  // NaN when the hierarchy has a single level
  Index zero_margin_resamples = 0;
  double condense_ms = 0.0;  // timing side-channel, excluded from determinism
  double prune_ms = 0.0;
};

/// Deterministic given (config.seed, trial_index): disjoint stratified
/// train/test draw, condense, prune, evaluate. Zero-margin draws resample.
TrialRecord run_trial(const DatasetPool& pool, const ExperimentConfig& config,
                      Index trial_index);

struct ReportAggregate {
  Index trials = 0;
  double mean_pct_after_net = 0.0;
  double mean_pct_after_heuristic = 0.0;
  double mean_acc_full = 0.0;
  double mean_acc_compressed = 0.0;
  double mean_accuracy_delta = 0.0;
  double mean_gamma = 0.0;
  double mean_ddim_estimate = 0.0;
  Index zero_margin_resamples = 0;
};

struct CompressionReport {
  std::vector<TrialRecord> trials;
  ReportAggregate aggregate;
  bool interrupted = false;
  double total_ms = 0.0;
};

ReportAggregate aggregate_records(const std::vector<TrialRecord>& records);

/// Runs all trials (optionally across threads; aggregation is a fold in trial
/// order, so results are independent of the execution schedule). SIGINT
/// flushes the completed prefix with interrupted = true.
CompressionReport run_experiment(const DatasetPool& pool, const ExperimentConfig& config);
CompressionReport run_experiment(const ExperimentConfig& config);

std::string format_report_table(const std::string& dataset_name, const ExperimentConfig& config,
                                const CompressionReport& report);

}  // namespace nnc
