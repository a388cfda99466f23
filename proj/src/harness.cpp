#include "nnc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "nnc/bounds.hpp"
#include "nnc/classify.hpp"
#include "nnc/json_io.hpp"
#include "nnc/mathutil.hpp"

namespace nnc {

namespace {

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (sample_size < 2 || sample_size % 2 != 0)
    fail(ErrorCode::InvalidArgument, "experiment: sample size must be even and >= 2");
  if (trials < 1) fail(ErrorCode::InvalidArgument, "experiment: trials must be >= 1");
  if (threads < 1) fail(ErrorCode::InvalidArgument, "experiment: threads must be >= 1");
  if (max_resamples < 0)
    fail(ErrorCode::InvalidArgument, "experiment: max resamples must be >= 0");
}

DatasetPool make_pool(RowMatrixXd features, Eigen::VectorXi labels, MetricKind metric) {
  if (features.rows() != labels.size())
    fail(ErrorCode::DimensionMismatch, "make_pool: row/label count mismatch");
  DatasetPool pool;
  pool.features = std::move(features);
  pool.labels = std::move(labels);
  pool.metric = metric;
  for (Index i = 0; i < pool.labels.size(); ++i) {
    if (pool.labels[i] != 1 && pool.labels[i] != -1)
      fail(ErrorCode::InvalidLabel, "make_pool: labels must be +1/-1");
    (pool.labels[i] == 1 ? pool.positives : pool.negatives).push_back(i);
  }
  if (pool.positives.empty() || pool.negatives.empty())
    fail(ErrorCode::MissingClass, "make_pool: a label class is empty");
  return pool;
}

DatasetPool ingest(const ExperimentConfig& config) {
  const auto& ds = config.dataset;
  if (config.metric == MetricKind::ExplicitMatrix)
    fail(ErrorCode::InvalidArgument, "ingest: experiments need a coordinate metric");
  RowMatrixXd raw = parse_numeric_csv(ds.path, ds.delimiter);
  const Index cols = raw.cols();
  const Index label_col = ds.label_column < 0 ? cols + ds.label_column : ds.label_column;
  if (label_col < 0 || label_col >= cols)
    fail(ErrorCode::InvalidArgument, ds.path + ": label column out of range");

  IndexList feat = ds.feature_columns;
  if (feat.empty())
    for (Index c = 0; c < cols; ++c)
      if (c != label_col) feat.push_back(c);
  for (Index c : feat)
    if (c < 0 || c >= cols)
      fail(ErrorCode::InvalidArgument, ds.path + ": feature column out of range");

  auto side_of = [&](double value) -> int {
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9) return 0;
    const long cls = static_cast<long>(r);
    for (long p : ds.positive_classes)
      if (cls == p) return 1;
    for (long m : ds.negative_classes)
      if (cls == m) return -1;
    return 0;  // class filtered out
  };

  std::vector<Index> keep;
  std::vector<int> mapped;
  for (Index i = 0; i < raw.rows(); ++i) {
    const int side = side_of(raw(i, label_col));
    if (side != 0) {
      keep.push_back(i);
      mapped.push_back(side);
    }
  }
  if (keep.empty()) fail(ErrorCode::MissingClass, ds.path + ": no rows match the class lists");

  RowMatrixXd features(static_cast<Index>(keep.size()), static_cast<Index>(feat.size()));
  Eigen::VectorXi labels(static_cast<Index>(keep.size()));
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t c = 0; c < feat.size(); ++c)
      features(static_cast<Index>(r), static_cast<Index>(c)) = raw(keep[r], feat[c]);
    labels[static_cast<Index>(r)] = mapped[r];
  }
  return make_pool(std::move(features), std::move(labels), config.metric);
}

namespace {

/// Partial Fisher-Yates: the first `count` entries of a shuffled copy.
IndexList draw_distinct(const IndexList& from, Index count, std::mt19937_64& rng) {
  IndexList deck = from;
  for (Index k = 0; k < count; ++k) {
    std::uniform_int_distribution<Index> pick(k, static_cast<Index>(deck.size()) - 1);
    std::swap(deck[static_cast<std::size_t>(k)], deck[static_cast<std::size_t>(pick(rng))]);
  }
  deck.resize(static_cast<std::size_t>(count));
  return deck;
}

struct Split {
  RowMatrixXd train_points, test_points;
  Eigen::VectorXi train_labels, test_labels;
};

Split stratified_split(const DatasetPool& pool, Index sample_size, std::mt19937_64& rng) {
  const Index half = sample_size / 2;
  if (static_cast<Index>(pool.positives.size()) < sample_size ||
      static_cast<Index>(pool.negatives.size()) < sample_size)
    fail(ErrorCode::PoolTooSmall,
         "experiment: each class needs " + std::to_string(sample_size) +
             " points for disjoint train/test splits");

  const IndexList pos = draw_distinct(pool.positives, sample_size, rng);
  const IndexList neg = draw_distinct(pool.negatives, sample_size, rng);

  Split split;
  split.train_points.resize(sample_size, pool.features.cols());
  split.test_points.resize(sample_size, pool.features.cols());
  split.train_labels.resize(sample_size);
  split.test_labels.resize(sample_size);
  for (Index k = 0; k < half; ++k) {
    split.train_points.row(k) = pool.features.row(pos[static_cast<std::size_t>(k)]);
    split.train_labels[k] = 1;
    split.train_points.row(half + k) = pool.features.row(neg[static_cast<std::size_t>(k)]);
    split.train_labels[half + k] = -1;
    split.test_points.row(k) = pool.features.row(pos[static_cast<std::size_t>(half + k)]);
    split.test_labels[k] = 1;
    split.test_points.row(half + k) = pool.features.row(neg[static_cast<std::size_t>(half + k)]);
    split.test_labels[half + k] = -1;
  }
  return split;
}

void dump_trial_artifacts(const ExperimentConfig& config, Index trial_index,
                          const LabeledPointSet& train, const CondensedSet& compressed) {
  auto doc = condensed_to_json(compressed, train.size(), &train);
  doc["trial"] = trial_index;
  write_json_file(doc, config.dump_dir + "/trial_" + std::to_string(trial_index) + ".json");
}

}  // namespace

TrialRecord run_trial(const DatasetPool& pool, const ExperimentConfig& config,
                      Index trial_index) {
  config.validate();

  TrialRecord rec;
  rec.trial = trial_index;
  for (Index attempt = 0;; ++attempt) {
    std::mt19937_64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(trial_index),
                                 static_cast<std::uint64_t>(attempt)));
    Split split = stratified_split(pool, config.sample_size, rng);

    try {
      LabeledPointSet train =
          load_points(std::move(split.train_points), std::move(split.train_labels), pool.metric);
      rec.n = train.size();

      const auto t0 = Clock::now();
      CondenseOptions copts;
      copts.slow = config.slow_net;
      CondenseResult condensed = condense(train, copts);
      rec.condense_ms = ms_since(t0);
      rec.gamma = condensed.margin.gamma;
      rec.pct_after_net = 100.0 * condensed.set.retention;

      rec.ddim_estimate = std::numeric_limits<double>::quiet_NaN();
      if (condensed.hierarchy && condensed.hierarchy->levels().size() >= 2)
        rec.ddim_estimate = estimate_ddim(*condensed.hierarchy).value;

      CondensedSet compressed = condensed.set;
      if (config.run_heuristic) {
        PruneOptions popts;
        if (config.prune_radius_terminal && condensed.hierarchy)
          popts.removal_margin = exp2i(condensed.hierarchy->terminal_exponent());
        const auto t1 = Clock::now();
        compressed = prune_heuristic(condensed.set.members, train, condensed.margin.gamma, popts);
        rec.prune_ms = ms_since(t1);
      }
      rec.pct_after_heuristic = 100.0 * compressed.retention;

      IndexList all(static_cast<std::size_t>(train.size()));
      for (Index i = 0; i < train.size(); ++i) all[static_cast<std::size_t>(i)] = i;
      Classifier full{&train, all};
      Classifier small{&train, compressed.members};
      rec.acc_full = 1.0 - empirical_error(full, split.test_points, split.test_labels);
      rec.acc_compressed = 1.0 - empirical_error(small, split.test_points, split.test_labels);
      rec.accuracy_delta = rec.acc_compressed - rec.acc_full;
      if (!config.dump_dir.empty()) dump_trial_artifacts(config, trial_index, train, compressed);
      return rec;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::ZeroMargin) throw;
      ++rec.zero_margin_resamples;
      if (attempt >= config.max_resamples)
        fail(ErrorCode::ZeroMargin,
             "trial " + std::to_string(trial_index) + ": zero-margin draws exhausted " +
                 std::to_string(config.max_resamples) + " resamples");
    }
  }
}

ReportAggregate aggregate_records(const std::vector<TrialRecord>& records) {
  ReportAggregate agg;
  agg.trials = static_cast<Index>(records.size());
  if (records.empty()) return agg;
  Index ddim_count = 0;
  for (const auto& r : records) {
    agg.mean_pct_after_net += r.pct_after_net;
    agg.mean_pct_after_heuristic += r.pct_after_heuristic;
    agg.mean_acc_full += r.acc_full;
    agg.mean_acc_compressed += r.acc_compressed;
    agg.mean_accuracy_delta += r.accuracy_delta;
    agg.mean_gamma += r.gamma;
    if (!std::isnan(r.ddim_estimate)) {
      agg.mean_ddim_estimate += r.ddim_estimate;
      ++ddim_count;
    }
    agg.zero_margin_resamples += r.zero_margin_resamples;
  }
  const double t = static_cast<double>(records.size());
  agg.mean_pct_after_net /= t;
  agg.mean_pct_after_heuristic /= t;
  agg.mean_acc_full /= t;
  agg.mean_acc_compressed /= t;
  agg.mean_accuracy_delta /= t;
  agg.mean_gamma /= t;
  agg.mean_ddim_estimate =
      ddim_count > 0 ? agg.mean_ddim_estimate / static_cast<double>(ddim_count)
                     : std::numeric_limits<double>::quiet_NaN();
  return agg;
}

CompressionReport run_experiment(const DatasetPool& pool, const ExperimentConfig& config) {
  config.validate();
  const auto t0 = Clock::now();

  g_interrupted.store(false);
  auto previous = std::signal(SIGINT, handle_sigint);

  std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
  std::vector<char> done(static_cast<std::size_t>(config.trials), 0);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<Index> next{0};

  auto worker = [&] {
    while (true) {
      const Index t = next.fetch_add(1);
      if (t >= config.trials || g_interrupted.load()) return;
      try {
        records[static_cast<std::size_t>(t)] = run_trial(pool, config, t);
        done[static_cast<std::size_t>(t)] = 1;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (config.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < config.threads; ++t) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  std::signal(SIGINT, previous);
  if (first_error) std::rethrow_exception(first_error);

  CompressionReport report;
  report.interrupted = g_interrupted.load();
  for (Index t = 0; t < config.trials; ++t) {
    if (!done[static_cast<std::size_t>(t)]) break;  // completed prefix only
    report.trials.push_back(records[static_cast<std::size_t>(t)]);
  }
  report.aggregate = aggregate_records(report.trials);
  report.total_ms = ms_since(t0);
  return report;
}

CompressionReport run_experiment(const ExperimentConfig& config) {
  return run_experiment(ingest(config), config);
}

std::string format_report_table(const std::string& dataset_name, const ExperimentConfig& config,
                                const CompressionReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %10s %14s %20s %14s\n", "data set", "sample",
                "% after net", "% after heuristic", "+-% accuracy");
  out << line;
  std::snprintf(line, sizeof(line), "%-24s %10lld %14.2f %20.2f %+14.4f\n", dataset_name.c_str(),
                static_cast<long long>(config.sample_size), report.aggregate.mean_pct_after_net,
                report.aggregate.mean_pct_after_heuristic,
                report.aggregate.mean_accuracy_delta);
  out << line;
  std::snprintf(line, sizeof(line),
                "(%lld trials, mean gamma %.6g, zero-margin resamples %lld%s)\n",
                static_cast<long long>(report.aggregate.trials), report.aggregate.mean_gamma,
                static_cast<long long>(report.aggregate.zero_margin_resamples),
                report.interrupted ? ", interrupted" : "");
  out << line;
  return out.str();
}

}  // namespace nnc
