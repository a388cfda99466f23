#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "nnc/harness.hpp"
#include "nnc/json_io.hpp"
#include "support/generators.hpp"

using namespace nnc;

namespace {

DatasetPool synthetic_cluster_pool(Index per_side, Index d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-0.02, 0.02);
  const Index n = 2 * per_side;
  RowMatrixXd pts(n, d);
  Eigen::VectorXi labels(n);
  for (Index i = 0; i < per_side; ++i) {
    for (Index j = 0; j < d; ++j) pts(i, j) = noise(rng);
    labels[i] = 1;
    for (Index j = 0; j < d; ++j) pts(per_side + i, j) = 1.0 + noise(rng);
    labels[per_side + i] = -1;
  }
  return make_pool(std::move(pts), std::move(labels), MetricKind::L1);
}

ExperimentConfig basic_config(Index sample_size, Index trials) {
  ExperimentConfig config;
  config.sample_size = sample_size;
  config.trials = trials;
  config.seed = 99;
  return config;
}

bool records_equal(const TrialRecord& a, const TrialRecord& b) {
  return a.trial == b.trial && a.n == b.n && a.pct_after_net == b.pct_after_net &&
         a.pct_after_heuristic == b.pct_after_heuristic && a.acc_full == b.acc_full &&
         a.acc_compressed == b.acc_compressed && a.accuracy_delta == b.accuracy_delta &&
         a.gamma == b.gamma &&
         (a.ddim_estimate == b.ddim_estimate ||
          (std::isnan(a.ddim_estimate) && std::isnan(b.ddim_estimate))) &&
         a.zero_margin_resamples == b.zero_margin_resamples;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("ingest applies class filters and mappings") {
  const std::string path = "/tmp/nnc_pool.csv";
  {
    std::ofstream out(path);
    out << "0.0,0.1,4\n0.2,0.1,7\n0.4,0.0,4\n0.5,0.5,3\n0.9,0.8,7\n";
  }
  ExperimentConfig config;
  config.dataset.path = path;
  config.dataset.positive_classes = {4};
  config.dataset.negative_classes = {7};
  auto pool = ingest(config);
  CHECK(pool.size() == 4);  // class 3 filtered out
  CHECK(pool.positives.size() == 2);
  CHECK(pool.negatives.size() == 2);
  CHECK(pool.features.cols() == 2);
  std::remove(path.c_str());
}

TEST_CASE("ingest error reporting") {
  const std::string path = "/tmp/nnc_pool_bad.csv";
  {
    std::ofstream out(path);
    out << "0.0,x,1\n";
  }
  ExperimentConfig config;
  config.dataset.path = path;
  config.dataset.positive_classes = {1};
  config.dataset.negative_classes = {2};
  try {
    ingest(config);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  {
    std::ofstream out(path);
    out << "0.0,0.1,1\n0.5,0.5,1\n";
  }
  try {
    ingest(config);  // no negatives present
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingClass);
  }
  std::remove(path.c_str());
}

TEST_CASE("a two-cluster pool compresses to two points with no accuracy loss") {
  auto pool = synthetic_cluster_pool(200, 2, 5);
  auto config = basic_config(40, 1);
  auto rec = run_trial(pool, config, 0);
  CHECK(rec.n == 40);
  CHECK(rec.pct_after_net == doctest::Approx(100.0 * 2.0 / 40.0));
  CHECK(rec.pct_after_heuristic <= rec.pct_after_net);
  CHECK(rec.accuracy_delta == doctest::Approx(0.0));
  CHECK(rec.acc_full == doctest::Approx(1.0));
}

TEST_CASE("trials are bit-deterministic in (seed, index)") {
  auto pool = synthetic_cluster_pool(100, 2, 6);
  auto config = basic_config(20, 1);
  auto a = run_trial(pool, config, 3);
  auto b = run_trial(pool, config, 3);
  CHECK(records_equal(a, b));

  auto c = run_trial(pool, config, 4);
  CHECK_FALSE(records_equal(a, c));  // different trial index draws differently
}

TEST_CASE("pool too small for disjoint stratified splits") {
  auto pool = synthetic_cluster_pool(10, 1, 7);
  auto config = basic_config(40, 1);  // needs 40 per class, pool has 10
  try {
    run_trial(pool, config, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoolTooSmall);
  }
}

TEST_CASE("single-trial experiment aggregates equal the record") {
  auto pool = synthetic_cluster_pool(60, 2, 8);
  auto config = basic_config(24, 1);
  auto report = run_experiment(pool, config);
  REQUIRE(report.trials.size() == 1);
  CHECK(report.aggregate.trials == 1);
  CHECK(report.aggregate.mean_pct_after_net == report.trials[0].pct_after_net);
  CHECK(report.aggregate.mean_accuracy_delta == report.trials[0].accuracy_delta);
}

TEST_CASE("heuristic retention never exceeds net retention across random pools") {
  std::mt19937_64 rng(60);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RowMatrixXd pts(400, 3);
  for (Index i = 0; i < 400; ++i)
    for (Index j = 0; j < 3; ++j) pts(i, j) = unif(rng);
  Eigen::VectorXi labels(400);
  for (Index i = 0; i < 400; ++i) labels[i] = unif(rng) < 0.5 ? 1 : -1;
  auto pool = make_pool(std::move(pts), std::move(labels), MetricKind::L2);

  auto config = basic_config(60, 6);
  auto report = run_experiment(pool, config);
  REQUIRE(report.trials.size() == 6);
  for (const auto& r : report.trials) {
    CHECK(r.pct_after_heuristic <= r.pct_after_net);
    CHECK(r.pct_after_heuristic > 0.0);
    CHECK(r.pct_after_net <= 100.0);
  }
}

TEST_CASE("reports are invariant to thread count and rerun byte-for-byte") {
  auto pool = synthetic_cluster_pool(80, 2, 9);
  auto config = basic_config(24, 5);

  auto seq = run_experiment(pool, config);
  config.threads = 4;
  auto par = run_experiment(pool, config);
  REQUIRE(seq.trials.size() == par.trials.size());
  for (std::size_t i = 0; i < seq.trials.size(); ++i)
    CHECK(records_equal(seq.trials[i], par.trials[i]));

  // Byte identity of the deterministic report section (timings excluded).
  auto doc_a = report_to_json(config, seq);
  auto doc_b = report_to_json(config, par);
  doc_a.erase("timings");
  doc_b.erase("timings");
  CHECK(doc_a.dump() == doc_b.dump());
}

TEST_CASE("experiment config json round trip") {
  ExperimentConfig config;
  config.dataset.path = "data/skin.txt";
  config.dataset.positive_classes = {1};
  config.dataset.negative_classes = {2};
  config.dataset.feature_columns = {0, 1, 2};
  config.metric = MetricKind::L1;
  config.sample_size = 10000;
  config.trials = 50;
  config.seed = 20240501;
  config.threads = 3;
  auto doc = experiment_config_to_json(config);
  auto back = experiment_config_from_json(doc);
  CHECK(back.dataset.path == config.dataset.path);
  CHECK(back.dataset.positive_classes == config.dataset.positive_classes);
  CHECK(back.dataset.feature_columns == config.dataset.feature_columns);
  CHECK(back.sample_size == config.sample_size);
  CHECK(back.trials == config.trials);
  CHECK(back.seed == config.seed);
  CHECK(back.threads == config.threads);
  CHECK(back.metric == MetricKind::L1);
}

TEST_CASE("config validation rejects bad shapes") {
  auto pool = synthetic_cluster_pool(30, 1, 10);
  ExperimentConfig odd = basic_config(21, 1);
  CHECK_THROWS_AS(run_trial(pool, odd, 0), Error);
  ExperimentConfig none = basic_config(20, 0);
  CHECK_THROWS_AS(run_experiment(pool, none), Error);
}

TEST_CASE("dump_dir writes loadable per-trial artifacts") {
  auto pool = synthetic_cluster_pool(60, 2, 12);
  auto config = basic_config(20, 1);
  config.dump_dir = "/tmp";
  auto rec = run_trial(pool, config, 7);
  (void)rec;
  auto doc = load_json_file("/tmp/trial_7.json");
  auto saved = condensed_from_json(doc);
  CHECK(saved.sample_size == 20);
  CHECK_FALSE(saved.set.members.empty());
  CHECK(doc["trial"] == 7);
  std::remove("/tmp/trial_7.json");
}

TEST_CASE("condensed set json round trip preserves classification") {
  std::mt19937_64 rng(61);
  auto set = testgen::cluster_set(rng, 20, 2, MetricKind::L1);
  auto result = condense(set);
  auto doc = condensed_to_json(result.set, set.size(), &set);
  auto saved = condensed_from_json(doc);
  CHECK(saved.set.members == result.set.members);
  CHECK(saved.sample_size == set.size());
  REQUIRE(saved.member_set.has_value());
  CHECK(saved.member_set->size() == static_cast<Index>(result.set.members.size()));
  // Labels of the embedded members match the originals.
  for (std::size_t k = 0; k < result.set.members.size(); ++k)
    CHECK(saved.member_set->label(static_cast<Index>(k)) == set.label(result.set.members[k]));
}

TEST_SUITE_END();
