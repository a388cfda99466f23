#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "nnc/condense.hpp"
#include "nnc/hardness.hpp"
#include "nnc/harness.hpp"
#include "nnc/nets.hpp"

namespace nnc {

using nlohmann::json;

json net_to_json(const Net& net);
json hierarchy_to_json(const NetHierarchy& hierarchy);

/// Condensed-set document. When the reference set is supplied (vector mode),
/// member coordinates and labels are embedded so the set can classify on its
/// own after reload.
json condensed_to_json(const CondensedSet& set, Index sample_size,
                       const LabeledPointSet* reference = nullptr);

struct SavedCondensedSet {
  CondensedSet set;
  Index sample_size = 0;
  /// Members re-materialized as their own point set, present when the source
  /// document embedded coordinates.
  std::optional<LabeledPointSet> member_set;
};

SavedCondensedSet condensed_from_json(const json& doc);

json experiment_config_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const json& doc);

/// Deterministic report document; wall-clock timings live under the separate
/// "timings" key.
json report_to_json(const ExperimentConfig& config, const CompressionReport& report);

LabelCoverInstance labelcover_from_json(const json& doc);
json labelcover_to_json(const LabelCoverInstance& lc);

json wnnc_meta_to_json(const WnncInstance& inst);
json nnc_meta_to_json(const NncInstance& inst);

/// Distance-matrix CSV + label file + metadata JSON, loadable by
/// load_matrix_csv.
void write_instance_files(const Eigen::MatrixXd& dist, const Eigen::VectorXi& labels,
                          const json& meta, const std::string& prefix);

json load_json_file(const std::string& path);
void write_json_file(const json& doc, const std::string& path);

}  // namespace nnc
