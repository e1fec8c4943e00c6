#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "affinity/dataset.hpp"
#include "affinity/featurize.hpp"
#include "affinity/gbdt.hpp"

namespace affinity {

// Random-search ranges for cmd_tune. learning_rate and l2_leaf_reg sample
// log-uniformly, everything else uniformly. The defaults bracket the tuned
// operating points the presets use (feature fraction 0.8, L2 leaf
// regularization 73.47).
struct TunerRanges {
    std::size_t n_trials = 20;
    std::pair<double, double> learning_rate = {0.01, 0.3};
    std::pair<std::uint64_t, std::uint64_t> max_leaves = {16, 300};
    std::pair<std::uint64_t, std::uint64_t> max_depth = {4, 12};
    std::pair<std::uint64_t, std::uint64_t> min_child_samples = {5, 50};
    std::pair<double, double> l2_leaf_reg = {0.01, 200.0};
    std::pair<double, double> feature_fraction = {0.4, 1.0};
    std::pair<double, double> bagging_fraction = {0.5, 1.0};

    void validate() const;  // throws ConfigError
};

// Everything a pipeline run needs: dataset paths, featurization and training
// parameters, seeds and output locations. Loaded from a JSON config file;
// CLI flags override file values.
struct RunConfig {
    std::string train_path;
    std::string valid_path;
    std::vector<std::string> test_paths;
    std::string out_dir = "out";
    std::string model_path;  // explicit model for predict/importance/evaluate

    InteractionConfig interaction;
    TrainConfig train_config;
    std::vector<std::uint64_t> seeds = {1};

    std::optional<TunerRanges> tuner;
    double valid_fraction = 0.1;  // carved split when no valid file is given
    std::uint64_t split_seed = 0;
    int threads = 0;  // 0 keeps the OpenMP default / AFFINITY_THREADS value

    std::string cache_dir() const { return out_dir + "/cache"; }

    void validate_for_training() const;  // throws ConfigError

    static RunConfig from_json_file(const std::string& path);
    void merge_json(const nlohmann::ordered_json& j);  // file values, pre-override
};

// JSON (de)serialization helpers shared by config files, model documents and
// cache metadata.
nlohmann::ordered_json interaction_to_json(const InteractionConfig& cfg);
InteractionConfig interaction_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json train_config_to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json schema_to_json(const DatasetSchema& schema);
DatasetSchema schema_from_json(const nlohmann::ordered_json& j);

std::vector<std::uint64_t> parse_seed_list(const std::string& csv);

}  // namespace affinity
