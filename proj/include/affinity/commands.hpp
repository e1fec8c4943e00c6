#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affinity/featurize.hpp"
#include "affinity/runconfig.hpp"
#include "affinity/synthetic.hpp"

namespace affinity {

// In-process command implementations behind the CLI subcommands. Each writes
// its artifacts under cfg.out_dir, records them in <out>/manifest.json
// (path, sha256, bytes) and returns what it did. Timing and cache notes go
// to `log`; artifact contents carry no timestamps, so identical inputs give
// byte-identical outputs.
struct CommandResult {
    std::vector<std::string> artifacts;
    std::vector<std::string> log;
};

struct GenSynthOptions {
    std::size_t n_complexes = 100;
    std::size_t atoms_min = 20;
    std::size_t atoms_max = 60;
    std::uint64_t seed = 1;
    SyntheticTarget target = SyntheticTarget::kPairwiseContact;
    double noise_sigma = 0.3;
    std::string out_path;
};

CommandResult cmd_gen_synth(const GenSynthOptions& opts);

// Featurizes the configured datasets (train first; valid/test frozen to the
// train schema). Results are cached under <out>/cache keyed by the dataset
// bytes, the interaction settings and the schema source; a hit skips parsing
// and featurization entirely.
CommandResult cmd_featurize(const RunConfig& cfg);

// Trains one model per seed; each model document embeds the frozen schema
// and interaction settings so downstream commands can featurize new data
// consistently. Writes per-iteration train/valid RMSE logs. When early
// stopping is configured and no validation file is given, a seeded fraction
// of the training complexes is carved off as the validation split.
CommandResult cmd_train(const RunConfig& cfg);

// Predictions of one model (cfg.model_path, or the first seed's model under
// cfg.out_dir) for every test dataset.
CommandResult cmd_predict(const RunConfig& cfg);

// Evaluates every seed model on every test dataset, aggregates metrics
// across seeds in "mean (std)" form, and appends an OLS baseline row when a
// training dataset is available.
CommandResult cmd_evaluate(const RunConfig& cfg);

// Seeded random search over TunerRanges, minimizing validation RMSE. Trial 0
// always evaluates cfg.train_config, so the winner is never worse than the
// configured baseline. The winning configuration is written to
// <out>/best_config.json and returned via *best when given.
CommandResult cmd_tune(const RunConfig& cfg, TrainConfig* best = nullptr);

// Importance charts and CSV for one model (cfg.model_path or the first
// seed's model).
CommandResult cmd_importance(const RunConfig& cfg);

// --- shared pipeline pieces (exposed for tests) ---

struct FeaturizedData {
    FeatureMatrix matrix;
    DatasetSchema schema;
    bool cache_hit = false;
    std::string cache_key;
};

FeaturizedData featurize_with_cache(const std::string& dataset_path,
                                    const InteractionConfig& interaction,
                                    const std::optional<DatasetSchema>& frozen_schema,
                                    const std::string& cache_dir,
                                    std::vector<std::string>* log = nullptr);

// Seeded validation carve: shuffles complex indices and moves
// ceil(fraction * n) of them into the validation set; both halves keep their
// original relative order.
void split_validation(std::vector<ComplexRecord>& complexes, double fraction,
                      std::uint64_t split_seed, std::vector<ComplexRecord>& valid_out);

void update_manifest(const std::string& out_dir, const std::vector<std::string>& artifacts);

}  // namespace affinity
