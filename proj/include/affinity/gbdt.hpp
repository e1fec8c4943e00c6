#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "affinity/featurize.hpp"
#include "affinity/histogram.hpp"

namespace affinity {

// Gradient-boosted regression trees with squared-error loss: the ensemble is
// grown additively, each tree fitted to the residuals (the negative gradient
// of the loss at the current predictions) on histogram-binned features, with
// best-first (leaf-wise) growth.

struct TrainConfig {
    std::size_t n_trees = 1000;
    double learning_rate = 0.1;
    std::size_t max_depth = 10;
    std::size_t max_leaves = 244;
    std::size_t min_child_samples = 20;
    double l2_leaf_reg = 0.0;
    double bagging_fraction = 1.0;
    std::size_t bagging_freq = 0;  // 0 disables bagging
    double feature_fraction = 0.8;
    std::size_t max_bins = 255;
    std::optional<std::size_t> early_stopping_rounds;
    std::uint64_t rng_seed = 0;

    void validate() const;  // throws ConfigError

    // Alternative tuned preset: depth-10 trees under strong L2 leaf
    // regularization (73.47) instead of the leaf-count-driven defaults.
    static TrainConfig depth_regularized();
};

// Split admissibility guard: a split must improve the objective by more than
// this, so zero-variance nodes do not split on accumulation rounding noise.
// Part of the split-selection contract (test oracles apply the same rule).
inline constexpr double kMinSplitGain = 1e-12;

// Per-feature binning thresholds. Bins are upper-inclusive: the bin index of
// v is the number of thresholds strictly below v, i.e. bin b spans
// (thresholds[b-1], thresholds[b]].
struct BinMap {
    std::vector<std::vector<double>> thresholds;  // strictly increasing per feature

    std::size_t n_features() const { return thresholds.size(); }
    std::size_t n_bins(std::size_t feature) const { return thresholds[feature].size() + 1; }
    std::uint8_t bin_index(std::size_t feature, double value) const;

    bool operator==(const BinMap&) const = default;
};

// Thresholds at quantile boundaries of each column; columns with at most
// max_bins distinct values get exact midpoint thresholds (lossless).
BinMap build_bins(const FeatureMatrix& matrix, std::size_t max_bins);

BinnedMatrix bin_matrix(const FeatureMatrix& matrix, const BinMap& bins);

struct TreeNode {
    int feature = -1;        // -1 marks a leaf
    double threshold = 0.0;  // raw-value threshold; value <= threshold goes left
    int left = -1;
    int right = -1;
    double gain = 0.0;       // split gain (internal nodes only)
    double value = 0.0;      // leaf value
    std::uint64_t count = 0; // training rows that reached this node

    bool is_leaf() const { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

struct Tree {
    std::vector<TreeNode> nodes;  // root at index 0

    double predict_row(std::span<const double> row) const;
    std::size_t leaf_count() const;

    bool operator==(const Tree&) const = default;
};

// Residuals y - f, the negative gradient of L = 1/2 (f - y)^2 w.r.t. f.
std::vector<double> negative_gradient(std::span<const double> labels,
                                      std::span<const double> predictions);

// One regression tree fitted to `gradients`, grown best-first. Split gain is
//   G_L^2/(n_L + lambda) + G_R^2/(n_R + lambda) - G_P^2/(n_P + lambda)
// with G the gradient sum over a node; leaf value is G/(n + lambda). Splits
// violating min_child_samples or with gain <= kMinSplitGain are rejected;
// ties between equal gains resolve to the lowest feature index, then the
// lowest threshold, then the earliest-created node. Fewer than
// 2*min_child_samples active rows yield a single-leaf tree (with a warning
// when `warnings` is given).
Tree fit_tree(const BinnedMatrix& binned, const BinMap& bins,
              std::span<const double> gradients, const TrainConfig& cfg,
              const std::vector<std::size_t>& active_rows,
              const std::vector<int>& active_features,
              std::vector<std::string>* warnings = nullptr);

struct Ensemble {
    std::string version = "affinity.gbdt/1";
    double base_score = 0.0;
    double learning_rate = 0.1;
    std::vector<Tree> trees;
    BinMap bin_map;
    std::vector<std::string> feature_names;

    double predict_row(std::span<const double> row) const;

    bool operator==(const Ensemble&) const = default;
};

struct IterationLog {
    std::size_t iteration = 0;
    double train_rmse = 0.0;
    std::optional<double> valid_rmse;
};

struct TrainResult {
    Ensemble model;
    std::vector<IterationLog> log;
    std::vector<double> train_predictions;  // of the returned model, on the training rows
    std::size_t best_iteration = 0;         // 0-based index of the last kept tree
    bool early_stopped = false;
    std::vector<std::string> warnings;
};

// Boosting driver: base score = mean label, then n_trees rounds of residual
// fitting with seeded bagging / feature subsampling per the config. With a
// validation set and early_stopping_rounds set, training stops once the
// validation RMSE has not improved for that many rounds and the ensemble is
// truncated to the best iteration. Deterministic for a fixed seed and config
// at any thread count.
TrainResult train(const FeatureMatrix& matrix, const FeatureMatrix* valid,
                  const TrainConfig& cfg);

// Ensemble prediction f0 + lr * sum_t tree_t(row) for every row. Column
// names must match the training columns exactly.
std::vector<double> predict(const Ensemble& model, const FeatureMatrix& matrix);

// Total split gain per feature over all trees, normalized to sum 1 (all
// zeros when the ensemble has no splits).
std::map<std::string, double> feature_importance(const Ensemble& model);

}  // namespace affinity
