#include <algorithm>
#include <cmath>

#include "affinity/errors.hpp"
#include "affinity/gbdt.hpp"
#include "affinity/metrics.hpp"
#include "affinity/rng.hpp"

namespace affinity {

std::vector<double> negative_gradient(std::span<const double> labels,
                                      std::span<const double> predictions) {
    if (labels.size() != predictions.size())
        throw TrainError("negative_gradient: length mismatch (" +
                         std::to_string(labels.size()) + " vs " +
                         std::to_string(predictions.size()) + ")");
    std::vector<double> residuals(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!std::isfinite(labels[i]) || !std::isfinite(predictions[i]))
            throw TrainError("negative_gradient: non-finite input at index " +
                             std::to_string(i));
        residuals[i] = labels[i] - predictions[i];
    }
    return residuals;
}

double Ensemble::predict_row(std::span<const double> row) const {
    double acc = base_score;
    for (const Tree& tree : trees) acc += learning_rate * tree.predict_row(row);
    return acc;
}

std::vector<double> predict(const Ensemble& model, const FeatureMatrix& matrix) {
    if (matrix.column_names() != model.feature_names) {
        std::string msg = "predict: column names do not match the model (model has " +
                          std::to_string(model.feature_names.size()) + " features, matrix " +
                          std::to_string(matrix.n_cols()) + ")";
        for (std::size_t c = 0; c < std::min(model.feature_names.size(), matrix.n_cols()); ++c)
            if (model.feature_names[c] != matrix.column_names()[c]) {
                msg += "; first mismatch at column " + std::to_string(c) + ": '" +
                       model.feature_names[c] + "' vs '" + matrix.column_names()[c] + "'";
                break;
            }
        throw SchemaError(msg);
    }
    matrix.check_finite();
    std::vector<double> out(matrix.n_rows());
    const auto n = static_cast<std::ptrdiff_t>(matrix.n_rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r)
        out[static_cast<std::size_t>(r)] = model.predict_row(matrix.row(static_cast<std::size_t>(r)));
    return out;
}

TrainResult train(const FeatureMatrix& matrix, const FeatureMatrix* valid,
                  const TrainConfig& cfg) {
    cfg.validate();
    if (matrix.n_rows() == 0)
        throw TrainError("train: empty matrix");
    matrix.check_finite();
    if (valid != nullptr) {
        if (valid->column_names() != matrix.column_names())
            throw TrainError("train: validation matrix columns do not match training columns");
        valid->check_finite();
    }

    const std::size_t n = matrix.n_rows();
    const std::size_t n_features = matrix.n_cols();
    const auto& labels = matrix.labels();

    TrainResult result;
    Ensemble& model = result.model;
    model.learning_rate = cfg.learning_rate;
    model.feature_names = matrix.column_names();
    model.bin_map = build_bins(matrix, cfg.max_bins);
    const BinnedMatrix binned = bin_matrix(matrix, model.bin_map);

    double label_sum = 0.0;
    for (const double y : labels) label_sum += y;
    model.base_score = label_sum / static_cast<double>(n);

    std::vector<double> pred(n, model.base_score);
    std::vector<double> pred_valid;
    if (valid != nullptr) pred_valid.assign(valid->n_rows(), model.base_score);

    std::vector<std::size_t> all_rows(n);
    for (std::size_t r = 0; r < n; ++r) all_rows[r] = r;
    std::vector<int> all_features(n_features);
    for (std::size_t f = 0; f < n_features; ++f) all_features[f] = static_cast<int>(f);

    Rng bagging_rng(mix_seed(cfg.rng_seed, 0x8a6));
    Rng feature_rng(mix_seed(cfg.rng_seed, 0xfea));

    const bool bagging_on = cfg.bagging_freq > 0 && cfg.bagging_fraction < 1.0;
    std::vector<std::size_t> bag = all_rows;

    double best_valid = std::numeric_limits<double>::infinity();
    std::size_t best_iter = 0;
    std::size_t rounds_since_best = 0;

    for (std::size_t t = 0; t < cfg.n_trees; ++t) {
        const std::vector<double> residuals = negative_gradient(labels, pred);

        if (bagging_on && t % cfg.bagging_freq == 0) {
            const auto k = static_cast<std::size_t>(
                std::ceil(cfg.bagging_fraction * static_cast<double>(n)));
            bag = bagging_rng.sample_indices(n, std::max<std::size_t>(k, 1));
        }
        std::vector<int> features = all_features;
        if (cfg.feature_fraction < 1.0) {
            const auto k = std::max<std::size_t>(
                1, static_cast<std::size_t>(
                       std::ceil(cfg.feature_fraction * static_cast<double>(n_features))));
            const auto picked = feature_rng.sample_indices(n_features, k);
            features.clear();
            for (const std::size_t f : picked) features.push_back(static_cast<int>(f));
        }

        model.trees.push_back(fit_tree(binned, model.bin_map, residuals, cfg, bag, features,
                                       &result.warnings));
        const Tree& tree = model.trees.back();

        const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < nn; ++r)
            pred[static_cast<std::size_t>(r)] +=
                cfg.learning_rate * tree.predict_row(matrix.row(static_cast<std::size_t>(r)));

        IterationLog entry;
        entry.iteration = t;
        entry.train_rmse = rmse(labels, pred);

        if (valid != nullptr) {
            const auto nv = static_cast<std::ptrdiff_t>(valid->n_rows());
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t r = 0; r < nv; ++r)
                pred_valid[static_cast<std::size_t>(r)] +=
                    cfg.learning_rate *
                    tree.predict_row(valid->row(static_cast<std::size_t>(r)));
            entry.valid_rmse = rmse(valid->labels(), pred_valid);

            if (cfg.early_stopping_rounds) {
                if (*entry.valid_rmse < best_valid) {
                    best_valid = *entry.valid_rmse;
                    best_iter = t;
                    rounds_since_best = 0;
                } else if (++rounds_since_best >= *cfg.early_stopping_rounds) {
                    result.log.push_back(entry);
                    result.early_stopped = true;
                    break;
                }
            }
        }
        if (!result.early_stopped) result.log.push_back(entry);
    }

    if (result.early_stopped) {
        model.trees.resize(best_iter + 1);
        result.best_iteration = best_iter;
    } else {
        result.best_iteration = model.trees.empty() ? 0 : model.trees.size() - 1;
    }

    // Canonical predictions of the returned (possibly truncated) ensemble.
    result.train_predictions = predict(model, matrix);
    return result;
}

std::map<std::string, double> feature_importance(const Ensemble& model) {
    std::map<std::string, double> importance;
    for (const auto& name : model.feature_names) importance[name] = 0.0;
    double total = 0.0;
    for (const Tree& tree : model.trees)
        for (const TreeNode& node : tree.nodes)
            if (!node.is_leaf()) {
                importance[model.feature_names[static_cast<std::size_t>(node.feature)]] +=
                    node.gain;
                total += node.gain;
            }
    if (total > 0.0)
        for (auto& [name, value] : importance) value /= total;
    return importance;
}

}  // namespace affinity
