#include <algorithm>
#include <cmath>

#include "affinity/errors.hpp"
#include "affinity/gbdt.hpp"

namespace affinity {

void TrainConfig::validate() const {
    if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
    if (!(learning_rate > 0.0) || learning_rate > 1.0)
        throw ConfigError("learning_rate must be in (0, 1]");
    if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (max_leaves < 1) throw ConfigError("max_leaves must be >= 1");
    if (min_child_samples < 1) throw ConfigError("min_child_samples must be >= 1");
    if (l2_leaf_reg < 0.0 || !std::isfinite(l2_leaf_reg))
        throw ConfigError("l2_leaf_reg must be >= 0");
    if (!(bagging_fraction > 0.0) || bagging_fraction > 1.0)
        throw ConfigError("bagging_fraction must be in (0, 1]");
    if (!(feature_fraction > 0.0) || feature_fraction > 1.0)
        throw ConfigError("feature_fraction must be in (0, 1]");
    if (max_bins < 2 || max_bins > 255)
        throw ConfigError("max_bins must be in [2, 255]");
    if (early_stopping_rounds && *early_stopping_rounds < 1)
        throw ConfigError("early_stopping_rounds must be >= 1 when set");
}

TrainConfig TrainConfig::depth_regularized() {
    TrainConfig cfg;
    cfg.max_depth = 10;
    cfg.l2_leaf_reg = 73.47;
    return cfg;
}

std::uint8_t BinMap::bin_index(std::size_t feature, double value) const {
    const auto& thr = thresholds[feature];
    // number of thresholds strictly below `value`
    const auto it = std::lower_bound(thr.begin(), thr.end(), value);
    return static_cast<std::uint8_t>(it - thr.begin());
}

BinMap build_bins(const FeatureMatrix& matrix, std::size_t max_bins) {
    if (matrix.n_rows() == 0)
        throw ConfigError("build_bins: empty matrix");
    if (max_bins < 2 || max_bins > 255)
        throw ConfigError("build_bins: max_bins must be in [2, 255]");

    BinMap bins;
    bins.thresholds.resize(matrix.n_cols());
    const std::size_t n = matrix.n_rows();

    for (std::size_t c = 0; c < matrix.n_cols(); ++c) {
        std::vector<double> sorted(n);
        for (std::size_t r = 0; r < n; ++r) sorted[r] = matrix.at(r, c);
        std::sort(sorted.begin(), sorted.end());

        std::vector<double> distinct(sorted);
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        std::vector<double>& thr = bins.thresholds[c];
        if (distinct.size() <= max_bins) {
            // Lossless: midpoints between consecutive distinct values.
            thr.reserve(distinct.size() > 0 ? distinct.size() - 1 : 0);
            for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
                const double mid = distinct[k] + (distinct[k + 1] - distinct[k]) / 2.0;
                if (thr.empty() || mid > thr.back()) thr.push_back(mid);
            }
        } else {
            // Quantile boundaries of the full sorted column.
            thr.reserve(max_bins - 1);
            for (std::size_t k = 1; k < max_bins; ++k) {
                const std::size_t cut = k * n / max_bins;
                if (cut == 0 || cut >= n) continue;
                const double lo = sorted[cut - 1];
                const double hi = sorted[cut];
                if (lo == hi) continue;  // tie spans the boundary; merge bins
                const double mid = lo + (hi - lo) / 2.0;
                if (thr.empty() || mid > thr.back()) thr.push_back(mid);
            }
        }
    }
    return bins;
}

BinnedMatrix bin_matrix(const FeatureMatrix& matrix, const BinMap& bins) {
    if (bins.n_features() != matrix.n_cols())
        throw ConfigError("bin_matrix: BinMap feature count mismatch");
    BinnedMatrix out;
    out.n_rows = matrix.n_rows();
    out.n_features = matrix.n_cols();
    out.bins.resize(out.n_rows * out.n_features);
    const auto n_features = static_cast<std::ptrdiff_t>(out.n_features);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t f = 0; f < n_features; ++f) {
        const auto fc = static_cast<std::size_t>(f);
        for (std::size_t r = 0; r < out.n_rows; ++r)
            out.bins[fc * out.n_rows + r] = bins.bin_index(fc, matrix.at(r, fc));
    }
    return out;
}

}  // namespace affinity
