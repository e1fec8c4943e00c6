#include <algorithm>
#include <cmath>
#include <limits>

#include "affinity/errors.hpp"
#include "affinity/gbdt.hpp"

namespace affinity {

void accumulate_histograms_serial(const BinnedMatrix& binned,
                                  std::span<const std::size_t> rows,
                                  std::span<const double> gradients,
                                  std::span<const int> features, std::size_t stride,
                                  HistBin* out) {
    for (std::size_t fi = 0; fi < features.size(); ++fi) {
        const std::size_t f = static_cast<std::size_t>(features[fi]);
        const std::uint8_t* col = binned.bins.data() + f * binned.n_rows;
        HistBin* block = out + fi * stride;
        for (std::size_t b = 0; b < stride; ++b) block[b] = HistBin{};
        for (const std::size_t r : rows) {
            HistBin& cell = block[col[r]];
            cell.grad += gradients[r];
            cell.count += 1;
        }
    }
}

void accumulate_histograms(const BinnedMatrix& binned, std::span<const std::size_t> rows,
                           std::span<const double> gradients, std::span<const int> features,
                           std::size_t stride, HistBin* out) {
    const auto n_features = static_cast<std::ptrdiff_t>(features.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t fi = 0; fi < n_features; ++fi) {
        const std::size_t f = static_cast<std::size_t>(features[fi]);
        const std::uint8_t* col = binned.bins.data() + f * binned.n_rows;
        HistBin* block = out + static_cast<std::size_t>(fi) * stride;
        for (std::size_t b = 0; b < stride; ++b) block[b] = HistBin{};
        for (const std::size_t r : rows) {
            HistBin& cell = block[col[r]];
            cell.grad += gradients[r];
            cell.count += 1;
        }
    }
}

double Tree::predict_row(std::span<const double> row) const {
    const TreeNode* node = &nodes[0];
    while (!node->is_leaf()) {
        node = row[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? &nodes[static_cast<std::size_t>(node->left)]
                   : &nodes[static_cast<std::size_t>(node->right)];
    }
    return node->value;
}

std::size_t Tree::leaf_count() const {
    std::size_t n = 0;
    for (const auto& node : nodes)
        if (node.is_leaf()) ++n;
    return n;
}

namespace {

struct SplitCandidate {
    bool valid = false;
    int feature = -1;
    std::uint8_t upper_bin = 0;  // rows with bin <= upper_bin go left
    double gain = 0.0;
    double grad_left = 0.0;
    std::uint64_t count_left = 0;
    double grad_right = 0.0;
    std::uint64_t count_right = 0;
};

double leaf_objective(double grad_sum, std::uint64_t count, double lambda) {
    return grad_sum * grad_sum / (static_cast<double>(count) + lambda);
}

// Best admissible split of one feature's histogram: left-to-right prefix
// scan, right side derived from the node totals. Equal gains keep the lowest
// threshold (the scan visits thresholds in ascending order).
SplitCandidate best_split_for_feature(const HistBin* block, std::size_t n_bins, int feature,
                                      double grad_total, std::uint64_t count_total,
                                      const TrainConfig& cfg) {
    SplitCandidate best;
    best.feature = feature;
    const double parent_obj = leaf_objective(grad_total, count_total, cfg.l2_leaf_reg);
    double grad_left = 0.0;
    std::uint64_t count_left = 0;
    for (std::size_t b = 0; b + 1 < n_bins; ++b) {
        grad_left += block[b].grad;
        count_left += block[b].count;
        const std::uint64_t count_right = count_total - count_left;
        if (count_left < cfg.min_child_samples) continue;
        if (count_right < cfg.min_child_samples) break;  // only shrinks further
        const double grad_right = grad_total - grad_left;
        const double gain = leaf_objective(grad_left, count_left, cfg.l2_leaf_reg) +
                            leaf_objective(grad_right, count_right, cfg.l2_leaf_reg) -
                            parent_obj;
        if (gain > kMinSplitGain && (!best.valid || gain > best.gain)) {
            best.valid = true;
            best.upper_bin = static_cast<std::uint8_t>(b);
            best.gain = gain;
            best.grad_left = grad_left;
            best.count_left = count_left;
            best.grad_right = grad_right;
            best.count_right = count_right;
        }
    }
    return best;
}

struct FrontierNode {
    int node_id = -1;
    std::size_t depth = 0;
    std::vector<std::size_t> rows;  // ascending
    double grad_total = 0.0;
    SplitCandidate best;
};

}  // namespace

Tree fit_tree(const BinnedMatrix& binned, const BinMap& bins,
              std::span<const double> gradients, const TrainConfig& cfg,
              const std::vector<std::size_t>& active_rows,
              const std::vector<int>& active_features,
              std::vector<std::string>* warnings) {
    if (active_features.empty())
        throw ConfigError("fit_tree: no active features");

    std::size_t stride = 0;
    for (const int f : active_features)
        stride = std::max(stride, bins.n_bins(static_cast<std::size_t>(f)));
    std::vector<HistBin> histograms(active_features.size() * stride);

    // Node gradient totals are row-order sums over the node's rows, so they
    // are independent of histogram/bin layout.
    auto node_grad_total = [&](const std::vector<std::size_t>& rows) {
        double g = 0.0;
        for (const std::size_t r : rows) g += gradients[r];
        return g;
    };

    auto evaluate = [&](FrontierNode& node) {
        node.best = SplitCandidate{};
        if (node.depth >= cfg.max_depth) return;
        if (node.rows.size() < 2 * cfg.min_child_samples) return;
        accumulate_histograms(binned, node.rows, gradients, active_features, stride,
                              histograms.data());
        // Serial reduce in ascending feature order: equal gains keep the
        // lowest feature index.
        for (std::size_t fi = 0; fi < active_features.size(); ++fi) {
            const auto f = static_cast<std::size_t>(active_features[fi]);
            const SplitCandidate cand = best_split_for_feature(
                histograms.data() + fi * stride, bins.n_bins(f), active_features[fi],
                node.grad_total, node.rows.size(), cfg);
            if (cand.valid && (!node.best.valid || cand.gain > node.best.gain))
                node.best = cand;
        }
    };

    Tree tree;
    auto make_leaf = [&](double grad_total, std::uint64_t count) {
        TreeNode leaf;
        leaf.value = count > 0 ? grad_total / (static_cast<double>(count) + cfg.l2_leaf_reg)
                               : 0.0;
        leaf.count = count;
        tree.nodes.push_back(leaf);
        return static_cast<int>(tree.nodes.size() - 1);
    };

    FrontierNode root;
    root.rows = active_rows;
    root.grad_total = node_grad_total(root.rows);
    root.node_id = make_leaf(root.grad_total, root.rows.size());

    if (active_rows.size() < 2 * cfg.min_child_samples) {
        if (warnings != nullptr)
            warnings->push_back("fit_tree: only " + std::to_string(active_rows.size()) +
                                " rows for min_child_samples " +
                                std::to_string(cfg.min_child_samples) +
                                "; returning a single-leaf tree");
        return tree;
    }

    evaluate(root);
    std::vector<FrontierNode> frontier;
    frontier.push_back(std::move(root));

    std::size_t leaves = 1;
    while (leaves < cfg.max_leaves) {
        // Best-first: highest gain wins; ties keep the earliest-created node.
        int pick = -1;
        for (std::size_t i = 0; i < frontier.size(); ++i)
            if (frontier[i].best.valid &&
                (pick < 0 || frontier[i].best.gain > frontier[static_cast<std::size_t>(pick)].best.gain))
                pick = static_cast<int>(i);
        if (pick < 0) break;

        FrontierNode node = std::move(frontier[static_cast<std::size_t>(pick)]);
        frontier.erase(frontier.begin() + pick);
        const SplitCandidate& split = node.best;
        const auto feature = static_cast<std::size_t>(split.feature);

        FrontierNode left, right;
        left.depth = right.depth = node.depth + 1;
        left.rows.reserve(split.count_left);
        right.rows.reserve(split.count_right);
        for (const std::size_t r : node.rows)
            (binned.at(r, feature) <= split.upper_bin ? left.rows : right.rows).push_back(r);
        left.grad_total = split.grad_left;
        right.grad_total = split.grad_right;

        left.node_id = make_leaf(left.grad_total, left.rows.size());
        right.node_id = make_leaf(right.grad_total, right.rows.size());

        TreeNode& parent = tree.nodes[static_cast<std::size_t>(node.node_id)];
        parent.feature = split.feature;
        parent.threshold = bins.thresholds[feature][split.upper_bin];
        parent.left = left.node_id;
        parent.right = right.node_id;
        parent.gain = split.gain;
        parent.value = 0.0;
        ++leaves;

        evaluate(left);
        evaluate(right);
        frontier.push_back(std::move(left));
        frontier.push_back(std::move(right));
    }
    return tree;
}

}  // namespace affinity
