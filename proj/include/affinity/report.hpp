#pragma once

#include <string>
#include <vector>

#include "affinity/gbdt.hpp"
#include "affinity/metrics.hpp"

namespace affinity {

// One bar of an importance chart. Origin is "ligand", "protein" or "shared",
// derived from the column-name convention: names containing "lig"/"l." after
// the block prefix are ligand-derived, "prot"/"p." protein-derived.
struct ImportanceEntry {
    std::string feature;
    double importance = 0.0;
    std::string origin;
};

// Ensemble importance split into the three column blocks of the feature
// layout (interaction | sum | std), each sorted by importance descending
// (ties by name).
struct ImportanceReport {
    std::vector<ImportanceEntry> interaction;
    std::vector<ImportanceEntry> sum;
    std::vector<ImportanceEntry> std_dev;

    std::size_t total_features() const {
        return interaction.size() + sum.size() + std_dev.size();
    }
};

// Groups feature_importance(model) by column-name prefix. Throws EvalError
// when a model feature name does not belong to any block.
ImportanceReport importance_report(const Ensemble& model);

// "block,feature,importance" rows, full precision, blocks in layout order.
void write_importance_csv(const ImportanceReport& report, const std::string& path);

// Static horizontal bar chart; bars colored green (ligand), red (protein) or
// gray (shared).
void write_importance_svg(const std::vector<ImportanceEntry>& entries,
                          const std::string& title, const std::string& path);

// One row of the metrics summary table.
struct ReportRow {
    std::string model;
    std::string dataset;
    MetricsReport metrics;
};

// Fixed-width summary with RMSE/MAE/SD/R columns formatted "m.mmm (s.sss)".
std::string format_metrics_table(const std::vector<ReportRow>& rows);

}  // namespace affinity
