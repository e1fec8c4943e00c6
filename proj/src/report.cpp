#include "affinity/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

std::string origin_of(const std::string& bare_name) {
    if (bare_name.rfind("lig", 0) == 0 || bare_name.rfind("l.", 0) == 0) return "ligand";
    if (bare_name.rfind("prot", 0) == 0 || bare_name.rfind("p.", 0) == 0) return "protein";
    return "shared";
}

void sort_block(std::vector<ImportanceEntry>& block) {
    std::sort(block.begin(), block.end(), [](const auto& a, const auto& b) {
        if (a.importance != b.importance) return a.importance > b.importance;
        return a.feature < b.feature;
    });
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

ImportanceReport importance_report(const Ensemble& model) {
    const auto importance = feature_importance(model);
    ImportanceReport report;
    for (const auto& name : model.feature_names) {
        const double value = importance.at(name);
        if (name.rfind("inter.", 0) == 0) {
            report.interaction.push_back({name, value, "shared"});
        } else if (name.rfind("sum.", 0) == 0) {
            report.sum.push_back({name, value, origin_of(name.substr(4))});
        } else if (name.rfind("std.", 0) == 0) {
            report.std_dev.push_back({name, value, origin_of(name.substr(4))});
        } else {
            throw EvalError("importance_report: feature '" + name +
                            "' does not belong to the interaction/sum/std layout");
        }
    }
    sort_block(report.interaction);
    sort_block(report.sum);
    sort_block(report.std_dev);
    return report;
}

void write_importance_csv(const ImportanceReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw EvalError("cannot open '" + path + "' for writing");
    out << "block,feature,importance\n";
    auto dump = [&](const char* block, const std::vector<ImportanceEntry>& entries) {
        char buf[48];
        for (const auto& e : entries) {
            std::snprintf(buf, sizeof(buf), "%.17g", e.importance);
            out << block << ',' << e.feature << ',' << buf << '\n';
        }
    };
    dump("interaction", report.interaction);
    dump("sum", report.sum);
    dump("std", report.std_dev);
    if (!out)
        throw EvalError("write to '" + path + "' failed");
}

void write_importance_svg(const std::vector<ImportanceEntry>& entries,
                          const std::string& title, const std::string& path) {
    const int bar_height = 14, gap = 4, left = 170, width = 760, top = 34;
    const int height = top + 10 + static_cast<int>(entries.size()) * (bar_height + gap);
    double max_importance = 0.0;
    for (const auto& e : entries) max_importance = std::max(max_importance, e.importance);
    if (max_importance <= 0.0) max_importance = 1.0;

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw EvalError("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\">\n";
    out << "  <text x=\"8\" y=\"20\" font-size=\"15\" font-weight=\"bold\">"
        << xml_escape(title) << "</text>\n";
    int y = top;
    char buf[48];
    for (const auto& e : entries) {
        const double frac = e.importance / max_importance;
        const int bar = static_cast<int>(frac * (width - left - 80));
        const char* color = e.origin == "ligand"    ? "#2e8b57"
                            : e.origin == "protein" ? "#c0392b"
                                                    : "#5b7fa6";
        out << "  <text x=\"" << (left - 6) << "\" y=\"" << (y + bar_height - 3)
            << "\" font-size=\"11\" text-anchor=\"end\">" << xml_escape(e.feature)
            << "</text>\n";
        out << "  <rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << std::max(bar, 1)
            << "\" height=\"" << bar_height << "\" fill=\"" << color << "\"/>\n";
        std::snprintf(buf, sizeof(buf), "%.4f", e.importance);
        out << "  <text x=\"" << (left + std::max(bar, 1) + 5) << "\" y=\""
            << (y + bar_height - 3) << "\" font-size=\"11\">" << buf << "</text>\n";
        y += bar_height + gap;
    }
    out << "</svg>\n";
    if (!out)
        throw EvalError("write to '" + path + "' failed");
}

std::string format_metrics_table(const std::vector<ReportRow>& rows) {
    std::size_t model_w = 5, dataset_w = 7;
    for (const auto& row : rows) {
        model_w = std::max(model_w, row.model.size());
        dataset_w = std::max(dataset_w, row.dataset.size());
    }
    std::ostringstream out;
    auto pad = [&](const std::string& s, std::size_t w) {
        out << s << std::string(w - s.size() + 2, ' ');
    };
    pad("model", model_w);
    pad("dataset", dataset_w);
    pad("RMSE", 13);
    pad("MAE", 13);
    pad("SD", 13);
    out << "R\n";
    for (const auto& row : rows) {
        pad(row.model, model_w);
        pad(row.dataset, dataset_w);
        pad(row.metrics.format_cell("rmse"), 13);
        pad(row.metrics.format_cell("mae"), 13);
        pad(row.metrics.format_cell("sd"), 13);
        out << row.metrics.format_cell("r") << '\n';
    }
    return out.str();
}

}  // namespace affinity
