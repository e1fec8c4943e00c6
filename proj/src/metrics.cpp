#include "affinity/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "affinity/errors.hpp"
#include "affinity/linreg.hpp"

namespace affinity {

namespace {

void check_pair(std::span<const double> y, std::span<const double> p) {
    if (y.empty())
        throw EvalError("metric on empty input");
    if (y.size() != p.size())
        throw EvalError("metric length mismatch: " + std::to_string(y.size()) + " vs " +
                        std::to_string(p.size()));
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!std::isfinite(y[i]) || !std::isfinite(p[i]))
            throw EvalError("metric input has non-finite value at index " + std::to_string(i));
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p);
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) ss += (y[i] - p[i]) * (y[i] - p[i]);
    return std::sqrt(ss / static_cast<double>(y.size()));
}

double mae(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - p[i]);
    return s / static_cast<double>(y.size());
}

double pearson_r(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p);
    if (y.size() < 2)
        throw EvalError("pearson_r needs at least 2 samples");
    const double my = mean_of(y);
    const double mp = mean_of(p);
    double syy = 0.0, spp = 0.0, syp = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dy = y[i] - my;
        const double dp = p[i] - mp;
        syy += dy * dy;
        spp += dp * dp;
        syp += dy * dp;
    }
    if (syy == 0.0 || spp == 0.0)
        throw EvalError("pearson_r undefined: zero variance input");
    return std::clamp(syp / std::sqrt(syy * spp), -1.0, 1.0);
}

double sd_metric(std::span<const double> y, std::span<const double> p) {
    check_pair(y, p);
    if (y.size() < 2)
        throw EvalError("sd_metric needs at least 2 samples");
    const auto [slope, intercept] = ols_fit_1d(p, y);
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double resid = y[i] - (intercept + slope * p[i]);
        ss += resid * resid;
    }
    return std::sqrt(ss / static_cast<double>(y.size() - 1));
}

MetricValues compute_metrics(std::span<const double> y, std::span<const double> p) {
    return {rmse(y, p), mae(y, p), sd_metric(y, p), pearson_r(y, p)};
}

std::string MetricsReport::format_cell(const std::string& metric) const {
    auto pick = [&](const MetricValues& v) {
        if (metric == "rmse") return v.rmse;
        if (metric == "mae") return v.mae;
        if (metric == "sd") return v.sd;
        if (metric == "r") return v.r;
        throw EvalError("unknown metric '" + metric + "'");
    };
    const double m = pick(mean);
    const double s = std_dev ? pick(*std_dev) : 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f (%.3f)", m, s);
    return buf;
}

MetricsReport aggregate_runs(const std::vector<MetricsReport>& runs) {
    if (runs.empty())
        throw EvalError("aggregate_runs on empty list");
    MetricsReport out;
    out.n_samples = runs.front().n_samples;
    for (const auto& r : runs) out.per_run.push_back(r.mean);

    const double n = static_cast<double>(runs.size());
    auto fold = [&](auto member) {
        double m = 0.0;
        for (const auto& r : out.per_run) m += r.*member;
        m /= n;
        double var = 0.0;
        for (const auto& r : out.per_run) var += (r.*member - m) * (r.*member - m);
        return std::pair{m, std::sqrt(var / n)};  // population std over runs
    };
    MetricValues mean_v, std_v;
    std::tie(mean_v.rmse, std_v.rmse) = fold(&MetricValues::rmse);
    std::tie(mean_v.mae, std_v.mae) = fold(&MetricValues::mae);
    std::tie(mean_v.sd, std_v.sd) = fold(&MetricValues::sd);
    std::tie(mean_v.r, std_v.r) = fold(&MetricValues::r);
    out.mean = mean_v;
    out.std_dev = std_v;
    return out;
}

}  // namespace affinity
