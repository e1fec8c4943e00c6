#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace affinity {

// Root mean squared error sqrt(mean((y - p)^2)).
double rmse(std::span<const double> y, std::span<const double> p);

// Mean absolute error.
double mae(std::span<const double> y, std::span<const double> p);

// Pearson's correlation cov(y,p)/(sigma_y*sigma_p), clamped to [-1, 1]
// against floating-point overshoot. Throws EvalError when either input has
// zero variance.
double pearson_r(std::span<const double> y, std::span<const double> p);

// Residual standard deviation of the least-squares line regressing labels on
// predictions, with the N-1 denominator:
//   (a, b) = argmin sum (y_i - a - b*p_i)^2
//   sd     = sqrt( sum (y_i - (a + b*p_i))^2 / (N - 1) )
double sd_metric(std::span<const double> y, std::span<const double> p);

struct MetricValues {
    double rmse = 0.0;
    double mae = 0.0;
    double sd = 0.0;
    double r = 0.0;
};

MetricValues compute_metrics(std::span<const double> y, std::span<const double> p);

// One evaluated run, or the aggregate of several.
struct MetricsReport {
    MetricValues mean;                      // the metric values (single run) or their means
    std::optional<MetricValues> std_dev;    // population std over runs, when aggregated
    std::size_t n_samples = 0;
    std::vector<MetricValues> per_run;      // kept when aggregated

    // "m.mmm (s.sss)", 3 decimals; single runs format with (0.000).
    std::string format_cell(const std::string& metric) const;
};

// Per-metric mean and population standard deviation over runs.
MetricsReport aggregate_runs(const std::vector<MetricsReport>& runs);

}  // namespace affinity
