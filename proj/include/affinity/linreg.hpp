#pragma once

#include <span>
#include <utility>
#include <vector>

#include "affinity/featurize.hpp"

namespace affinity {

struct LinearModel {
    std::vector<double> weights;
    double intercept = 0.0;

    double predict_row(std::span<const double> row) const;
    std::vector<double> predict(const FeatureMatrix& matrix) const;
};

// Ordinary least squares with an optional ridge penalty, solved by normal
// equations (Cholesky) on standardized, centered data; the returned model is
// expressed in the original scale. With ridge = 0 a rank-deficient system is
// retried with a 1e-8 jitter and a warning is appended to *warnings.
LinearModel ols_fit(const FeatureMatrix& matrix, double ridge = 0.0,
                    std::vector<std::string>* warnings = nullptr);

// Simple regression of y on p: slope = cov(p,y)/var(p),
// intercept = mean(y) - slope*mean(p). Throws EvalError when var(p) = 0.
std::pair<double, double> ols_fit_1d(std::span<const double> p, std::span<const double> y);

}  // namespace affinity
