#include "affinity/linreg.hpp"

#include <cmath>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

// Cholesky factorization and solve of an SPD system, in place. Returns false
// when a pivot is not strictly positive (not positive definite).
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / ljj;
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
        b[i] = s / a[i * n + i];
    }
    return true;
}

}  // namespace

double LinearModel::predict_row(std::span<const double> row) const {
    double y = intercept;
    for (std::size_t k = 0; k < weights.size(); ++k) y += weights[k] * row[k];
    return y;
}

std::vector<double> LinearModel::predict(const FeatureMatrix& matrix) const {
    if (matrix.n_cols() != weights.size())
        throw SchemaError("linear model expects " + std::to_string(weights.size()) +
                          " features, matrix has " + std::to_string(matrix.n_cols()));
    std::vector<double> out(matrix.n_rows());
    for (std::size_t r = 0; r < matrix.n_rows(); ++r) out[r] = predict_row(matrix.row(r));
    return out;
}

LinearModel ols_fit(const FeatureMatrix& matrix, double ridge,
                    std::vector<std::string>* warnings) {
    const std::size_t n = matrix.n_rows();
    const std::size_t f = matrix.n_cols();
    if (n < 2)
        throw EvalError("ols_fit needs at least 2 rows");
    if (ridge < 0.0)
        throw ConfigError("ridge must be >= 0");

    // Standardize columns so the ridge penalty is scale-free; constant
    // columns become all-zero and pick up weight 0.
    std::vector<double> mu(f, 0.0), sigma(f, 1.0);
    for (std::size_t c = 0; c < f; ++c) {
        double m = 0.0;
        for (std::size_t r = 0; r < n; ++r) m += matrix.at(r, c);
        m /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double d = matrix.at(r, c) - m;
            var += d * d;
        }
        var /= static_cast<double>(n);
        mu[c] = m;
        sigma[c] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    const auto& y = matrix.labels();
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(n);

    auto z = [&](std::size_t r, std::size_t c) { return (matrix.at(r, c) - mu[c]) / sigma[c]; };

    // Normal equations on the standardized data: (Z'Z + ridge I) w = Z'(y - ymean)
    std::vector<double> gram(f * f, 0.0), rhs(f, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c1 = 0; c1 < f; ++c1) {
            const double zc1 = z(r, c1);
            rhs[c1] += zc1 * (y[r] - y_mean);
            for (std::size_t c2 = c1; c2 < f; ++c2) gram[c1 * f + c2] += zc1 * z(r, c2);
        }
    }
    for (std::size_t c1 = 0; c1 < f; ++c1)
        for (std::size_t c2 = 0; c2 < c1; ++c2) gram[c1 * f + c2] = gram[c2 * f + c1];

    auto solve_with = [&](double reg, std::vector<double>& w) {
        std::vector<double> a = gram;
        for (std::size_t c = 0; c < f; ++c) a[c * f + c] += reg;
        w = rhs;
        return cholesky_solve(a, w, f);
    };

    std::vector<double> w;
    if (!solve_with(ridge, w)) {
        // Rank-deficient (or numerically indefinite) with ridge = 0.
        const double jitter = 1e-8;
        if (warnings != nullptr)
            warnings->push_back(
                "ols_fit: system is rank-deficient; retried with jitter 1e-8");
        if (!solve_with(ridge + jitter, w))
            throw EvalError("ols_fit: normal equations not solvable even with jitter");
    }

    LinearModel model;
    model.weights.resize(f);
    double offset = 0.0;
    for (std::size_t c = 0; c < f; ++c) {
        model.weights[c] = w[c] / sigma[c];
        offset += model.weights[c] * mu[c];
    }
    model.intercept = y_mean - offset;
    return model;
}

std::pair<double, double> ols_fit_1d(std::span<const double> p, std::span<const double> y) {
    if (p.size() != y.size() || p.size() < 2)
        throw EvalError("ols_fit_1d needs two equal-length vectors of size >= 2");
    const double n = static_cast<double>(p.size());
    double mp = 0.0, my = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mp += p[i];
        my += y[i];
    }
    mp /= n;
    my /= n;
    double var_p = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        var_p += (p[i] - mp) * (p[i] - mp);
        cov += (p[i] - mp) * (y[i] - my);
    }
    if (var_p == 0.0)
        throw EvalError("ols_fit_1d: zero variance in p");
    const double slope = cov / var_p;
    return {slope, my - slope * mp};
}

}  // namespace affinity
