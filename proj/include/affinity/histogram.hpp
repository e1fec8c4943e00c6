#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace affinity {

// Column-major binned copy of a feature matrix (bin indices fit in one byte
// because max_bins <= 255 gives at most 255 bins per feature).
struct BinnedMatrix {
    std::size_t n_rows = 0;
    std::size_t n_features = 0;
    std::vector<std::uint8_t> bins;  // [feature * n_rows + row]

    std::uint8_t at(std::size_t row, std::size_t feature) const {
        return bins[feature * n_rows + row];
    }
};

struct HistBin {
    double grad = 0.0;
    std::uint64_t count = 0;

    bool operator==(const HistBin&) const = default;
};

// Gradient histograms for the given rows, one block of `stride` bins per
// entry of `features`, written to out[i * stride + bin]. Rows must be in
// ascending order; each feature's bins are accumulated sequentially in that
// order, which pins the floating-point result.
//
// Serial reference implementation.
void accumulate_histograms_serial(const BinnedMatrix& binned,
                                  std::span<const std::size_t> rows,
                                  std::span<const double> gradients,
                                  std::span<const int> features, std::size_t stride,
                                  HistBin* out);

// OpenMP variant, parallel across features. One thread owns one feature's
// whole block, so the result is bit-identical to the serial reference at any
// thread count.
void accumulate_histograms(const BinnedMatrix& binned, std::span<const std::size_t> rows,
                           std::span<const double> gradients, std::span<const int> features,
                           std::size_t stride, HistBin* out);

}  // namespace affinity
