// Serial-vs-OpenMP benchmark for the hot kernels: contact counting (double
// loop vs grid), dataset featurization, histogram accumulation, boosting and
// prediction. Every parallel result is checked against the serial reference
// before timings are reported.

#include <cstdio>
#include <omp.h>

#include <CLI11.hpp>

#include "affinity/featurize.hpp"
#include "affinity/gbdt.hpp"
#include "affinity/rng.hpp"
#include "affinity/synthetic.hpp"

using namespace affinity;

namespace {

struct BenchRow {
    const char* kernel;
    const char* workload;
    double serial_s;
    double parallel_s;
    bool identical;
};

void print_rows(const std::vector<BenchRow>& rows) {
    std::printf("%-26s %-34s %12s %12s %9s %10s\n", "kernel", "workload", "serial[s]",
                "parallel[s]", "speedup", "identical");
    for (const auto& r : rows)
        std::printf("%-26s %-34s %12.4f %12.4f %8.2fx %10s\n", r.kernel, r.workload,
                    r.serial_s, r.parallel_s,
                    r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0,
                    r.identical ? "yes" : "NO");
}

template <typename F>
double time_once(F&& fn) {
    const double t0 = omp_get_wtime();
    fn();
    return omp_get_wtime() - t0;
}

std::vector<std::size_t> iota_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    for (std::size_t r = 0; r < n; ++r) rows[r] = r;
    return rows;
}

std::vector<int> iota_features(std::size_t n) {
    std::vector<int> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<int>(i);
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark: serial reference kernels vs their OpenMP counterparts"};
    std::size_t n_complexes = 1000;
    std::size_t atoms = 300;
    std::size_t train_rows = 3767;
    std::size_t train_cols = 108;
    std::size_t n_trees = 100;
    int threads = 0;
    bool quick = false;
    app.add_option("--complexes", n_complexes, "complex count for featurization");
    app.add_option("--atoms", atoms, "max atoms per complex");
    app.add_option("--rows", train_rows, "training rows");
    app.add_option("--cols", train_cols, "training columns");
    app.add_option("--trees", n_trees, "boosting iterations");
    app.add_option("--threads", threads, "OpenMP thread count (0 = default)")
        ->envname("AFFINITY_THREADS");
    app.add_flag("--quick", quick, "small sizes for smoke runs");
    CLI11_PARSE(app, argc, argv);

    if (quick) {
        n_complexes = 100;
        atoms = 80;
        train_rows = 500;
        n_trees = 20;
    }
    if (threads > 0) omp_set_num_threads(threads);
    const int max_threads = omp_get_max_threads();
    std::printf("threads: serial=1 parallel=%d\n\n", max_threads);

    std::vector<BenchRow> rows;
    char workload[80];

    // contact counting: double loop (reference) vs uniform grid
    {
        const auto complexes =
            gen_synthetic(n_complexes / 4 + 1, atoms / 2, atoms, 7, SyntheticTarget::kLinear);
        const InteractionConfig cfg;
        std::vector<std::vector<double>> loop_out(complexes.size()), grid_out(complexes.size());
        const double t_loop = time_once([&] {
            for (std::size_t i = 0; i < complexes.size(); ++i)
                loop_out[i] = interaction_features(complexes[i], cfg);
        });
        const double t_grid = time_once([&] {
            for (std::size_t i = 0; i < complexes.size(); ++i)
                grid_out[i] = interaction_features_grid(complexes[i], cfg);
        });
        std::snprintf(workload, sizeof(workload), "%zu complexes, <=%zu atoms",
                      complexes.size(), atoms);
        rows.push_back({"contact double-loop/grid", workload, t_loop, t_grid,
                        loop_out == grid_out});
    }

    // dataset featurization: 1 thread vs all
    {
        const auto complexes =
            gen_synthetic(n_complexes, atoms / 2, atoms, 11, SyntheticTarget::kPairwiseContact);
        const auto schema = DatasetSchema::infer(complexes);
        const InteractionConfig cfg;
        FeatureMatrix serial_m, parallel_m;
        omp_set_num_threads(1);
        const double t_serial =
            time_once([&] { serial_m = featurize_dataset(complexes, cfg, schema); });
        omp_set_num_threads(max_threads);
        const double t_parallel =
            time_once([&] { parallel_m = featurize_dataset(complexes, cfg, schema); });
        std::snprintf(workload, sizeof(workload), "%zu complexes, <=%zu atoms",
                      complexes.size(), atoms);
        rows.push_back({"featurize_dataset", workload, t_serial, t_parallel,
                        serial_m.data() == parallel_m.data()});
    }

    // histogram accumulation: serial reference vs OpenMP
    {
        const auto matrix = friedman1_matrix(train_rows, train_cols, 1.0, 13);
        const auto bins = build_bins(matrix, 255);
        const auto binned = bin_matrix(matrix, bins);
        Rng rng(3);
        std::vector<double> grads(matrix.n_rows());
        for (double& g : grads) g = rng.normal();
        const auto all_rows = iota_rows(matrix.n_rows());
        const auto features = iota_features(matrix.n_cols());
        std::size_t stride = 0;
        for (std::size_t f = 0; f < matrix.n_cols(); ++f)
            stride = std::max(stride, bins.n_bins(f));
        std::vector<HistBin> serial_h(features.size() * stride);
        std::vector<HistBin> parallel_h(features.size() * stride);
        const int reps = 200;
        const double t_serial = time_once([&] {
            for (int i = 0; i < reps; ++i)
                accumulate_histograms_serial(binned, all_rows, grads, features, stride,
                                             serial_h.data());
        });
        const double t_parallel = time_once([&] {
            for (int i = 0; i < reps; ++i)
                accumulate_histograms(binned, all_rows, grads, features, stride,
                                      parallel_h.data());
        });
        std::snprintf(workload, sizeof(workload), "%zux%zu, %d reps", train_rows, train_cols,
                      reps);
        rows.push_back({"histogram accumulation", workload, t_serial, t_parallel,
                        serial_h == parallel_h});
    }

    // boosting + prediction: 1 thread vs all
    {
        const auto matrix = friedman1_matrix(train_rows, train_cols, 1.0, 17);
        TrainConfig cfg;
        cfg.n_trees = n_trees;
        TrainResult serial_r, parallel_r;
        omp_set_num_threads(1);
        const double t_serial = time_once([&] { serial_r = train(matrix, nullptr, cfg); });
        omp_set_num_threads(max_threads);
        const double t_parallel = time_once([&] { parallel_r = train(matrix, nullptr, cfg); });
        std::snprintf(workload, sizeof(workload), "%zux%zu, %zu trees", train_rows,
                      train_cols, n_trees);
        rows.push_back({"train", workload, t_serial, t_parallel,
                        serial_r.train_predictions == parallel_r.train_predictions});

        std::vector<double> serial_p, parallel_p;
        omp_set_num_threads(1);
        const double tp_serial =
            time_once([&] { serial_p = predict(serial_r.model, matrix); });
        omp_set_num_threads(max_threads);
        const double tp_parallel =
            time_once([&] { parallel_p = predict(parallel_r.model, matrix); });
        std::snprintf(workload, sizeof(workload), "%zu rows, %zu trees", train_rows,
                      serial_r.model.trees.size());
        rows.push_back({"predict", workload, tp_serial, tp_parallel,
                        serial_p == parallel_p});
    }

    print_rows(rows);
    bool all_identical = true;
    for (const auto& r : rows) all_identical = all_identical && r.identical;
    if (!all_identical) {
        std::fprintf(stderr, "FAIL: a parallel kernel diverged from its serial reference\n");
        return 1;
    }
    return 0;
}
