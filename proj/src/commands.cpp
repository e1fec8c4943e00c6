#include "affinity/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "affinity/errors.hpp"
#include "affinity/hash.hpp"
#include "affinity/jsonl.hpp"
#include "affinity/linreg.hpp"
#include "affinity/matrix_io.hpp"
#include "affinity/metrics.hpp"
#include "affinity/model_io.hpp"
#include "affinity/report.hpp"
#include "affinity/rng.hpp"

namespace affinity {

namespace fs = std::filesystem;

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string timing_note(const std::string& stage, Clock::time_point start) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: %.3f s", stage.c_str(), seconds_since(start));
    return buf;
}

std::string dataset_stem(const std::string& path) {
    std::string stem = fs::path(path).stem().string();
    for (char& c : stem)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return stem.empty() ? "dataset" : stem;
}

void write_text_file(const std::string& path, const std::string& content) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw ConfigError("write to '" + path + "' failed");
}

std::string model_path_for_seed(const RunConfig& cfg, std::uint64_t seed) {
    return cfg.out_dir + "/model_seed" + std::to_string(seed) + ".json";
}

// Model documents bundle the ensemble with the featurization settings it was
// trained under.
struct LoadedModel {
    Ensemble model;
    DatasetSchema schema;
    InteractionConfig interaction;
};

LoadedModel load_pipeline_model(const std::string& path) {
    const Json document = load_model_document(path);
    LoadedModel loaded;
    loaded.model = model_from_json(document);
    if (!document.contains("schema") || !document.contains("interaction"))
        throw ModelIoError("model file '" + path +
                           "' lacks the schema/interaction sections needed to featurize data");
    loaded.schema = schema_from_json(document.at("schema"));
    loaded.interaction = interaction_from_json(document.at("interaction"));
    return loaded;
}

std::string resolve_model_path(const RunConfig& cfg) {
    if (!cfg.model_path.empty()) return cfg.model_path;
    if (cfg.seeds.empty())
        throw ConfigError("no model path and no seeds to derive one from");
    return model_path_for_seed(cfg, cfg.seeds.front());
}

Json metrics_to_json(const MetricsReport& report) {
    Json j;
    auto block = [&](const char* name, double mean, double stdv) {
        j[name] = Json{{"mean", mean}, {"std", stdv}};
    };
    const MetricValues z{};
    const MetricValues& s = report.std_dev ? *report.std_dev : z;
    block("rmse", report.mean.rmse, s.rmse);
    block("mae", report.mean.mae, s.mae);
    block("sd", report.mean.sd, s.sd);
    block("r", report.mean.r, s.r);
    j["n"] = report.n_samples;
    return j;
}

std::string training_log_csv(const std::vector<IterationLog>& log) {
    std::string out = "iteration,train_rmse,valid_rmse\n";
    char buf[96];
    for (const auto& entry : log) {
        if (entry.valid_rmse)
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", entry.iteration,
                          entry.train_rmse, *entry.valid_rmse);
        else
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,\n", entry.iteration,
                          entry.train_rmse);
        out += buf;
    }
    return out;
}

}  // namespace

void update_manifest(const std::string& out_dir, const std::vector<std::string>& artifacts) {
    const std::string manifest_path = out_dir + "/manifest.json";
    std::map<std::string, Json> entries;
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        Json existing;
        try {
            existing = Json::parse(in);
            for (const Json& e : existing.at("artifacts"))
                entries[e.at("path").get<std::string>()] = e;
        } catch (const nlohmann::json::exception&) {
            entries.clear();  // regenerate a corrupt manifest from scratch
        }
    }
    for (const auto& path : artifacts) {
        const std::string rel = fs::relative(path, out_dir).string();
        entries[rel] = Json{{"path", rel},
                            {"sha256", sha256_file(path)},
                            {"bytes", static_cast<std::uint64_t>(fs::file_size(path))}};
    }
    Json manifest;
    Json list = Json::array();
    for (const auto& [rel, entry] : entries) list.push_back(entry);
    manifest["artifacts"] = std::move(list);
    write_text_file(manifest_path, manifest.dump(2) + "\n");
}

CommandResult cmd_gen_synth(const GenSynthOptions& opts) {
    if (opts.out_path.empty())
        throw ConfigError("gen-synth needs an output path");
    const auto start = Clock::now();
    const auto complexes = gen_synthetic(opts.n_complexes, opts.atoms_min, opts.atoms_max,
                                         opts.seed, opts.target, opts.noise_sigma);
    fs::create_directories(fs::path(opts.out_path).parent_path().empty()
                               ? "."
                               : fs::path(opts.out_path).parent_path().string());
    write_dataset(complexes, opts.out_path);
    CommandResult result;
    result.artifacts.push_back(opts.out_path);
    result.log.push_back("generated " + std::to_string(complexes.size()) + " complexes (" +
                         to_string(opts.target) + ") -> " + opts.out_path);
    result.log.push_back(timing_note("gen-synth", start));
    return result;
}

FeaturizedData featurize_with_cache(const std::string& dataset_path,
                                    const InteractionConfig& interaction,
                                    const std::optional<DatasetSchema>& frozen_schema,
                                    const std::string& cache_dir,
                                    std::vector<std::string>* log) {
    const auto start = Clock::now();
    const std::string dataset_sha = sha256_file(dataset_path);
    const Json interaction_json = interaction_to_json(interaction);
    const std::string schema_source =
        frozen_schema ? schema_to_json(*frozen_schema).dump() : "inferred";
    FeaturizedData out;
    out.cache_key =
        sha256_hex(dataset_sha + "\n" + interaction_json.dump() + "\n" + schema_source);

    fs::create_directories(cache_dir);
    const std::string matrix_path = cache_dir + "/" + out.cache_key + ".fmb";
    const std::string meta_path = cache_dir + "/" + out.cache_key + ".meta.json";

    if (fs::exists(matrix_path) && fs::exists(meta_path)) {
        std::ifstream meta_in(meta_path);
        Json meta;
        try {
            meta = Json::parse(meta_in);
        } catch (const nlohmann::json::exception& e) {
            throw ModelIoError("cache meta '" + meta_path + "' is corrupt: " + e.what());
        }
        if (meta.at("dataset_sha256").get<std::string>() != dataset_sha ||
            meta.at("interaction") != interaction_json)
            throw ModelIoError("cache collision for key " + out.cache_key +
                               ": stored inputs differ from the requested ones");
        out.matrix = read_matrix_binary(matrix_path);
        out.schema = schema_from_json(meta.at("schema"));
        out.cache_hit = true;
        if (log != nullptr) {
            log->push_back("cache hit for " + dataset_path + " (key " +
                           out.cache_key.substr(0, 12) + ")");
            log->push_back(timing_note("featurize " + dataset_stem(dataset_path), start));
        }
        return out;
    }

    const auto complexes = parse_dataset(dataset_path);
    out.schema = frozen_schema ? *frozen_schema : DatasetSchema::infer(complexes);
    std::vector<std::string> warnings;
    out.matrix = featurize_dataset(complexes, interaction, out.schema, &warnings);
    if (log != nullptr)
        for (const auto& w : warnings) log->push_back("warning: " + w);

    write_matrix_binary(out.matrix, matrix_path);
    Json meta{{"dataset", dataset_path},
              {"dataset_sha256", dataset_sha},
              {"interaction", interaction_json},
              {"schema_source", frozen_schema ? "frozen" : "inferred"},
              {"schema", schema_to_json(out.schema)}};
    write_text_file(meta_path, meta.dump(2) + "\n");
    if (log != nullptr) {
        log->push_back("cache miss for " + dataset_path + " (key " +
                       out.cache_key.substr(0, 12) + "), featurized " +
                       std::to_string(out.matrix.n_rows()) + " complexes");
        log->push_back(timing_note("featurize " + dataset_stem(dataset_path), start));
    }
    return out;
}

CommandResult cmd_featurize(const RunConfig& cfg) {
    cfg.interaction.validate();
    CommandResult result;
    std::vector<std::pair<std::string, bool>> datasets;  // path, is_schema_source
    if (!cfg.train_path.empty()) datasets.emplace_back(cfg.train_path, true);
    if (!cfg.valid_path.empty()) datasets.emplace_back(cfg.valid_path, false);
    for (const auto& p : cfg.test_paths) datasets.emplace_back(p, false);
    if (datasets.empty())
        throw ConfigError("featurize: no datasets given");
    datasets.front().second = true;  // first dataset defines the schema

    fs::create_directories(cfg.out_dir + "/features");
    std::optional<DatasetSchema> schema;
    for (const auto& [path, is_source] : datasets) {
        const auto data = featurize_with_cache(
            path, cfg.interaction, is_source ? std::nullopt : schema, cfg.cache_dir(),
            &result.log);
        if (is_source) {
            schema = data.schema;
            const std::string schema_path = cfg.out_dir + "/schema.json";
            write_text_file(schema_path, schema_to_json(*schema).dump(2) + "\n");
            result.artifacts.push_back(schema_path);
        }
        const std::string csv_path =
            cfg.out_dir + "/features/" + dataset_stem(path) + ".csv";
        write_matrix_csv(data.matrix, csv_path);
        result.artifacts.push_back(csv_path);
        result.artifacts.push_back(cfg.cache_dir() + "/" + data.cache_key + ".fmb");
        result.artifacts.push_back(cfg.cache_dir() + "/" + data.cache_key + ".meta.json");
    }
    update_manifest(cfg.out_dir, result.artifacts);
    return result;
}

void split_validation(std::vector<ComplexRecord>& complexes, double fraction,
                      std::uint64_t split_seed, std::vector<ComplexRecord>& valid_out) {
    const std::size_t n = complexes.size();
    const auto k = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(n)));
    if (k == 0 || k >= n)
        throw ConfigError("validation fraction " + std::to_string(fraction) +
                          " leaves no usable split for " + std::to_string(n) + " complexes");
    Rng rng(mix_seed(split_seed, 0x5145));
    const auto picked = rng.sample_indices(n, k);  // ascending
    std::vector<bool> in_valid(n, false);
    for (const std::size_t i : picked) in_valid[i] = true;
    std::vector<ComplexRecord> train_keep;
    train_keep.reserve(n - k);
    valid_out.clear();
    valid_out.reserve(k);
    for (std::size_t i = 0; i < n; ++i)
        (in_valid[i] ? valid_out : train_keep).push_back(std::move(complexes[i]));
    complexes = std::move(train_keep);
}

CommandResult cmd_train(const RunConfig& cfg) {
    cfg.validate_for_training();
    CommandResult result;
    const auto start = Clock::now();

    auto complexes = parse_dataset(cfg.train_path);
    std::vector<ComplexRecord> valid_complexes;
    bool have_valid = false;
    if (!cfg.valid_path.empty()) {
        valid_complexes = parse_dataset(cfg.valid_path);
        have_valid = true;
    } else if (cfg.train_config.early_stopping_rounds) {
        split_validation(complexes, cfg.valid_fraction, cfg.split_seed, valid_complexes);
        have_valid = true;
        result.log.push_back("carved " + std::to_string(valid_complexes.size()) +
                             " complexes into a validation split (fraction " +
                             std::to_string(cfg.valid_fraction) + ", seed " +
                             std::to_string(cfg.split_seed) + ")");
    }

    const DatasetSchema schema = DatasetSchema::infer(complexes);
    std::vector<std::string> warnings;
    const FeatureMatrix matrix = featurize_dataset(complexes, cfg.interaction, schema,
                                                   &warnings);
    std::optional<FeatureMatrix> valid_matrix;
    if (have_valid)
        valid_matrix = featurize_dataset(valid_complexes, cfg.interaction, schema, &warnings);
    for (const auto& w : warnings) result.log.push_back("warning: " + w);
    result.log.push_back(timing_note("featurize", start));

    fs::create_directories(cfg.out_dir);
    for (const std::uint64_t seed : cfg.seeds) {
        const auto seed_start = Clock::now();
        TrainConfig train_cfg = cfg.train_config;
        train_cfg.rng_seed = seed;
        const TrainResult trained =
            train(matrix, valid_matrix ? &*valid_matrix : nullptr, train_cfg);
        for (const auto& w : trained.warnings) result.log.push_back("warning: " + w);

        Json document = model_to_json(trained.model);
        document["schema"] = schema_to_json(schema);
        document["interaction"] = interaction_to_json(cfg.interaction);
        document["train_config"] = train_config_to_json(train_cfg);
        const std::string model_path = model_path_for_seed(cfg, seed);
        save_model_document(document, model_path);
        result.artifacts.push_back(model_path);

        const std::string log_path =
            cfg.out_dir + "/train_log_seed" + std::to_string(seed) + ".csv";
        write_text_file(log_path, training_log_csv(trained.log));
        result.artifacts.push_back(log_path);

        std::string note = "seed " + std::to_string(seed) + ": " +
                           std::to_string(trained.model.trees.size()) + " trees, final train RMSE " +
                           std::to_string(trained.log.empty() ? 0.0
                                                              : trained.log.back().train_rmse);
        if (trained.early_stopped)
            note += ", early stopped at iteration " +
                    std::to_string(trained.log.back().iteration) + " (kept " +
                    std::to_string(trained.best_iteration + 1) + " trees)";
        result.log.push_back(note);
        result.log.push_back(timing_note("train seed " + std::to_string(seed), seed_start));
    }
    update_manifest(cfg.out_dir, result.artifacts);
    return result;
}

CommandResult cmd_predict(const RunConfig& cfg) {
    if (cfg.test_paths.empty())
        throw ConfigError("predict: no test dataset given");
    CommandResult result;
    const LoadedModel loaded = load_pipeline_model(resolve_model_path(cfg));
    fs::create_directories(cfg.out_dir);
    for (const auto& path : cfg.test_paths) {
        const auto data = featurize_with_cache(path, loaded.interaction, loaded.schema,
                                               cfg.cache_dir(), &result.log);
        const auto predictions = predict(loaded.model, data.matrix);
        std::string csv = "id,affinity,prediction\n";
        char buf[96];
        for (std::size_t r = 0; r < data.matrix.n_rows(); ++r) {
            std::snprintf(buf, sizeof(buf), ",%.17g,%.17g\n", data.matrix.labels()[r],
                          predictions[r]);
            csv += data.matrix.row_ids()[r] + buf;
        }
        const std::string out_path =
            cfg.out_dir + "/predictions_" + dataset_stem(path) + ".csv";
        write_text_file(out_path, csv);
        result.artifacts.push_back(out_path);
    }
    update_manifest(cfg.out_dir, result.artifacts);
    return result;
}

CommandResult cmd_evaluate(const RunConfig& cfg) {
    if (cfg.test_paths.empty())
        throw ConfigError("evaluate: no test dataset given");
    CommandResult result;
    const auto start = Clock::now();

    std::vector<std::pair<std::uint64_t, LoadedModel>> models;
    if (!cfg.model_path.empty()) {
        models.emplace_back(cfg.seeds.empty() ? 0 : cfg.seeds.front(),
                            load_pipeline_model(cfg.model_path));
    } else {
        if (cfg.seeds.empty())
            throw ConfigError("evaluate: empty seed list");
        for (const std::uint64_t seed : cfg.seeds)
            models.emplace_back(seed, load_pipeline_model(model_path_for_seed(cfg, seed)));
    }

    // Optional deterministic OLS baseline, trained on the configured
    // training dataset with its own inferred schema.
    std::optional<LinearModel> baseline;
    std::optional<DatasetSchema> baseline_schema;
    const InteractionConfig& baseline_interaction =
        models.front().second.interaction;
    if (!cfg.train_path.empty()) {
        const auto train_data = featurize_with_cache(cfg.train_path, baseline_interaction,
                                                     std::nullopt, cfg.cache_dir(),
                                                     &result.log);
        std::vector<std::string> ols_warnings;
        baseline = ols_fit(train_data.matrix, 0.0, &ols_warnings);
        for (const auto& w : ols_warnings) result.log.push_back("warning: " + w);
        baseline_schema = train_data.schema;
    }

    std::vector<ReportRow> rows;
    Json json_rows = Json::array();
    for (const auto& test_path : cfg.test_paths) {
        const std::string dataset_name = dataset_stem(test_path);

        std::vector<MetricsReport> per_seed;
        Json per_seed_json = Json::array();
        for (const auto& [seed, loaded] : models) {
            const auto data = featurize_with_cache(test_path, loaded.interaction,
                                                   loaded.schema, cfg.cache_dir(),
                                                   &result.log);
            const auto predictions = predict(loaded.model, data.matrix);
            MetricsReport report;
            report.mean = compute_metrics(data.matrix.labels(), predictions);
            report.n_samples = data.matrix.n_rows();
            per_seed.push_back(report);
            per_seed_json.push_back(Json{{"seed", seed},
                                         {"rmse", report.mean.rmse},
                                         {"mae", report.mean.mae},
                                         {"sd", report.mean.sd},
                                         {"r", report.mean.r}});
        }
        const MetricsReport aggregated = aggregate_runs(per_seed);
        rows.push_back({"gbdt", dataset_name, aggregated});
        Json row{{"model", "gbdt"},
                 {"dataset", dataset_name},
                 {"metrics", metrics_to_json(aggregated)},
                 {"per_seed", per_seed_json}};
        json_rows.push_back(std::move(row));

        if (baseline) {
            const auto data = featurize_with_cache(test_path, baseline_interaction,
                                                   baseline_schema, cfg.cache_dir(),
                                                   &result.log);
            const auto predictions = baseline->predict(data.matrix);
            MetricsReport report;
            report.mean = compute_metrics(data.matrix.labels(), predictions);
            report.n_samples = data.matrix.n_rows();
            rows.push_back({"lr", dataset_name, report});
            json_rows.push_back(Json{{"model", "lr"},
                                     {"dataset", dataset_name},
                                     {"metrics", metrics_to_json(report)}});
        }
    }

    Json report_json;
    report_json["seeds"] = cfg.seeds;
    report_json["rows"] = std::move(json_rows);
    const std::string json_path = cfg.out_dir + "/report.json";
    write_text_file(json_path, report_json.dump(2) + "\n");
    result.artifacts.push_back(json_path);

    const std::string table = format_metrics_table(rows);
    const std::string table_path = cfg.out_dir + "/report.txt";
    write_text_file(table_path, table);
    result.artifacts.push_back(table_path);
    result.log.push_back("\n" + table);
    result.log.push_back(timing_note("evaluate", start));

    update_manifest(cfg.out_dir, result.artifacts);
    return result;
}

CommandResult cmd_tune(const RunConfig& cfg, TrainConfig* best_out) {
    if (!cfg.tuner)
        throw ConfigError("tune: no tuner section configured");
    cfg.tuner->validate();
    cfg.validate_for_training();
    CommandResult result;
    const auto start = Clock::now();

    auto complexes = parse_dataset(cfg.train_path);
    std::vector<ComplexRecord> valid_complexes;
    if (!cfg.valid_path.empty()) {
        valid_complexes = parse_dataset(cfg.valid_path);
    } else {
        split_validation(complexes, cfg.valid_fraction, cfg.split_seed, valid_complexes);
        result.log.push_back("carved " + std::to_string(valid_complexes.size()) +
                             " complexes into a validation split");
    }
    const DatasetSchema schema = DatasetSchema::infer(complexes);
    const FeatureMatrix matrix = featurize_dataset(complexes, cfg.interaction, schema);
    const FeatureMatrix valid_matrix =
        featurize_dataset(valid_complexes, cfg.interaction, schema);

    const TunerRanges& ranges = *cfg.tuner;
    const std::uint64_t tuner_seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();

    std::string trials_csv =
        "trial,learning_rate,max_leaves,max_depth,min_child_samples,l2_leaf_reg,"
        "feature_fraction,bagging_fraction,valid_rmse\n";
    TrainConfig best_cfg = cfg.train_config;
    double best_rmse = std::numeric_limits<double>::infinity();

    for (std::size_t trial = 0; trial < ranges.n_trials; ++trial) {
        TrainConfig trial_cfg = cfg.train_config;
        if (trial > 0) {
            // Trial 0 is the configured baseline; later trials sample the ranges.
            Rng rng(mix_seed(tuner_seed, 0x7e5700 + trial));
            trial_cfg.learning_rate =
                rng.log_uniform(ranges.learning_rate.first, ranges.learning_rate.second);
            trial_cfg.max_leaves = static_cast<std::size_t>(rng.range(
                static_cast<std::int64_t>(ranges.max_leaves.first),
                static_cast<std::int64_t>(ranges.max_leaves.second)));
            trial_cfg.max_depth = static_cast<std::size_t>(rng.range(
                static_cast<std::int64_t>(ranges.max_depth.first),
                static_cast<std::int64_t>(ranges.max_depth.second)));
            trial_cfg.min_child_samples = static_cast<std::size_t>(rng.range(
                static_cast<std::int64_t>(ranges.min_child_samples.first),
                static_cast<std::int64_t>(ranges.min_child_samples.second)));
            trial_cfg.l2_leaf_reg =
                rng.log_uniform(ranges.l2_leaf_reg.first, ranges.l2_leaf_reg.second);
            trial_cfg.feature_fraction = rng.uniform(ranges.feature_fraction.first,
                                                     ranges.feature_fraction.second);
            trial_cfg.bagging_fraction = rng.uniform(ranges.bagging_fraction.first,
                                                     ranges.bagging_fraction.second);
        }
        trial_cfg.rng_seed = tuner_seed;
        trial_cfg.validate();

        const TrainResult trained = train(matrix, &valid_matrix, trial_cfg);
        const double valid_rmse = rmse(valid_matrix.labels(),
                                       predict(trained.model, valid_matrix));
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%zu,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n",
                      trial, trial_cfg.learning_rate, trial_cfg.max_leaves,
                      trial_cfg.max_depth, trial_cfg.min_child_samples,
                      trial_cfg.l2_leaf_reg, trial_cfg.feature_fraction,
                      trial_cfg.bagging_fraction, valid_rmse);
        trials_csv += buf;
        if (valid_rmse < best_rmse) {
            best_rmse = valid_rmse;
            best_cfg = trial_cfg;
        }
    }

    fs::create_directories(cfg.out_dir);
    const std::string trials_path = cfg.out_dir + "/tune_trials.csv";
    write_text_file(trials_path, trials_csv);
    result.artifacts.push_back(trials_path);

    Json best_json = train_config_to_json(best_cfg);
    best_json["valid_rmse"] = best_rmse;
    const std::string best_path = cfg.out_dir + "/best_config.json";
    write_text_file(best_path, best_json.dump(2) + "\n");
    result.artifacts.push_back(best_path);

    char note[128];
    std::snprintf(note, sizeof(note), "best validation RMSE %.6f over %zu trials", best_rmse,
                  ranges.n_trials);
    result.log.push_back(note);
    result.log.push_back(timing_note("tune", start));
    if (best_out != nullptr) *best_out = best_cfg;
    update_manifest(cfg.out_dir, result.artifacts);
    return result;
}

CommandResult cmd_importance(const RunConfig& cfg) {
    CommandResult result;
    const LoadedModel loaded = load_pipeline_model(resolve_model_path(cfg));
    const ImportanceReport report = importance_report(loaded.model);

    fs::create_directories(cfg.out_dir);
    const std::string csv_path = cfg.out_dir + "/importance.csv";
    write_importance_csv(report, csv_path);
    result.artifacts.push_back(csv_path);

    const std::vector<std::pair<std::string, const std::vector<ImportanceEntry>*>> blocks = {
        {"interaction", &report.interaction},
        {"sum", &report.sum},
        {"std", &report.std_dev}};
    for (const auto& [name, entries] : blocks) {
        const std::string svg_path = cfg.out_dir + "/importance_" + name + ".svg";
        write_importance_svg(*entries, "Feature importance (" + name + ")", svg_path);
        result.artifacts.push_back(svg_path);
    }
    result.log.push_back("importance over " + std::to_string(report.total_features()) +
                         " features");
    update_manifest(cfg.out_dir, result.artifacts);
    return result;
}

}  // namespace affinity
