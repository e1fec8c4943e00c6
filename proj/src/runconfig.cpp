#include "affinity/runconfig.hpp"

#include <charconv>
#include <fstream>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
void read_if(const Json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T>
std::pair<T, T> read_range(const Json& j, const char* key, std::pair<T, T> fallback) {
    if (!j.contains(key)) return fallback;
    const auto arr = j.at(key);
    if (!arr.is_array() || arr.size() != 2)
        throw ConfigError(std::string("tuner range '") + key + "' must be [lo, hi]");
    return {arr[0].get<T>(), arr[1].get<T>()};
}

}  // namespace

void TunerRanges::validate() const {
    if (n_trials < 1) throw ConfigError("tuner.n_trials must be >= 1");
    auto check = [](auto range, const char* name) {
        if (range.second < range.first)
            throw ConfigError(std::string("tuner range '") + name + "' is empty");
    };
    check(learning_rate, "learning_rate");
    check(max_leaves, "max_leaves");
    check(max_depth, "max_depth");
    check(min_child_samples, "min_child_samples");
    check(l2_leaf_reg, "l2_leaf_reg");
    check(feature_fraction, "feature_fraction");
    check(bagging_fraction, "bagging_fraction");
    if (learning_rate.first <= 0.0 || l2_leaf_reg.first <= 0.0)
        throw ConfigError("log-uniform tuner ranges need positive lower bounds");
}

void RunConfig::validate_for_training() const {
    if (train_path.empty())
        throw ConfigError("no training dataset given (--train or config \"train\")");
    if (seeds.empty())
        throw ConfigError("seed list must be nonempty");
    interaction.validate();
    train_config.validate();
    if (valid_fraction <= 0.0 || valid_fraction >= 1.0)
        throw ConfigError("valid_fraction must be in (0, 1)");
}

nlohmann::ordered_json interaction_to_json(const InteractionConfig& cfg) {
    return Json{{"protein_elements", cfg.protein_elements},
                {"ligand_elements", cfg.ligand_elements},
                {"cutoff", cfg.d_cutoff},
                {"boundary_inclusive", cfg.boundary_inclusive}};
}

InteractionConfig interaction_from_json(const nlohmann::ordered_json& j) {
    InteractionConfig cfg;
    read_if(j, "protein_elements", cfg.protein_elements);
    read_if(j, "ligand_elements", cfg.ligand_elements);
    read_if(j, "cutoff", cfg.d_cutoff);
    read_if(j, "boundary_inclusive", cfg.boundary_inclusive);
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json train_config_to_json(const TrainConfig& cfg) {
    Json j{{"n_trees", cfg.n_trees},
           {"learning_rate", cfg.learning_rate},
           {"max_depth", cfg.max_depth},
           {"max_leaves", cfg.max_leaves},
           {"min_child_samples", cfg.min_child_samples},
           {"l2_leaf_reg", cfg.l2_leaf_reg},
           {"bagging_fraction", cfg.bagging_fraction},
           {"bagging_freq", cfg.bagging_freq},
           {"feature_fraction", cfg.feature_fraction},
           {"max_bins", cfg.max_bins},
           {"rng_seed", cfg.rng_seed}};
    if (cfg.early_stopping_rounds) j["early_stopping_rounds"] = *cfg.early_stopping_rounds;
    return j;
}

TrainConfig train_config_from_json(const nlohmann::ordered_json& j) {
    TrainConfig cfg;
    if (j.contains("preset")) {
        const std::string preset = j.at("preset").get<std::string>();
        if (preset == "depth_regularized")
            cfg = TrainConfig::depth_regularized();
        else if (preset != "default")
            throw ConfigError("unknown train_config preset '" + preset + "'");
    }
    read_if(j, "n_trees", cfg.n_trees);
    read_if(j, "learning_rate", cfg.learning_rate);
    read_if(j, "max_depth", cfg.max_depth);
    read_if(j, "max_leaves", cfg.max_leaves);
    read_if(j, "min_child_samples", cfg.min_child_samples);
    read_if(j, "l2_leaf_reg", cfg.l2_leaf_reg);
    read_if(j, "bagging_fraction", cfg.bagging_fraction);
    read_if(j, "bagging_freq", cfg.bagging_freq);
    read_if(j, "feature_fraction", cfg.feature_fraction);
    read_if(j, "max_bins", cfg.max_bins);
    read_if(j, "rng_seed", cfg.rng_seed);
    if (j.contains("early_stopping_rounds"))
        cfg.early_stopping_rounds = j.at("early_stopping_rounds").get<std::size_t>();
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json schema_to_json(const DatasetSchema& schema) {
    Json features = Json::array();
    for (std::size_t i = 0; i < schema.size(); ++i) {
        Json f{{"name", schema.feature_names[i]},
               {"kind", schema.feature_kinds[i] == FeatureKind::kNumeric ? "numeric"
                                                                         : "categorical"}};
        if (schema.feature_kinds[i] == FeatureKind::kCategorical)
            f["vocab"] = schema.vocab[i];
        features.push_back(std::move(f));
    }
    return Json{{"features", std::move(features)}};
}

DatasetSchema schema_from_json(const nlohmann::ordered_json& j) {
    DatasetSchema schema;
    for (const Json& f : j.at("features")) {
        schema.feature_names.push_back(f.at("name").get<std::string>());
        const std::string kind = f.at("kind").get<std::string>();
        if (kind == "numeric") {
            schema.feature_kinds.push_back(FeatureKind::kNumeric);
            schema.vocab.emplace_back();
        } else if (kind == "categorical") {
            schema.feature_kinds.push_back(FeatureKind::kCategorical);
            schema.vocab.push_back(f.at("vocab").get<std::vector<std::string>>());
        } else {
            throw ConfigError("schema feature kind must be numeric or categorical, got '" +
                              kind + "'");
        }
    }
    return schema;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    RunConfig cfg;
    cfg.merge_json(j);
    return cfg;
}

void RunConfig::merge_json(const nlohmann::ordered_json& j) {
    if (!j.is_object())
        throw ConfigError("config root must be a JSON object");
    read_if(j, "train", train_path);
    read_if(j, "valid", valid_path);
    if (j.contains("test")) {
        if (j.at("test").is_string())
            test_paths = {j.at("test").get<std::string>()};
        else
            test_paths = j.at("test").get<std::vector<std::string>>();
    }
    read_if(j, "out", out_dir);
    read_if(j, "model", model_path);
    read_if(j, "seeds", seeds);
    read_if(j, "valid_fraction", valid_fraction);
    read_if(j, "split_seed", split_seed);
    read_if(j, "threads", threads);
    if (j.contains("interaction")) interaction = interaction_from_json(j.at("interaction"));
    if (j.contains("train_config")) train_config = train_config_from_json(j.at("train_config"));
    if (j.contains("tuner")) {
        const Json& t = j.at("tuner");
        TunerRanges ranges;
        read_if(t, "n_trials", ranges.n_trials);
        ranges.learning_rate = read_range(t, "learning_rate", ranges.learning_rate);
        ranges.max_leaves = read_range(t, "max_leaves", ranges.max_leaves);
        ranges.max_depth = read_range(t, "max_depth", ranges.max_depth);
        ranges.min_child_samples =
            read_range(t, "min_child_samples", ranges.min_child_samples);
        ranges.l2_leaf_reg = read_range(t, "l2_leaf_reg", ranges.l2_leaf_reg);
        ranges.feature_fraction = read_range(t, "feature_fraction", ranges.feature_fraction);
        ranges.bagging_fraction = read_range(t, "bagging_fraction", ranges.bagging_fraction);
        ranges.validate();
        tuner = ranges;
    }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
    std::vector<std::uint64_t> seeds;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t pos = std::min(csv.find(',', start), csv.size());
        const std::string tok = csv.substr(start, pos - start);
        if (!tok.empty()) {
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ConfigError("bad seed '" + tok + "' in seed list");
            seeds.push_back(v);
        }
        start = pos + 1;
    }
    if (seeds.empty())
        throw ConfigError("seed list is empty");
    return seeds;
}

}  // namespace affinity
