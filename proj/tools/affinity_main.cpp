// Command-line pipeline: parse -> featurize -> train/tune -> evaluate ->
// report. Subcommands: gen-synth, featurize, train, predict, evaluate, tune,
// importance. Config file values are overridden by flags.
//
// Exit codes: 0 success, 2 configuration/usage, 3 data parsing or schema,
// 4 training, 5 evaluation, 6 model/cache files, 1 anything else.

#include <cstdio>
#include <exception>
#include <iostream>
#include <omp.h>

#include <CLI11.hpp>

#include "affinity/commands.hpp"
#include "affinity/errors.hpp"
#include "affinity/runconfig.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string train_path, valid_path;
    std::vector<std::string> test_paths;
    std::string out_dir;
    std::string model_path;
    std::string seeds_csv;
    double cutoff = 12.0;
    std::string boundary;
    double valid_fraction = 0.1;
    std::uint64_t split_seed = 0;
    int threads = 0;
    std::uint64_t trees = 0;
    double learning_rate = 0.0;
    std::uint64_t early_stopping = 0;
    std::string preset;
    std::uint64_t tune_trials = 0;
};

// Registers the shared pipeline flags on a subcommand and returns the
// override bundle the caller inspects after parsing.
void add_pipeline_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (flags override it)");
    cmd->add_option("--train", o.train_path, "training dataset (atoms_jsonl)");
    cmd->add_option("--valid", o.valid_path, "validation dataset (atoms_jsonl)");
    cmd->add_option("--test", o.test_paths, "test dataset(s) (atoms_jsonl)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--model", o.model_path, "model file (predict/evaluate/importance)");
    cmd->add_option("--seeds", o.seeds_csv, "comma-separated training seeds, e.g. 1,2,3");
    cmd->add_option("--cutoff", o.cutoff, "interaction cutoff distance in Angstrom");
    cmd->add_option("--boundary", o.boundary,
                    "cutoff boundary semantics: inclusive|exclusive")
        ->check(CLI::IsMember({"inclusive", "exclusive"}));
    cmd->add_option("--valid-fraction", o.valid_fraction,
                    "carved validation fraction when no --valid file is given");
    cmd->add_option("--split-seed", o.split_seed, "seed of the carved validation split");
    cmd->add_option("--threads", o.threads, "worker thread count (0 = OpenMP default)")
        ->envname("AFFINITY_THREADS");
    cmd->add_option("--trees", o.trees, "number of boosting iterations");
    cmd->add_option("--learning-rate", o.learning_rate, "boosting learning rate");
    cmd->add_option("--early-stopping", o.early_stopping,
                    "stop after this many rounds without validation improvement");
    cmd->add_option("--preset", o.preset, "train_config preset: default|depth_regularized")
        ->check(CLI::IsMember({"default", "depth_regularized"}));
    cmd->add_option("--tune-trials", o.tune_trials, "random-search trial count (tune)");
}

affinity::RunConfig resolve_config(const CLI::App* cmd, const CliOverrides& o) {
    affinity::RunConfig cfg;
    if (cmd->count("--config") > 0)
        cfg = affinity::RunConfig::from_json_file(o.config_path);
    if (cmd->count("--preset") > 0 && o.preset == "depth_regularized")
        cfg.train_config = affinity::TrainConfig::depth_regularized();
    if (cmd->count("--train") > 0) cfg.train_path = o.train_path;
    if (cmd->count("--valid") > 0) cfg.valid_path = o.valid_path;
    if (cmd->count("--test") > 0) cfg.test_paths = o.test_paths;
    if (cmd->count("--out") > 0) cfg.out_dir = o.out_dir;
    if (cmd->count("--model") > 0) cfg.model_path = o.model_path;
    if (cmd->count("--seeds") > 0) cfg.seeds = affinity::parse_seed_list(o.seeds_csv);
    if (cmd->count("--cutoff") > 0) cfg.interaction.d_cutoff = o.cutoff;
    if (cmd->count("--boundary") > 0)
        cfg.interaction.boundary_inclusive = o.boundary == "inclusive";
    if (cmd->count("--valid-fraction") > 0) cfg.valid_fraction = o.valid_fraction;
    if (cmd->count("--split-seed") > 0) cfg.split_seed = o.split_seed;
    if (cmd->count("--threads") > 0) cfg.threads = o.threads;
    if (cmd->count("--trees") > 0) cfg.train_config.n_trees = o.trees;
    if (cmd->count("--learning-rate") > 0) cfg.train_config.learning_rate = o.learning_rate;
    if (cmd->count("--early-stopping") > 0)
        cfg.train_config.early_stopping_rounds = o.early_stopping;
    if (cmd->count("--tune-trials") > 0) {
        if (!cfg.tuner) cfg.tuner = affinity::TunerRanges{};
        cfg.tuner->n_trials = o.tune_trials;
    }
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    return cfg;
}

void print_result(const affinity::CommandResult& result) {
    for (const auto& line : result.log) std::cerr << line << '\n';
    for (const auto& artifact : result.artifacts) std::cout << artifact << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Protein-ligand binding affinity prediction: element-pair contact counts "
                 "and pooled atomic features feeding gradient-boosted regression trees"};
    app.require_subcommand(1);

    CliOverrides o;
    affinity::GenSynthOptions synth;
    std::string synth_target = "pairwise_contact";

    CLI::App* gen = app.add_subcommand("gen-synth", "generate a synthetic dataset");
    gen->add_option("--n", synth.n_complexes, "number of complexes");
    gen->add_option("--atoms-min", synth.atoms_min, "minimum atoms per complex");
    gen->add_option("--atoms-max", synth.atoms_max, "maximum atoms per complex");
    gen->add_option("--seed", synth.seed, "generator seed");
    gen->add_option("--target", synth_target, "target: linear|friedman1|pairwise_contact")
        ->check(CLI::IsMember({"linear", "friedman1", "pairwise_contact"}));
    gen->add_option("--noise", synth.noise_sigma, "label noise sigma");
    gen->add_option("--out", synth.out_path, "output JSONL path")->required();

    CLI::App* featurize = app.add_subcommand("featurize", "compute feature matrices");
    CLI::App* train = app.add_subcommand("train", "train one model per seed");
    CLI::App* predict = app.add_subcommand("predict", "predict with a trained model");
    CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate models, aggregate metrics");
    CLI::App* tune = app.add_subcommand("tune", "random-search hyperparameters");
    CLI::App* importance = app.add_subcommand("importance", "feature importance CSV + SVGs");
    for (CLI::App* cmd : {featurize, train, predict, evaluate, tune, importance})
        add_pipeline_options(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage/config problems share one documented exit code
    }

    if (gen->parsed()) {
        synth.target = affinity::synthetic_target_from_string(synth_target);
        print_result(affinity::cmd_gen_synth(synth));
        return 0;
    }
    for (CLI::App* cmd : {featurize, train, predict, evaluate, tune, importance}) {
        if (!cmd->parsed()) continue;
        const affinity::RunConfig cfg = resolve_config(cmd, o);
        if (cmd == featurize) print_result(affinity::cmd_featurize(cfg));
        else if (cmd == train) print_result(affinity::cmd_train(cfg));
        else if (cmd == predict) print_result(affinity::cmd_predict(cfg));
        else if (cmd == evaluate) print_result(affinity::cmd_evaluate(cfg));
        else if (cmd == tune) print_result(affinity::cmd_tune(cfg));
        else print_result(affinity::cmd_importance(cfg));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const affinity::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const affinity::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 3;
    } catch (const affinity::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 3;
    } catch (const affinity::TrainError& e) {
        std::cerr << "train error: " << e.what() << '\n';
        return 4;
    } catch (const affinity::EvalError& e) {
        std::cerr << "evaluation error: " << e.what() << '\n';
        return 5;
    } catch (const affinity::ModelIoError& e) {
        std::cerr << "model/cache error: " << e.what() << '\n';
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
