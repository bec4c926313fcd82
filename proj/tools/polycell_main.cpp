// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Every subcommand produces a run directory with
// its artifacts plus a manifest, and prints a short summary to stdout.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "polycell/errors.hpp"
#include "polycell/pipeline.hpp"

namespace {

namespace pl = polycell::pipeline;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

pl::ObjectiveSource parse_source(const std::string& name) {
    if (name == "physics") return pl::ObjectiveSource::PhysicsModel;
    if (name == "surrogate") return pl::ObjectiveSource::TrainedSurrogate;
    if (name == "paper") return pl::ObjectiveSource::PaperSurfaces;
    throw polycell::config_error("--source: unknown value '" + name + "'");
}

void print_manifest(const pl::RunManifest& manifest, const std::string& out_dir,
                    double elapsed_s) {
    std::cout << manifest.command << ": wrote " << manifest.outputs.size() + 1
              << " files to " << out_dir << "\n";
    for (const auto& [key, value] : manifest.summary) {
        std::cout << "  " << key << " = " << value << "\n";
    }
    std::cout << "  elapsed_s = " << elapsed_s << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polycell: surrogate-assisted PEM fuel cell design toolkit"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> preset;
    app.add_option("--config", config_path, "Key = value run configuration file");
    app.add_option("--seed", seed, "Override every component seed");
    app.add_option("--out", out_dir, "Output directory for run artifacts");
    app.add_option("--preset", preset, "Cell preset: cubic, pentagonal, or hexagonal");

    auto* sweep = app.add_subcommand("sweep", "Evaluate the cell model over a design grid");
    std::optional<double> sweep_voltage;
    sweep->add_option("--voltage", sweep_voltage, "Cell voltage for the sweep [V]");

    auto* train = app.add_subcommand("train", "Train the neural surrogate on a sweep CSV");
    std::optional<std::string> train_data;
    train->add_option("--data", train_data, "Training dataset CSV");

    auto* fit = app.add_subcommand("fit", "Fit a quadratic surface to data or a model");
    std::optional<std::string> fit_data;
    std::optional<std::string> fit_model;
    fit->add_option("--data", fit_data, "Dataset CSV to fit");
    fit->add_option("--model", fit_model, "Trained surrogate model file to sample");

    auto* optimize = app.add_subcommand("optimize", "Run the two-objective search");
    std::optional<std::string> source;
    std::optional<std::string> production_surface;
    std::optional<std::string> consumption_surface;
    std::optional<std::string> model_name;
    std::optional<int> population;
    std::optional<int> generations;
    optimize->add_option("--source", source,
                         "Objective source: paper, surrogate, or physics");
    optimize->add_option("--production-surface", production_surface,
                         "Fitted production surface file");
    optimize->add_option("--consumption-surface", consumption_surface,
                         "Fitted consumption surface file");
    optimize->add_option("--model", model_name,
                         "Model label for the paper source");
    optimize->add_option("--population", population, "Population size");
    optimize->add_option("--generations", generations, "Generation count");

    auto* paper_opt = app.add_subcommand(
        "paper-opt", "Optimize directly on the published response surfaces");
    std::string paper_model;
    paper_opt->add_option("model", paper_model, "pentagonal or hexagonal")->required();

    auto* polarize = app.add_subcommand("polarize", "Trace a polarization curve");
    std::optional<double> v_max;
    std::optional<double> v_min;
    std::optional<std::size_t> v_steps;
    polarize->add_option("--v-max", v_max, "Highest voltage [V]");
    polarize->add_option("--v-min", v_min, "Lowest voltage [V]");
    polarize->add_option("--steps", v_steps, "Number of voltage points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        pl::RunConfig config;
        if (config_path) config = pl::load_config(*config_path);
        if (preset) config.preset = *preset;
        if (out_dir) config.out_dir = *out_dir;
        if (sweep_voltage) config.sweep_voltage = *sweep_voltage;
        if (train_data) config.train_data = *train_data;
        if (fit_data) config.fit_data = *fit_data;
        if (fit_model) config.fit_model = *fit_model;
        if (source) config.source = parse_source(*source);
        if (production_surface) config.production_surface = *production_surface;
        if (consumption_surface) config.consumption_surface = *consumption_surface;
        if (model_name) config.model = *model_name;
        if (population) config.ga.population_size = *population;
        if (generations) config.ga.generations = *generations;
        if (v_max) config.polarize_v_max = *v_max;
        if (v_min) config.polarize_v_min = *v_min;
        if (v_steps) config.polarize_steps = *v_steps;
        if (seed) pl::apply_global_seed(config, *seed);
        config.validate();

        const auto start = std::chrono::steady_clock::now();
        pl::RunManifest manifest;
        if (sweep->parsed()) {
            manifest = pl::run_sweep(config);
        } else if (train->parsed()) {
            manifest = pl::run_train(config);
        } else if (fit->parsed()) {
            manifest = pl::run_fit(config);
        } else if (optimize->parsed()) {
            manifest = pl::run_optimize(config);
        } else if (paper_opt->parsed()) {
            manifest = pl::run_paper_opt(config, paper_model);
        } else if (polarize->parsed()) {
            manifest = pl::run_polarize(config);
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        print_manifest(manifest, config.out_dir, elapsed.count());
        return kExitOk;
    } catch (const polycell::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const polycell::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const polycell::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
