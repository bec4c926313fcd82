// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <string>
#include <vector>

#include "polycell/dataset.hpp"
#include "polycell/errors.hpp"
#include "polycell/mlp.hpp"
#include "polycell/pipeline.hpp"
#include "polycell/quadratic.hpp"
#include "polycell/textio.hpp"

using namespace polycell;
using namespace polycell::pipeline;

namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per call, cleaned of any previous run.
std::string scratch_dir(const std::string& label) {
    const fs::path dir = fs::temp_directory_path() / ("polycell_test_" + label);
    fs::remove_all(dir);
    return dir.string();
}

std::string manifest_value(const KvDocument& doc, const std::string& key) {
    const std::string* value = doc.find(key);
    REQUIRE(value != nullptr);
    return *value;
}

KvDocument read_manifest(const std::string& dir) {
    return KvDocument::parse(read_file((fs::path(dir) / "manifest").string()));
}

}  // namespace

TEST_CASE("config defaults") {
    const RunConfig config = parse_config("");
    CHECK(config.preset == "cubic");
    CHECK(config.model.empty());
    CHECK(config.resolved_model() == "cubic");
    CHECK(config.seed == 1);
    CHECK(config.bounds.p_min == 1.0);
    CHECK(config.bounds.p_max == 5.0);
    CHECK(config.bounds.t_min == 50.0);
    CHECK(config.bounds.t_max == 90.0);
    CHECK(config.grid.p_steps == 9);
    CHECK(config.grid.t_steps == 9);
    CHECK(config.sweep_voltage == 0.6);
    CHECK(config.ga.population_size == 200);
    CHECK(config.ga.generations == 200);
    CHECK(config.ga.seed == 1);
    CHECK(config.train.seed == 1);
    CHECK(config.train.epochs == 5000);
    CHECK(config.train.batch_size == 0);
    CHECK(config.source == ObjectiveSource::PaperSurfaces);
}

TEST_CASE("config parses every documented key") {
    const RunConfig config = parse_config(
        "preset = pentagonal\n"
        "model = hexagonal\n"
        "out = somewhere\n"
        "bounds.p_min = 1.5\n"
        "bounds.p_max = 4.5\n"
        "bounds.t_min = 55\n"
        "bounds.t_max = 85\n"
        "grid.p_steps = 5\n"
        "grid.t_steps = 7\n"
        "sweep.voltage = 0.65\n"
        "train.learning_rate = 0.003\n"
        "train.epochs = 1234\n"
        "train.batch_size = 16\n"
        "train.seed = 3\n"
        "train.optimizer = sgd\n"
        "train.data = a.csv\n"
        "fit.data = b.csv\n"
        "ga.population = 50\n"
        "ga.generations = 60\n"
        "ga.seed = 4\n"
        "ga.crossover_probability = 0.8\n"
        "ga.sbx_index = 10\n"
        "ga.mutation_probability = 0.25\n"
        "ga.mutation_index = 30\n"
        "objective.source = surrogate\n"
        "optimize.production_surface = p.txt\n"
        "optimize.consumption_surface = c.txt\n"
        "polarize.v_max = 1.05\n"
        "polarize.v_min = 0.15\n"
        "polarize.steps = 11\n");
    CHECK(config.preset == "pentagonal");
    CHECK(config.model == "hexagonal");
    CHECK(config.resolved_model() == "hexagonal");
    CHECK(config.out_dir == "somewhere");
    CHECK(config.bounds.p_min == 1.5);
    CHECK(config.bounds.t_max == 85.0);
    CHECK(config.grid.p_steps == 5);
    CHECK(config.grid.t_steps == 7);
    CHECK(config.sweep_voltage == 0.65);
    CHECK(config.train.learning_rate == 0.003);
    CHECK(config.train.epochs == 1234);
    CHECK(config.train.batch_size == 16);
    CHECK(config.train.seed == 3);
    CHECK(config.train.optimizer == mlp::Optimizer::PlainGradientDescent);
    CHECK(config.train_data == "a.csv");
    CHECK(config.fit_data == "b.csv");
    CHECK(config.ga.population_size == 50);
    CHECK(config.ga.generations == 60);
    CHECK(config.ga.seed == 4);
    CHECK(config.ga.crossover_probability == 0.8);
    CHECK(config.ga.sbx_index == 10.0);
    CHECK(config.ga.mutation_probability == 0.25);
    CHECK(config.ga.mutation_index == 30.0);
    CHECK(config.source == ObjectiveSource::TrainedSurrogate);
    CHECK(config.production_surface == "p.txt");
    CHECK(config.consumption_surface == "c.txt");
    CHECK(config.polarize_v_max == 1.05);
    CHECK(config.polarize_v_min == 0.15);
    CHECK(config.polarize_steps == 11);
}

TEST_CASE("config rejects unknown keys by name") {
    try {
        parse_config("graid.p_steps = 9\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("graid.p_steps") != std::string::npos);
    }
}

TEST_CASE("config rejects malformed values and bad settings") {
    CHECK_THROWS_AS(parse_config("grid.p_steps = many\n"), config_error);
    CHECK_THROWS_AS(parse_config("sweep.voltage = fast\n"), config_error);
    CHECK_THROWS_AS(parse_config("train.optimizer = newton\n"), config_error);
    CHECK_THROWS_AS(parse_config("objective.source = oracle\n"), config_error);
    CHECK_THROWS_AS(parse_config("preset = octagonal\n"), config_error);
    CHECK_THROWS_AS(parse_config("ga.population = 7\n"), config_error);
    CHECK_THROWS_AS(parse_config("sweep.voltage = -0.6\n"), config_error);
    CHECK_THROWS_AS(parse_config("grid.p_steps = 1\n"), config_error);
    CHECK_THROWS_AS(parse_config("polarize.steps = 1\n"), config_error);
    CHECK_THROWS_AS(parse_config("bounds.p_min = 9\n"), config_error);
    CHECK_THROWS_AS(parse_config("no_equals_sign\n"), config_error);
}

TEST_CASE("last duplicate key wins") {
    const RunConfig config = parse_config("sweep.voltage = 0.5\nsweep.voltage = 0.7\n");
    CHECK(config.sweep_voltage == 0.7);
}

TEST_CASE("global seed overrides every component seed") {
    const RunConfig config = parse_config(
        "train.seed = 11\n"
        "ga.seed = 12\n"
        "seed = 7\n");
    CHECK(config.seed == 7);
    CHECK(config.train.seed == 7);
    CHECK(config.ga.seed == 7);

    // Order in the file does not matter: the global key wins regardless.
    const RunConfig late = parse_config(
        "seed = 7\n"
        "train.seed = 11\n");
    CHECK(late.train.seed == 7);

    RunConfig manual;
    apply_global_seed(manual, 99);
    CHECK(manual.seed == 99);
    CHECK(manual.train.seed == 99);
    CHECK(manual.ga.seed == 99);
}

TEST_CASE("sweep produces the grid CSVs and a complete manifest") {
    RunConfig config;
    config.preset = "pentagonal";
    config.grid = {4, 4};
    config.out_dir = scratch_dir("sweep");
    const RunManifest manifest = run_sweep(config);

    const surrogate::Dataset production = surrogate::read_dataset_csv(
        (fs::path(config.out_dir) / "production.csv").string());
    const surrogate::Dataset consumption = surrogate::read_dataset_csv(
        (fs::path(config.out_dir) / "consumption.csv").string());
    CHECK(production.rows.size() == 16);
    CHECK(consumption.rows.size() == 16);
    CHECK(production.rows[0].pressure == 1.0);
    CHECK(production.rows[15].pressure == 5.0);
    CHECK(production.rows[15].temperature == 90.0);

    const std::string raw = read_file(
        (fs::path(config.out_dir) / "production.csv").string());
    CHECK(raw.rfind("pressure_atm,temperature_c,value_w\n", 0) == 0);

    const KvDocument doc = read_manifest(config.out_dir);
    CHECK(manifest_value(doc, "format") == std::string(kManifestFormat));
    CHECK(manifest_value(doc, "version") == std::string(kToolkitVersion));
    CHECK(manifest_value(doc, "command") == "sweep");
    CHECK(manifest_value(doc, "components") == "fcell,pipeline");
    CHECK(manifest_value(doc, "seed") == "1");
    CHECK(manifest_value(doc, "config.preset") == "pentagonal");
    CHECK(manifest_value(doc, "summary.rows") == "16");
    CHECK(manifest_value(doc, "summary.skipped") == "0");
    CHECK(manifest_value(doc, "output.production.csv") == digest_string(raw));

    // Every artifact except the manifest itself is listed with its digest.
    for (const auto& entry : fs::directory_iterator(config.out_dir)) {
        const std::string name = entry.path().filename().string();
        CHECK(name.find(".tmp") == std::string::npos);
        if (name == "manifest") continue;
        CHECK(doc.find("output." + name) != nullptr);
        CHECK(manifest_value(doc, "output." + name)
              == digest_string(read_file(entry.path().string())));
    }

    // Manifests stay path-independent.
    const std::string manifest_text = serialize_manifest(manifest);
    CHECK(manifest_text.find('/') == std::string::npos);
    CHECK(manifest_text.rfind("format = polycell-manifest-v1\n", 0) == 0);
}

TEST_CASE("sweep skips hot corners but fails beyond ten percent") {
    RunConfig config;
    config.preset = "cubic";
    config.grid = {9, 9};
    config.bounds.t_max = 100.4;  // vapor pressure exceeds 1 atm at P = 1 only
    config.out_dir = scratch_dir("sweep_skip");
    const RunManifest manifest = run_sweep(config);
    bool found = false;
    for (const auto& [key, value] : manifest.summary) {
        if (key == "skipped") {
            CHECK(value == "1");
            found = true;
        }
    }
    CHECK(found);

    RunConfig hot;
    hot.grid = {3, 3};
    hot.bounds = {1.0, 1.01, 104.0, 106.0};
    hot.out_dir = scratch_dir("sweep_hot");
    CHECK_THROWS_AS(run_sweep(hot), sweep_error);
}

TEST_CASE("train persists a model reproducing its predictions") {
    RunConfig sweep_config;
    sweep_config.preset = "pentagonal";
    sweep_config.grid = {5, 5};
    sweep_config.out_dir = scratch_dir("train_sweep");
    run_sweep(sweep_config);

    RunConfig train_config;
    train_config.train.epochs = 400;
    train_config.train_data =
        (fs::path(sweep_config.out_dir) / "production.csv").string();
    train_config.out_dir = scratch_dir("train_run");
    const RunManifest manifest = run_train(train_config);

    REQUIRE(manifest.inputs.size() == 1);
    CHECK(manifest.inputs[0].name == "production.csv");
    CHECK(manifest.inputs[0].digest
          == digest_string(read_file(train_config.train_data)));

    const mlp::MLP net =
        mlp::load_mlp((fs::path(train_config.out_dir) / "model.txt").string());
    const double prediction = mlp::predict(net, 2.0, 70.0);
    CHECK(std::isfinite(prediction));

    const KvDocument doc = read_manifest(train_config.out_dir);
    CHECK(manifest_value(doc, "command") == "train");
    CHECK(manifest_value(doc, "components") == "pipeline,surrogate");
    CHECK(doc.find("summary.rmse_w") != nullptr);
    CHECK(doc.find("summary.final_loss") != nullptr);

    RunConfig missing;
    missing.out_dir = scratch_dir("train_missing");
    CHECK_THROWS_AS(run_train(missing), config_error);
}

TEST_CASE("fit recovers a published surface from sampled data") {
    const surrogate::QuadraticSurface expected = surrogate::paper_surface(
        surrogate::ModelTag::Hexagonal, surrogate::ObjectiveTag::Production);
    surrogate::Dataset dataset;
    for (const surrogate::GridPoint& point :
         surrogate::design_grid({1.0, 5.0}, {50.0, 90.0}, 6, 6)) {
        dataset.rows.push_back(
            {point.pressure, point.temperature,
             surrogate::evaluate_surface(expected, point.pressure, point.temperature)});
    }
    const std::string data_dir = scratch_dir("fit_data");
    fs::create_directories(data_dir);
    const std::string csv_path = (fs::path(data_dir) / "samples.csv").string();
    surrogate::write_dataset_csv(csv_path, dataset);

    RunConfig config;
    config.fit_data = csv_path;
    config.out_dir = scratch_dir("fit_run");
    const RunManifest manifest = run_fit(config);

    const surrogate::QuadraticSurface fitted = surrogate::read_surface(
        (fs::path(config.out_dir) / "surface.txt").string());
    CHECK(fitted.c_pp == doctest::Approx(expected.c_pp).epsilon(1e-6));
    CHECK(fitted.c_pt == doctest::Approx(expected.c_pt).epsilon(1e-6));
    CHECK(fitted.c_p == doctest::Approx(expected.c_p).epsilon(1e-6));
    CHECK(fitted.c_tt == doctest::Approx(expected.c_tt).epsilon(1e-6));
    CHECK(fitted.c_t == doctest::Approx(expected.c_t).epsilon(1e-6));
    CHECK(fitted.c_0 == doctest::Approx(expected.c_0).epsilon(1e-6));

    const KvDocument doc = read_manifest(config.out_dir);
    CHECK(manifest_value(doc, "command") == "fit");
    CHECK(manifest_value(doc, "summary.fit_source") == "data");
    CHECK(manifest.inputs.size() == 1);

    RunConfig both = config;
    both.fit_model = "also.txt";
    CHECK_THROWS_AS(run_fit(both), config_error);
    RunConfig neither;
    neither.out_dir = scratch_dir("fit_none");
    CHECK_THROWS_AS(run_fit(neither), config_error);
}

TEST_CASE("fit can sample a trained model over the design grid") {
    RunConfig sweep_config;
    sweep_config.preset = "cubic";
    sweep_config.grid = {5, 5};
    sweep_config.out_dir = scratch_dir("fitm_sweep");
    run_sweep(sweep_config);

    RunConfig train_config;
    train_config.train.epochs = 300;
    train_config.train_data =
        (fs::path(sweep_config.out_dir) / "production.csv").string();
    train_config.out_dir = scratch_dir("fitm_train");
    run_train(train_config);

    RunConfig fit_config;
    fit_config.fit_model = (fs::path(train_config.out_dir) / "model.txt").string();
    fit_config.grid = {6, 6};
    fit_config.out_dir = scratch_dir("fitm_fit");
    const RunManifest manifest = run_fit(fit_config);

    const KvDocument doc = read_manifest(fit_config.out_dir);
    CHECK(manifest_value(doc, "summary.fit_source") == "model");
    CHECK(manifest_value(doc, "summary.rows") == "36");
    CHECK(manifest.inputs.size() == 1);
    CHECK(manifest.inputs[0].name == "model.txt");
}

TEST_CASE("optimize on the published surfaces writes front and summary") {
    RunConfig config;
    config.model = "pentagonal";
    config.source = ObjectiveSource::PaperSurfaces;
    config.ga.population_size = 16;
    config.ga.generations = 10;
    config.out_dir = scratch_dir("opt_paper");
    const RunManifest manifest = run_optimize(config);

    const std::string front_text =
        read_file((fs::path(config.out_dir) / "front.csv").string());
    CHECK(front_text.rfind("pressure_atm,temperature_c,p_pro_w,p_cons_w,ratio\n", 0)
          == 0);

    const KvDocument doc = read_manifest(config.out_dir);
    CHECK(manifest_value(doc, "command") == "optimize");
    CHECK(manifest_value(doc, "components") == "evolve,pipeline,surrogate");
    CHECK(doc.find("summary.front_size") != nullptr);
    CHECK(doc.find("summary.ratio.at_max_production") != nullptr);
    CHECK(doc.find("summary.max_production.pressure_atm") != nullptr);

    const std::string summary =
        read_file((fs::path(config.out_dir) / "summary.txt").string());
    CHECK(summary.find("extreme.max_production.p_pro_w") != std::string::npos);
    CHECK(summary.find("reference.current_density_gain_vs_cubic.pentagonal_percent"
                       " = 21.819") != std::string::npos);
    CHECK(summary.find("reference.current_density_gain_vs_cubic.hexagonal_percent"
                       " = 39.931") != std::string::npos);
    CHECK(manifest.command == "optimize");
}

TEST_CASE("optimize from fitted surface files records their digests") {
    const std::string dir = scratch_dir("opt_surfaces");
    fs::create_directories(dir);
    const std::string pro_path = (fs::path(dir) / "pro.txt").string();
    const std::string cons_path = (fs::path(dir) / "cons.txt").string();
    surrogate::write_surface(pro_path,
                             surrogate::paper_surface(surrogate::ModelTag::Pentagonal,
                                                      surrogate::ObjectiveTag::Production));
    surrogate::write_surface(cons_path,
                             surrogate::paper_surface(surrogate::ModelTag::Pentagonal,
                                                      surrogate::ObjectiveTag::Consumption));

    RunConfig config;
    config.source = ObjectiveSource::TrainedSurrogate;
    config.production_surface = pro_path;
    config.consumption_surface = cons_path;
    config.ga.population_size = 16;
    config.ga.generations = 10;
    config.out_dir = scratch_dir("opt_surr");
    const RunManifest manifest = run_optimize(config);

    REQUIRE(manifest.inputs.size() == 2);
    CHECK(manifest.inputs[0].name == "pro.txt");
    CHECK(manifest.inputs[1].name == "cons.txt");
    CHECK(manifest.inputs[0].digest == digest_string(read_file(pro_path)));

    RunConfig missing;
    missing.source = ObjectiveSource::TrainedSurrogate;
    missing.out_dir = scratch_dir("opt_missing");
    CHECK_THROWS_AS(run_optimize(missing), config_error);
}

TEST_CASE("paper-opt validates the model and avoids the physics module") {
    RunConfig config;
    config.ga.population_size = 16;
    config.ga.generations = 10;
    config.out_dir = scratch_dir("paper_opt");
    const RunManifest manifest = run_paper_opt(config, "hexagonal");
    CHECK(manifest.command == "paper-opt");
    for (const std::string& component : manifest.components) {
        CHECK(component != "fcell");
    }
    const KvDocument doc = read_manifest(config.out_dir);
    CHECK(manifest_value(doc, "command") == "paper-opt");
    CHECK(manifest_value(doc, "config.model") == "hexagonal");

    CHECK_THROWS_AS(run_paper_opt(config, "cubic"), config_error);
    CHECK_THROWS_AS(run_paper_opt(config, "round"), config_error);
}

TEST_CASE("polarize writes a descending exact-endpoint curve") {
    RunConfig config;
    config.preset = "cubic";
    config.polarize_v_max = 1.0;
    config.polarize_v_min = 0.2;
    config.polarize_steps = 5;
    config.out_dir = scratch_dir("polarize");
    run_polarize(config);

    const std::string text =
        read_file((fs::path(config.out_dir) / "polarization.csv").string());
    CHECK(text.rfind("voltage_v,current_density_a_m2,power_density_w_m2\n", 0) == 0);

    std::vector<double> voltages;
    std::size_t pos = text.find('\n') + 1;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        voltages.push_back(parse_double(text.substr(pos, comma - pos)));
        pos = text.find('\n', pos) + 1;
    }
    REQUIRE(voltages.size() == 5);
    CHECK(voltages.front() == 1.0);
    CHECK(voltages.back() == 0.2);
    for (std::size_t i = 1; i < voltages.size(); ++i) {
        CHECK(voltages[i] < voltages[i - 1]);
    }
}

TEST_CASE("identical seeds give byte-identical artifacts") {
    auto run_chain = [](const std::string& label) {
        RunConfig sweep_config;
        sweep_config.preset = "pentagonal";
        sweep_config.grid = {4, 4};
        sweep_config.out_dir = scratch_dir(label + "_sweep");
        run_sweep(sweep_config);

        RunConfig train_config;
        train_config.train.epochs = 200;
        train_config.train_data =
            (fs::path(sweep_config.out_dir) / "production.csv").string();
        train_config.out_dir = scratch_dir(label + "_train");
        run_train(train_config);

        RunConfig opt_config;
        opt_config.model = "pentagonal";
        opt_config.ga.population_size = 16;
        opt_config.ga.generations = 8;
        opt_config.out_dir = scratch_dir(label + "_opt");
        run_optimize(opt_config);
        return std::vector<std::string>{sweep_config.out_dir, train_config.out_dir,
                                        opt_config.out_dir};
    };

    const std::vector<std::string> a = run_chain("repa");
    const std::vector<std::string> b = run_chain("repb");
    for (std::size_t step = 0; step < a.size(); ++step) {
        for (const auto& entry : fs::directory_iterator(a[step])) {
            const std::string name = entry.path().filename().string();
            const std::string mirror = (fs::path(b[step]) / name).string();
            CHECK(read_file(entry.path().string()) == read_file(mirror));
        }
    }
}

TEST_CASE("changing the seed changes the optimizer artifacts") {
    RunConfig config;
    config.model = "pentagonal";
    config.ga.population_size = 16;
    config.ga.generations = 8;
    config.out_dir = scratch_dir("seed_a");
    run_optimize(config);

    RunConfig other = config;
    apply_global_seed(other, 2);
    other.out_dir = scratch_dir("seed_b");
    run_optimize(other);

    CHECK(read_file((fs::path(config.out_dir) / "front.csv").string())
          != read_file((fs::path(other.out_dir) / "front.csv").string()));
}
