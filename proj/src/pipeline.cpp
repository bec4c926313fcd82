// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "polycell/cell.hpp"
#include "polycell/electrochem.hpp"
#include "polycell/errors.hpp"
#include "polycell/quadratic.hpp"
#include "polycell/textio.hpp"
#include "polycell/units.hpp"

namespace polycell::pipeline {

namespace fs = std::filesystem;

const char* to_string(ObjectiveSource source) {
    switch (source) {
        case ObjectiveSource::PhysicsModel: return "physics";
        case ObjectiveSource::TrainedSurrogate: return "surrogate";
        case ObjectiveSource::PaperSurfaces: return "paper";
    }
    throw contract_error("ObjectiveSource: unknown enumerator");
}

namespace {

ObjectiveSource source_from_string(const std::string& name) {
    if (name == "physics") return ObjectiveSource::PhysicsModel;
    if (name == "surrogate") return ObjectiveSource::TrainedSurrogate;
    if (name == "paper") return ObjectiveSource::PaperSurfaces;
    throw config_error("objective.source: unknown value '" + name +
                       "' (expected physics, surrogate, or paper)");
}

mlp::Optimizer optimizer_from_string(const std::string& name) {
    if (name == "adam") return mlp::Optimizer::AdaptiveMoments;
    if (name == "sgd") return mlp::Optimizer::PlainGradientDescent;
    throw config_error("train.optimizer: unknown value '" + name +
                       "' (expected adam or sgd)");
}

const char* to_string(mlp::Optimizer optimizer) {
    return optimizer == mlp::Optimizer::AdaptiveMoments ? "adam" : "sgd";
}

surrogate::ModelTag model_tag_from_string(const std::string& name) {
    if (name == "pentagonal") return surrogate::ModelTag::Pentagonal;
    if (name == "hexagonal") return surrogate::ModelTag::Hexagonal;
    if (name == "cubic") return surrogate::ModelTag::Cubic;
    throw config_error("unknown model '" + name +
                       "' (expected cubic, pentagonal, or hexagonal)");
}

/// Minimal decimal rendering for the transcribed reference constants.
std::string format_brief(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

}  // namespace

std::string RunConfig::resolved_model() const {
    return model.empty() ? preset : model;
}

void RunConfig::validate() const {
    try {
        fcell::channel_shape_from_string(preset);
        if (!model.empty()) model_tag_from_string(model);
        bounds.validate();
        train.validate();
        ga.validate();
    } catch (const contract_error& e) {
        throw config_error(e.what());
    }
    if (grid.p_steps < 2 || grid.t_steps < 2) {
        throw config_error("grid steps must be >= 2 per axis");
    }
    if (sweep_voltage <= 0) {
        throw config_error("sweep.voltage must be positive");
    }
    if (polarize_steps < 2) {
        throw config_error("polarize.steps must be >= 2");
    }
    if (polarize_v_min <= 0 || polarize_v_max <= polarize_v_min) {
        throw config_error("polarize voltages need 0 < v_min < v_max");
    }
}

void apply_global_seed(RunConfig& config, std::uint64_t seed) {
    config.seed = seed;
    config.train.seed = seed;
    config.ga.seed = seed;
}

RunConfig parse_config(const std::string& text) {
    const KvDocument doc = KvDocument::parse(text);
    RunConfig config;
    bool global_seed_set = false;
    std::uint64_t global_seed = config.seed;

    auto as_int = [](const KvDocument::Entry& entry) {
        const std::uint64_t value = parse_u64(entry.value);
        if (value > static_cast<std::uint64_t>(1) << 31) {
            throw config_error(entry.key + ": value " + entry.value + " is too large");
        }
        return static_cast<int>(value);
    };

    for (const KvDocument::Entry& entry : doc.entries()) {
        const std::string& key = entry.key;
        const std::string& value = entry.value;
        try {
            if (key == "preset") config.preset = value;
            else if (key == "model") config.model = value;
            else if (key == "out") config.out_dir = value;
            else if (key == "seed") { global_seed = parse_u64(value); global_seed_set = true; }
            else if (key == "bounds.p_min") config.bounds.p_min = parse_double(value);
            else if (key == "bounds.p_max") config.bounds.p_max = parse_double(value);
            else if (key == "bounds.t_min") config.bounds.t_min = parse_double(value);
            else if (key == "bounds.t_max") config.bounds.t_max = parse_double(value);
            else if (key == "grid.p_steps") config.grid.p_steps = parse_u64(value);
            else if (key == "grid.t_steps") config.grid.t_steps = parse_u64(value);
            else if (key == "sweep.voltage") config.sweep_voltage = parse_double(value);
            else if (key == "train.learning_rate") config.train.learning_rate = parse_double(value);
            else if (key == "train.epochs") config.train.epochs = as_int(entry);
            else if (key == "train.batch_size") config.train.batch_size = as_int(entry);
            else if (key == "train.seed") config.train.seed = parse_u64(value);
            else if (key == "train.optimizer") config.train.optimizer = optimizer_from_string(value);
            else if (key == "train.data") config.train_data = value;
            else if (key == "fit.data") config.fit_data = value;
            else if (key == "fit.model") config.fit_model = value;
            else if (key == "ga.population") config.ga.population_size = as_int(entry);
            else if (key == "ga.generations") config.ga.generations = as_int(entry);
            else if (key == "ga.seed") config.ga.seed = parse_u64(value);
            else if (key == "ga.crossover_probability") config.ga.crossover_probability = parse_double(value);
            else if (key == "ga.sbx_index") config.ga.sbx_index = parse_double(value);
            else if (key == "ga.mutation_probability") config.ga.mutation_probability = parse_double(value);
            else if (key == "ga.mutation_index") config.ga.mutation_index = parse_double(value);
            else if (key == "objective.source") config.source = source_from_string(value);
            else if (key == "optimize.production_surface") config.production_surface = value;
            else if (key == "optimize.consumption_surface") config.consumption_surface = value;
            else if (key == "polarize.v_max") config.polarize_v_max = parse_double(value);
            else if (key == "polarize.v_min") config.polarize_v_min = parse_double(value);
            else if (key == "polarize.steps") config.polarize_steps = parse_u64(value);
            else {
                throw config_error("unknown config key '" + key + "' (line " +
                                   std::to_string(entry.line) + ")");
            }
        } catch (const config_error&) {
            throw;
        } catch (const error& e) {
            throw config_error(key + ": " + e.what());
        }
    }

    if (global_seed_set) apply_global_seed(config, global_seed);
    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

std::string serialize_manifest(const RunManifest& manifest) {
    KvDocument doc;
    doc.set("format", kManifestFormat);
    doc.set("version", manifest.version);
    doc.set("command", manifest.command);
    doc.set("generator", manifest.generator);
    doc.set("seed", manifest.seed);
    std::string components;
    for (std::size_t i = 0; i < manifest.components.size(); ++i) {
        if (i > 0) components += ',';
        components += manifest.components[i];
    }
    doc.set("components", components);
    for (const auto& [key, value] : manifest.config_echo) {
        doc.set("config." + key, value);
    }
    for (const ManifestFile& file : manifest.inputs) {
        doc.set("input." + file.name, file.digest);
    }
    for (const ManifestFile& file : manifest.outputs) {
        doc.set("output." + file.name, file.digest);
    }
    for (const auto& [key, value] : manifest.summary) {
        doc.set("summary." + key, value);
    }
    return doc.serialize();
}

namespace {

/// Collects artifacts for one run directory and records their digests.
class ArtifactWriter {
public:
    explicit ArtifactWriter(const std::string& dir) : dir_(dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw io_error("cannot create output directory '" + dir +
                           "': " + ec.message());
        }
    }

    void write(const std::string& name, const std::string& content) {
        write_file_atomic(dir_ / name, content);
        outputs_.push_back({name, digest_string(content)});
    }

    const std::vector<ManifestFile>& outputs() const { return outputs_; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<ManifestFile> outputs_;
};

ManifestFile input_record(const std::string& path, const std::string& content) {
    return {fs::path(path).filename().string(), digest_string(content)};
}

/// Value-typed settings only; file inputs appear in the manifest's input
/// section instead, so manifests stay path-independent.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("preset", c.preset);
    echo.emplace_back("model", c.resolved_model());
    echo.emplace_back("bounds.p_min", format_g17(c.bounds.p_min));
    echo.emplace_back("bounds.p_max", format_g17(c.bounds.p_max));
    echo.emplace_back("bounds.t_min", format_g17(c.bounds.t_min));
    echo.emplace_back("bounds.t_max", format_g17(c.bounds.t_max));
    echo.emplace_back("grid.p_steps", std::to_string(c.grid.p_steps));
    echo.emplace_back("grid.t_steps", std::to_string(c.grid.t_steps));
    echo.emplace_back("sweep.voltage", format_g17(c.sweep_voltage));
    echo.emplace_back("train.learning_rate", format_g17(c.train.learning_rate));
    echo.emplace_back("train.epochs", std::to_string(c.train.epochs));
    echo.emplace_back("train.batch_size", std::to_string(c.train.batch_size));
    echo.emplace_back("train.seed", std::to_string(c.train.seed));
    echo.emplace_back("train.optimizer", to_string(c.train.optimizer));
    echo.emplace_back("ga.population", std::to_string(c.ga.population_size));
    echo.emplace_back("ga.generations", std::to_string(c.ga.generations));
    echo.emplace_back("ga.seed", std::to_string(c.ga.seed));
    echo.emplace_back("ga.crossover_probability", format_g17(c.ga.crossover_probability));
    echo.emplace_back("ga.sbx_index", format_g17(c.ga.sbx_index));
    echo.emplace_back("ga.mutation_probability", format_g17(c.ga.mutation_probability));
    echo.emplace_back("ga.mutation_index", format_g17(c.ga.mutation_index));
    echo.emplace_back("objective.source", to_string(c.source));
    echo.emplace_back("polarize.v_max", format_g17(c.polarize_v_max));
    echo.emplace_back("polarize.v_min", format_g17(c.polarize_v_min));
    echo.emplace_back("polarize.steps", std::to_string(c.polarize_steps));
    return echo;
}

RunManifest make_manifest(const RunConfig& config, const std::string& command,
                          std::vector<std::string> components) {
    RunManifest manifest;
    manifest.command = command;
    manifest.generator = Rng::algorithm();
    manifest.seed = config.seed;
    manifest.config_echo = config_echo(config);
    std::sort(components.begin(), components.end());
    components.erase(std::unique(components.begin(), components.end()),
                     components.end());
    manifest.components = std::move(components);
    return manifest;
}

void finish_run(ArtifactWriter& writer, RunManifest& manifest) {
    manifest.outputs = writer.outputs();
    write_file_atomic(writer.dir() / "manifest", serialize_manifest(manifest));
}

void add_summary(RunManifest& manifest, const std::string& key, double value) {
    manifest.summary.emplace_back(key, format_g17(value));
}

void add_summary(RunManifest& manifest, const std::string& key,
                 const std::string& value) {
    manifest.summary.emplace_back(key, value);
}

std::vector<double> descending_voltages(const RunConfig& config) {
    std::vector<double> voltages;
    voltages.reserve(config.polarize_steps);
    const double hi = config.polarize_v_max;
    const double lo = config.polarize_v_min;
    for (std::size_t i = 0; i < config.polarize_steps; ++i) {
        if (i == 0) {
            voltages.push_back(hi);
        } else if (i == config.polarize_steps - 1) {
            voltages.push_back(lo);
        } else {
            const double fraction =
                static_cast<double>(i) / static_cast<double>(config.polarize_steps - 1);
            voltages.push_back(hi + (lo - hi) * fraction);
        }
    }
    return voltages;
}

}  // namespace

RunManifest run_sweep(const RunConfig& config) {
    config.validate();
    const fcell::CellSpec cell = fcell::preset_cell(config.preset);
    const fcell::OperatingPoint base =
        fcell::preset_operating_point(cell.geometry.model_tag);
    const std::vector<surrogate::GridPoint> grid =
        surrogate::design_grid({config.bounds.p_min, config.bounds.p_max},
                               {config.bounds.t_min, config.bounds.t_max},
                               config.grid.p_steps, config.grid.t_steps);

    surrogate::Dataset production;
    surrogate::Dataset consumption;
    production.objective_tag = surrogate::ObjectiveTag::Production;
    consumption.objective_tag = surrogate::ObjectiveTag::Consumption;
    production.model_tag = consumption.model_tag = model_tag_from_string(config.preset);

    std::size_t skipped = 0;
    for (const surrogate::GridPoint& point : grid) {
        try {
            const fcell::OperatingPoint op = fcell::operating_point_at(
                base, units::atm_to_pa(point.pressure),
                units::celsius_to_kelvin(point.temperature));
            const fcell::PowerReport report =
                fcell::evaluate_power(cell, op, config.sweep_voltage);
            production.rows.push_back(
                {point.pressure, point.temperature, report.production_power});
            consumption.rows.push_back(
                {point.pressure, point.temperature, report.consumption_power});
        } catch (const error& e) {
            ++skipped;
            std::cerr << "sweep: skipped (" << format_g17(point.pressure) << " atm, "
                      << format_g17(point.temperature) << " C): " << e.what() << "\n";
        }
    }
    if (skipped * 10 > grid.size()) {
        throw sweep_error("sweep: " + std::to_string(skipped) + " of " +
                          std::to_string(grid.size()) +
                          " grid points failed (more than 10%)");
    }

    ArtifactWriter writer(config.out_dir);
    writer.write("production.csv", surrogate::dataset_to_csv(production));
    writer.write("consumption.csv", surrogate::dataset_to_csv(consumption));

    RunManifest manifest = make_manifest(config, "sweep", {"fcell", "pipeline"});
    add_summary(manifest, "grid_points", static_cast<double>(grid.size()));
    add_summary(manifest, "rows", static_cast<double>(production.rows.size()));
    add_summary(manifest, "skipped", static_cast<double>(skipped));
    finish_run(writer, manifest);
    return manifest;
}

RunManifest run_train(const RunConfig& config) {
    config.validate();
    if (config.train_data.empty()) {
        throw config_error("train: no dataset given (set train.data)");
    }
    const std::string csv_text = read_file(config.train_data);
    const surrogate::Dataset dataset = surrogate::dataset_from_csv(csv_text);
    const auto [normalized, scaler] = surrogate::normalize(dataset);

    const mlp::MLPConfig architecture;
    mlp::MLP net = mlp::mlp_init(architecture, config.train.seed);
    mlp::TrainResult trained = mlp::mlp_train(net, normalized, config.train);
    trained.net.scaler = scaler;

    double sq_error = 0.0;
    for (const surrogate::DataRow& row : dataset.rows) {
        const double err =
            mlp::predict(trained.net, row.pressure, row.temperature) - row.value;
        sq_error += err * err;
    }
    const double rmse_w = std::sqrt(sq_error / static_cast<double>(dataset.rows.size()));

    ArtifactWriter writer(config.out_dir);
    writer.write("model.txt", mlp::serialize_mlp(trained.net));

    RunManifest manifest = make_manifest(config, "train", {"surrogate", "pipeline"});
    manifest.inputs.push_back(input_record(config.train_data, csv_text));
    add_summary(manifest, "rows", static_cast<double>(dataset.rows.size()));
    add_summary(manifest, "epochs", static_cast<double>(trained.loss_history.size()));
    add_summary(manifest, "final_loss", trained.loss_history.back());
    add_summary(manifest, "rmse_w", rmse_w);
    finish_run(writer, manifest);
    return manifest;
}

RunManifest run_fit(const RunConfig& config) {
    config.validate();
    const bool from_data = !config.fit_data.empty();
    const bool from_model = !config.fit_model.empty();
    if (from_data == from_model) {
        throw config_error("fit: set exactly one of fit.data or fit.model");
    }

    RunManifest manifest = make_manifest(config, "fit", {"surrogate", "pipeline"});
    surrogate::Dataset dataset;
    if (from_data) {
        const std::string csv_text = read_file(config.fit_data);
        dataset = surrogate::dataset_from_csv(csv_text);
        manifest.inputs.push_back(input_record(config.fit_data, csv_text));
        add_summary(manifest, "fit_source", std::string("data"));
    } else {
        const std::string model_text = read_file(config.fit_model);
        const mlp::MLP net = mlp::deserialize_mlp(model_text);
        manifest.inputs.push_back(input_record(config.fit_model, model_text));
        const std::vector<surrogate::GridPoint> grid =
            surrogate::design_grid({config.bounds.p_min, config.bounds.p_max},
                                   {config.bounds.t_min, config.bounds.t_max},
                                   config.grid.p_steps, config.grid.t_steps);
        for (const surrogate::GridPoint& point : grid) {
            dataset.rows.push_back(
                {point.pressure, point.temperature,
                 mlp::predict(net, point.pressure, point.temperature)});
        }
        add_summary(manifest, "fit_source", std::string("model"));
    }

    const surrogate::FitResult fit = surrogate::fit_quadratic(dataset);

    ArtifactWriter writer(config.out_dir);
    writer.write("surface.txt", surrogate::serialize_surface(fit.surface));
    add_summary(manifest, "rows", static_cast<double>(dataset.rows.size()));
    add_summary(manifest, "rms_residual_w", fit.rms_residual);
    finish_run(writer, manifest);
    return manifest;
}

namespace {

std::string render_optimize_summary(const RunConfig& config,
                                    const evolve::ParetoResult& result,
                                    const evolve::FrontReport& report) {
    KvDocument doc;
    doc.set("title", "polycell optimization summary");
    doc.set("model", config.resolved_model());
    doc.set("objective.source", to_string(config.source));
    doc.set("seed", static_cast<std::uint64_t>(config.ga.seed));
    doc.set("front.size", static_cast<std::uint64_t>(result.front.size()));

    auto set_point = [&](const std::string& prefix, const evolve::ParetoPoint& p) {
        doc.set(prefix + ".pressure_atm", p.pressure);
        doc.set(prefix + ".temperature_c", p.temperature);
        doc.set(prefix + ".p_pro_w", p.production);
        doc.set(prefix + ".p_cons_w", p.consumption);
        doc.set(prefix + ".ratio", p.ratio);
    };
    set_point("extreme.max_production", report.max_production);
    set_point("extreme.min_consumption", report.min_consumption);
    doc.set("ratio.at_max_production", report.ratio_at_max_production);
    doc.set("ratio.front_mean", report.mean_ratio);

    // Published CFD comparison figures, transcribed for side-by-side reading.
    doc.set("reference.note",
            "reported 3D CFD values, transcribed and never recomputed");
    doc.set("reference.optimum.pentagonal",
            format_brief(ReferenceData::kPentagonalOptimumPressureAtm) + " atm, " +
                format_brief(ReferenceData::kPentagonalOptimumTemperatureC) + " C");
    doc.set("reference.optimum.hexagonal",
            format_brief(ReferenceData::kHexagonalOptimumPressureAtm) + " atm, " +
                format_brief(ReferenceData::kHexagonalOptimumTemperatureC) + " C");
    doc.set("reference.ratio_at_max_production.pentagonal_percent",
            format_brief(ReferenceData::kPentagonalRatioAtMaxPercent));
    doc.set("reference.ratio_at_max_production.hexagonal_percent",
            format_brief(ReferenceData::kHexagonalRatioAtMaxPercent));
    doc.set("reference.ratio_front_mean.pentagonal_percent",
            format_brief(ReferenceData::kPentagonalMeanRatioPercent));
    doc.set("reference.ratio_front_mean.hexagonal_percent",
            format_brief(ReferenceData::kHexagonalMeanRatioPercent));
    doc.set("reference.current_density_gain_vs_cubic.pentagonal_percent",
            format_brief(ReferenceData::kPentagonalMeanGainPercent));
    doc.set("reference.current_density_gain_vs_cubic.hexagonal_percent",
            format_brief(ReferenceData::kHexagonalMeanGainPercent));
    for (const ReferenceData::Delta& delta : ReferenceData::kCurrentDensityDeltas) {
        std::string key = delta.comparison;
        std::replace(key.begin(), key.end(), ' ', '_');
        doc.set("reference.current_density_delta." + key,
                "max " + format_brief(delta.max_percent) + " % / avg " +
                    format_brief(delta.avg_percent) + " %");
    }
    return doc.serialize();
}

std::string front_to_csv(const evolve::ParetoResult& result) {
    std::string out = "pressure_atm,temperature_c,p_pro_w,p_cons_w,ratio\n";
    for (const evolve::ParetoPoint& p : result.front) {
        out += format_g17(p.pressure);
        out += ',';
        out += format_g17(p.temperature);
        out += ',';
        out += format_g17(p.production);
        out += ',';
        out += format_g17(p.consumption);
        out += ',';
        out += format_g17(p.ratio);
        out += '\n';
    }
    return out;
}

RunManifest optimize_impl(const RunConfig& config, const std::string& command) {
    config.validate();
    evolve::ObjectiveSpec spec;
    std::vector<std::string> components = {"evolve", "pipeline"};
    std::vector<ManifestFile> inputs;

    switch (config.source) {
        case ObjectiveSource::PaperSurfaces: {
            const surrogate::ModelTag tag = model_tag_from_string(config.resolved_model());
            const surrogate::QuadraticSurface production =
                surrogate::paper_surface(tag, surrogate::ObjectiveTag::Production);
            const surrogate::QuadraticSurface consumption =
                surrogate::paper_surface(tag, surrogate::ObjectiveTag::Consumption);
            spec.production = [production](double p, double t) {
                return surrogate::evaluate_surface(production, p, t);
            };
            spec.consumption = [consumption](double p, double t) {
                return surrogate::evaluate_surface(consumption, p, t);
            };
            components.push_back("surrogate");
            break;
        }
        case ObjectiveSource::TrainedSurrogate: {
            if (config.production_surface.empty() || config.consumption_surface.empty()) {
                throw config_error("optimize: surrogate source needs "
                                   "optimize.production_surface and "
                                   "optimize.consumption_surface");
            }
            const std::string pro_text = read_file(config.production_surface);
            const std::string cons_text = read_file(config.consumption_surface);
            const surrogate::QuadraticSurface production =
                surrogate::deserialize_surface(pro_text);
            const surrogate::QuadraticSurface consumption =
                surrogate::deserialize_surface(cons_text);
            inputs.push_back(input_record(config.production_surface, pro_text));
            inputs.push_back(input_record(config.consumption_surface, cons_text));
            spec.production = [production](double p, double t) {
                return surrogate::evaluate_surface(production, p, t);
            };
            spec.consumption = [consumption](double p, double t) {
                return surrogate::evaluate_surface(consumption, p, t);
            };
            components.push_back("surrogate");
            break;
        }
        case ObjectiveSource::PhysicsModel: {
            auto cell = std::make_shared<fcell::CellSpec>(fcell::preset_cell(config.preset));
            auto base = std::make_shared<fcell::OperatingPoint>(
                fcell::preset_operating_point(cell->geometry.model_tag));
            auto cache = std::make_shared<
                std::map<std::pair<double, double>, fcell::PowerReport>>();
            const double voltage = config.sweep_voltage;
            auto report_at = [cell, base, cache, voltage](double p, double t) {
                const std::pair<double, double> key{p, t};
                const auto found = cache->find(key);
                if (found != cache->end()) return found->second;
                const fcell::OperatingPoint op = fcell::operating_point_at(
                    *base, units::atm_to_pa(p), units::celsius_to_kelvin(t));
                const fcell::PowerReport report =
                    fcell::evaluate_power(*cell, op, voltage);
                (*cache)[key] = report;
                return report;
            };
            spec.production = [report_at](double p, double t) {
                return report_at(p, t).production_power;
            };
            spec.consumption = [report_at](double p, double t) {
                return report_at(p, t).consumption_power;
            };
            components.push_back("fcell");
            break;
        }
    }

    const evolve::ParetoResult result =
        evolve::run(spec, config.bounds, config.ga);
    const evolve::FrontReport report = evolve::front_report(result);

    ArtifactWriter writer(config.out_dir);
    writer.write("front.csv", front_to_csv(result));
    writer.write("summary.txt", render_optimize_summary(config, result, report));

    RunManifest manifest = make_manifest(config, command, std::move(components));
    manifest.inputs = std::move(inputs);
    add_summary(manifest, "front_size", static_cast<double>(result.front.size()));
    add_summary(manifest, "max_production.pressure_atm", report.max_production.pressure);
    add_summary(manifest, "max_production.temperature_c", report.max_production.temperature);
    add_summary(manifest, "max_production.p_pro_w", report.max_production.production);
    add_summary(manifest, "max_production.p_cons_w", report.max_production.consumption);
    add_summary(manifest, "min_consumption.pressure_atm", report.min_consumption.pressure);
    add_summary(manifest, "min_consumption.temperature_c", report.min_consumption.temperature);
    add_summary(manifest, "min_consumption.p_cons_w", report.min_consumption.consumption);
    add_summary(manifest, "ratio.at_max_production", report.ratio_at_max_production);
    add_summary(manifest, "ratio.front_mean", report.mean_ratio);
    finish_run(writer, manifest);
    return manifest;
}

}  // namespace

RunManifest run_optimize(const RunConfig& config) {
    return optimize_impl(config, "optimize");
}

RunManifest run_paper_opt(const RunConfig& config, const std::string& model_name) {
    if (model_name != "pentagonal" && model_name != "hexagonal") {
        throw config_error("paper-opt: model must be pentagonal or hexagonal, got '" +
                           model_name + "'");
    }
    RunConfig paper_config = config;
    paper_config.source = ObjectiveSource::PaperSurfaces;
    paper_config.model = model_name;
    return optimize_impl(paper_config, "paper-opt");
}

RunManifest run_polarize(const RunConfig& config) {
    config.validate();
    const fcell::CellSpec cell = fcell::preset_cell(config.preset);
    const fcell::OperatingPoint op =
        fcell::preset_operating_point(cell.geometry.model_tag);

    std::string csv = "voltage_v,current_density_a_m2,power_density_w_m2\n";
    std::size_t points = 0;
    std::size_t skipped = 0;
    for (double voltage : descending_voltages(config)) {
        try {
            const double current = fcell::solve_current_at_voltage(cell, op, voltage);
            csv += format_g17(voltage);
            csv += ',';
            csv += format_g17(current);
            csv += ',';
            csv += format_g17(voltage * current);
            csv += '\n';
            ++points;
        } catch (const error& e) {
            ++skipped;
            std::cerr << "polarize: skipped " << format_g17(voltage)
                      << " V: " << e.what() << "\n";
        }
    }

    ArtifactWriter writer(config.out_dir);
    writer.write("polarization.csv", csv);

    RunManifest manifest = make_manifest(config, "polarize", {"fcell", "pipeline"});
    add_summary(manifest, "points", static_cast<double>(points));
    add_summary(manifest, "skipped", static_cast<double>(skipped));
    finish_run(writer, manifest);
    return manifest;
}

}  // namespace polycell::pipeline
