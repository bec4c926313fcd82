// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0
//
// Orchestration and persistence: turns the cell model, surrogate layer, and
// optimizer into seeded, file-producing runs. Every run owns one output
// directory and ends by atomically writing a manifest listing all artifacts.

#ifndef POLYCELL_PIPELINE_HPP
#define POLYCELL_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polycell/mlp.hpp"
#include "polycell/nsga2.hpp"

namespace polycell::pipeline {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kManifestFormat = "polycell-manifest-v1";

enum class ObjectiveSource { PhysicsModel, TrainedSurrogate, PaperSurfaces };
const char* to_string(ObjectiveSource source);

struct GridSpec {
    std::size_t p_steps = 9;
    std::size_t t_steps = 9;
};

/// Effective settings of one run. parse_config fills this from the flat
/// key = value document; the CLI may then override seed, preset, and output
/// directory. A global seed override propagates to every stochastic
/// component.
struct RunConfig {
    std::string preset = "cubic";
    std::string model;  // surface family for paper mode; empty follows preset
    evolve::Bounds bounds;
    GridSpec grid;
    mlp::TrainConfig train;
    evolve::GAConfig ga;
    ObjectiveSource source = ObjectiveSource::PaperSurfaces;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    double sweep_voltage = 0.6;
    std::string train_data;
    std::string fit_data;
    std::string fit_model;
    std::string production_surface;
    std::string consumption_surface;
    double polarize_v_max = 1.1;
    double polarize_v_min = 0.1;
    std::size_t polarize_steps = 21;

    std::string resolved_model() const;
    void validate() const;
};

/// Sets the run seed and pushes it into the training and GA seeds.
void apply_global_seed(RunConfig& config, std::uint64_t seed);

/// Parses the documented key list; unknown keys and invalid values raise
/// config_error. An empty document yields all defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

struct ManifestFile {
    std::string name;    // file name inside the run directory (or input name)
    std::string digest;  // fnv1a64:<16 hex>
};

/// Reproducibility record of one run. File names are recorded without
/// directories and no wall-clock data is included, so repeated runs with the
/// same seed serialize byte-identically; timing goes to the console instead.
struct RunManifest {
    std::string version = kToolkitVersion;
    std::string command;
    std::string generator;
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<ManifestFile> inputs;
    std::vector<ManifestFile> outputs;
    std::vector<std::string> components;  // modules exercised, sorted
    std::vector<std::pair<std::string, std::string>> summary;
};

std::string serialize_manifest(const RunManifest& manifest);

/// Published comparison constants rendered in reports. These come from 3D
/// CFD and are never recomputed here.
struct ReferenceData {
    struct Delta {
        const char* comparison;
        double max_percent;
        double avg_percent;
    };
    /// Polarization current-density differences between the three designs.
    static constexpr std::array<Delta, 6> kCurrentDensityDeltas{{
        {"pentagonal optimized vs standard", 4.3, 2.7},
        {"pentagonal standard vs cubic", 36.2, 19.1},
        {"pentagonal optimized vs cubic", 46.0, 22.0},
        {"hexagonal optimized vs standard", 44.5, 24.7},
        {"hexagonal standard vs cubic", 32.6, 15.2},
        {"hexagonal optimized vs cubic", 77.2, 40.0},
    }};
    /// Mean current-density gain of each optimized design over the cubic base.
    static constexpr double kPentagonalMeanGainPercent = 21.819;
    static constexpr double kHexagonalMeanGainPercent = 39.931;
    /// Reported optima of the surface optimization.
    static constexpr double kPentagonalOptimumPressureAtm = 1.0;
    static constexpr double kPentagonalOptimumTemperatureC = 77.645;
    static constexpr double kHexagonalOptimumPressureAtm = 1.0;
    static constexpr double kHexagonalOptimumTemperatureC = 90.0;
    /// Reported consumption/production ratios.
    static constexpr double kPentagonalRatioAtMaxPercent = 0.25;
    static constexpr double kHexagonalRatioAtMaxPercent = 8.29;
    static constexpr double kPentagonalMeanRatioPercent = 0.198;
    static constexpr double kHexagonalMeanRatioPercent = 6.21;
};

/// Design-space sweep of the physics model at the configured cell voltage.
/// Writes production.csv and consumption.csv; failed grid points are skipped
/// with a logged reason, and more than 10% failures aborts with sweep_error.
RunManifest run_sweep(const RunConfig& config);

/// Trains the surrogate on train_data and writes model.txt.
RunManifest run_train(const RunConfig& config);

/// Fits the quadratic surface to fit_data, or to model predictions sampled
/// over the configured grid when fit_model is set. Writes surface.txt.
RunManifest run_fit(const RunConfig& config);

/// NSGA-II run over the configured objective source. Writes front.csv and
/// summary.txt.
RunManifest run_optimize(const RunConfig& config);

/// Paper mode: optimize the published surfaces of the named design
/// ("pentagonal" or "hexagonal"). The physics core is never touched.
RunManifest run_paper_opt(const RunConfig& config, const std::string& model_name);

/// Polarization sweep of the configured preset. Solver failures are reported
/// per voltage and the sweep continues. Writes polarization.csv.
RunManifest run_polarize(const RunConfig& config);

}  // namespace polycell::pipeline

#endif
