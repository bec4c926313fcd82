// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_DATASET_HPP
#define POLYCELL_DATASET_HPP

#include <string>
#include <utility>
#include <vector>

namespace polycell::surrogate {

enum class ObjectiveTag { Production, Consumption };
enum class ModelTag { Pentagonal, Hexagonal, Cubic };

const char* to_string(ObjectiveTag tag);
const char* to_string(ModelTag tag);

/// One sample of an objective over the design space. Pressure in atm,
/// temperature in Celsius, value in W: the unit system of the published
/// response surfaces.
struct DataRow {
    double pressure = 0.0;
    double temperature = 0.0;
    double value = 0.0;
};

struct Dataset {
    std::vector<DataRow> rows;
    ObjectiveTag objective_tag = ObjectiveTag::Production;
    ModelTag model_tag = ModelTag::Pentagonal;

    /// Non-empty and free of duplicate (P, T) pairs.
    void validate() const;
};

struct GridPoint {
    double pressure = 0.0;
    double temperature = 0.0;
};

/// Evenly spaced Cartesian grid including both endpoints, row-major with
/// pressure as the outer loop.
std::vector<GridPoint> design_grid(std::pair<double, double> p_bounds,
                                   std::pair<double, double> t_bounds,
                                   std::size_t p_steps, std::size_t t_steps);

struct FeatureRange {
    double min = 0.0;
    double max = 1.0;
};

/// Per-column min-max ranges mapping a dataset onto [0,1]^3. The default
/// ranges are the identity map.
struct Scaler {
    FeatureRange pressure;
    FeatureRange temperature;
    FeatureRange value;

    double to_unit_pressure(double p) const;
    double to_unit_temperature(double t) const;
    double to_unit_value(double v) const;
    double from_unit_value(double v) const;
};

/// Min-max normalization of all three columns. Raises degenerate_feature_error
/// when a column is constant.
std::pair<Dataset, Scaler> normalize(const Dataset& dataset);

/// Inverse of normalize for the same scaler.
Dataset denormalize(const Dataset& dataset, const Scaler& scaler);

/// CSV persistence with the fixed header pressure_atm,temperature_c,value_w
/// and 17-significant-digit floats. Tags are not part of the file format;
/// read_dataset_csv returns default tags.
std::string dataset_to_csv(const Dataset& dataset);
Dataset dataset_from_csv(const std::string& text);
void write_dataset_csv(const std::string& path, const Dataset& dataset);
Dataset read_dataset_csv(const std::string& path);

}  // namespace polycell::surrogate

#endif
