// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/dataset.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "polycell/errors.hpp"
#include "polycell/textio.hpp"

namespace polycell::surrogate {

namespace {

constexpr const char* kCsvHeader = "pressure_atm,temperature_c,value_w";

}  // namespace

const char* to_string(ObjectiveTag tag) {
    switch (tag) {
        case ObjectiveTag::Production: return "production";
        case ObjectiveTag::Consumption: return "consumption";
    }
    throw contract_error("ObjectiveTag: unknown enumerator");
}

const char* to_string(ModelTag tag) {
    switch (tag) {
        case ModelTag::Pentagonal: return "pentagonal";
        case ModelTag::Hexagonal: return "hexagonal";
        case ModelTag::Cubic: return "cubic";
    }
    throw contract_error("ModelTag: unknown enumerator");
}

void Dataset::validate() const {
    if (rows.empty()) {
        throw contract_error("Dataset: no rows");
    }
    std::set<std::pair<double, double>> seen;
    for (const DataRow& row : rows) {
        if (!seen.insert({row.pressure, row.temperature}).second) {
            throw contract_error("Dataset: duplicate design point (" +
                                 format_g17(row.pressure) + ", " +
                                 format_g17(row.temperature) + ")");
        }
    }
}

std::vector<GridPoint> design_grid(std::pair<double, double> p_bounds,
                                   std::pair<double, double> t_bounds,
                                   std::size_t p_steps, std::size_t t_steps) {
    if (p_steps < 2 || t_steps < 2) {
        throw domain_error("design_grid: need at least 2 steps per axis");
    }
    if (p_bounds.first >= p_bounds.second || t_bounds.first >= t_bounds.second) {
        throw domain_error("design_grid: bounds must be ordered min < max");
    }
    auto coordinate = [](std::pair<double, double> bounds, std::size_t i,
                         std::size_t steps) {
        if (i == 0) return bounds.first;
        if (i == steps - 1) return bounds.second;
        const double fraction = static_cast<double>(i) / static_cast<double>(steps - 1);
        return bounds.first + (bounds.second - bounds.first) * fraction;
    };
    std::vector<GridPoint> grid;
    grid.reserve(p_steps * t_steps);
    for (std::size_t i = 0; i < p_steps; ++i) {
        for (std::size_t j = 0; j < t_steps; ++j) {
            grid.push_back({coordinate(p_bounds, i, p_steps),
                            coordinate(t_bounds, j, t_steps)});
        }
    }
    return grid;
}

namespace {

double to_unit(const FeatureRange& range, double x) {
    return (x - range.min) / (range.max - range.min);
}

double from_unit(const FeatureRange& range, double u) {
    return range.min + u * (range.max - range.min);
}

FeatureRange column_range(const Dataset& dataset, double DataRow::*column,
                          const char* name) {
    FeatureRange range{dataset.rows.front().*column, dataset.rows.front().*column};
    for (const DataRow& row : dataset.rows) {
        range.min = std::min(range.min, row.*column);
        range.max = std::max(range.max, row.*column);
    }
    if (range.max <= range.min) {
        throw degenerate_feature_error(std::string("normalize: constant column '") +
                                       name + "'");
    }
    return range;
}

}  // namespace

double Scaler::to_unit_pressure(double p) const { return to_unit(pressure, p); }
double Scaler::to_unit_temperature(double t) const { return to_unit(temperature, t); }
double Scaler::to_unit_value(double v) const { return to_unit(value, v); }
double Scaler::from_unit_value(double v) const { return from_unit(value, v); }

std::pair<Dataset, Scaler> normalize(const Dataset& dataset) {
    dataset.validate();
    Scaler scaler;
    scaler.pressure = column_range(dataset, &DataRow::pressure, "pressure");
    scaler.temperature = column_range(dataset, &DataRow::temperature, "temperature");
    scaler.value = column_range(dataset, &DataRow::value, "value");

    Dataset normalized = dataset;
    for (DataRow& row : normalized.rows) {
        row.pressure = to_unit(scaler.pressure, row.pressure);
        row.temperature = to_unit(scaler.temperature, row.temperature);
        row.value = to_unit(scaler.value, row.value);
    }
    return {normalized, scaler};
}

Dataset denormalize(const Dataset& dataset, const Scaler& scaler) {
    Dataset restored = dataset;
    for (DataRow& row : restored.rows) {
        row.pressure = from_unit(scaler.pressure, row.pressure);
        row.temperature = from_unit(scaler.temperature, row.temperature);
        row.value = from_unit(scaler.value, row.value);
    }
    return restored;
}

std::string dataset_to_csv(const Dataset& dataset) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const DataRow& row : dataset.rows) {
        out += format_g17(row.pressure);
        out += ',';
        out += format_g17(row.temperature);
        out += ',';
        out += format_g17(row.value);
        out += '\n';
    }
    return out;
}

Dataset dataset_from_csv(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line)) {
        throw io_error("dataset CSV: empty document");
    }
    if (line == std::string(kCsvHeader) + "\r") line.pop_back();
    if (line != kCsvHeader) {
        throw io_error("dataset CSV: expected header '" + std::string(kCsvHeader) +
                       "', found '" + line + "'");
    }
    Dataset dataset;
    std::size_t line_number = 1;
    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto first = line.find(',');
        const auto second = first == std::string::npos
                                ? std::string::npos
                                : line.find(',', first + 1);
        if (first == std::string::npos || second == std::string::npos ||
            line.find(',', second + 1) != std::string::npos) {
            throw io_error("dataset CSV line " + std::to_string(line_number) +
                           ": expected three comma-separated columns");
        }
        DataRow row;
        try {
            row.pressure = parse_double(line.substr(0, first));
            row.temperature = parse_double(line.substr(first + 1, second - first - 1));
            row.value = parse_double(line.substr(second + 1));
        } catch (const config_error& e) {
            throw io_error("dataset CSV line " + std::to_string(line_number) + ": " +
                           e.what());
        }
        dataset.rows.push_back(row);
    }
    dataset.validate();
    return dataset;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset) {
    write_file_atomic(path, dataset_to_csv(dataset));
}

Dataset read_dataset_csv(const std::string& path) {
    return dataset_from_csv(read_file(path));
}

}  // namespace polycell::surrogate
