// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0
//
// Minimal feed-forward network: rectified-linear hidden layers, identity
// output, mean-squared-error loss, trained by plain gradient descent or
// adaptive moments. Everything is deterministic for a fixed seed.

#ifndef POLYCELL_MLP_HPP
#define POLYCELL_MLP_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polycell/dataset.hpp"

namespace polycell::mlp {

struct MLPConfig {
    int input_dim = 2;
    std::vector<int> hidden_layers = {10, 10};
    int output_dim = 1;

    void validate() const;
};

enum class Optimizer { PlainGradientDescent, AdaptiveMoments };

struct TrainConfig {
    double learning_rate = 1e-2;
    int epochs = 5000;
    int batch_size = 0;  // 0 selects full batch; otherwise 1 <= batch_size <= rows
    std::uint64_t seed = 1;
    Optimizer optimizer = Optimizer::AdaptiveMoments;

    void validate() const;
};

struct Layer {
    int inputs = 0;
    int outputs = 0;
    std::vector<double> weights;  // row-major [outputs][inputs]
    std::vector<double> biases;   // [outputs]
};

struct MLP {
    MLPConfig config;
    std::vector<Layer> layers;
    surrogate::Scaler scaler;  // identity until a trained scaler is attached

    void validate() const;
};

/// Seeded fan-in-scaled uniform initialization: weights from
/// U(-sqrt(6/fan_in), +sqrt(6/fan_in)), biases zero. A hidden unit whose
/// incoming weights are all non-positive would never activate on the
/// non-negative normalized inputs, so such rows are redrawn from the same
/// stream until at least one weight is positive. Draw order: layer by layer,
/// unit by unit, weight by weight.
MLP mlp_init(const MLPConfig& config, std::uint64_t seed);

/// Affine-rectify chain over hidden layers, affine output.
std::vector<double> mlp_forward(const MLP& net, const std::vector<double>& input);

struct Sample {
    std::vector<double> input;
    std::vector<double> target;
};
using Batch = std::vector<Sample>;

/// Parameter gradients (same shapes as the layers) of the batch-mean squared
/// error, plus the loss itself.
struct Gradients {
    std::vector<Layer> layers;
    double loss = 0.0;
};
Gradients mlp_gradients(const MLP& net, const Batch& batch);

struct TrainResult {
    MLP net;
    std::vector<double> loss_history;  // one entry per epoch
};

/// Trains on a normalized dataset (inputs pressure/temperature, target value).
/// Full-batch runs take one step per epoch in row order; mini-batch runs
/// reshuffle each epoch with the seeded generator. Raises divergence_error
/// when the epoch loss exceeds 1e6 or stops being finite.
TrainResult mlp_train(const MLP& net, const surrogate::Dataset& dataset,
                      const TrainConfig& config);

/// Denormalizing convenience: maps (atm, Celsius) through the attached scaler,
/// runs the network, and maps the output back to W.
double predict(const MLP& net, double pressure_atm, double temperature_c);

/// Structured text persistence, version-tagged polycell-mlp-v1. Weights are
/// written row-major with 17 significant digits, so save/load round-trips
/// bit-exactly.
std::string serialize_mlp(const MLP& net);
MLP deserialize_mlp(const std::string& text);
void save_mlp(const std::string& path, const MLP& net);
MLP load_mlp(const std::string& path);

}  // namespace polycell::mlp

#endif
