// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "polycell/errors.hpp"
#include "polycell/rng.hpp"
#include "polycell/textio.hpp"

namespace polycell::mlp {

void MLPConfig::validate() const {
    if (input_dim < 1 || output_dim < 1) {
        throw contract_error("MLPConfig: input and output dimensions must be >= 1");
    }
    for (int width : hidden_layers) {
        if (width < 1) {
            throw contract_error("MLPConfig: hidden layer widths must be >= 1");
        }
    }
}

void TrainConfig::validate() const {
    if (learning_rate <= 0) {
        throw contract_error("TrainConfig: learning rate must be positive");
    }
    if (epochs < 1) {
        throw contract_error("TrainConfig: epochs must be >= 1");
    }
    if (batch_size < 0) {
        throw contract_error("TrainConfig: batch size must be >= 1 (or 0 for full batch)");
    }
}

void MLP::validate() const {
    config.validate();
    const std::size_t expected_layers = config.hidden_layers.size() + 1;
    if (layers.size() != expected_layers) {
        throw contract_error("MLP: layer count does not match config");
    }
    int in = config.input_dim;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const int out = l < config.hidden_layers.size()
                            ? config.hidden_layers[l]
                            : config.output_dim;
        const Layer& layer = layers[l];
        if (layer.inputs != in || layer.outputs != out ||
            layer.weights.size() != static_cast<std::size_t>(in) * out ||
            layer.biases.size() != static_cast<std::size_t>(out)) {
            throw contract_error("MLP: layer " + std::to_string(l) +
                                 " shape does not chain");
        }
        in = out;
    }
}

MLP mlp_init(const MLPConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    MLP net;
    net.config = config;

    std::vector<int> widths;
    widths.push_back(config.input_dim);
    widths.insert(widths.end(), config.hidden_layers.begin(),
                  config.hidden_layers.end());
    widths.push_back(config.output_dim);

    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        Layer layer;
        layer.inputs = widths[l];
        layer.outputs = widths[l + 1];
        layer.weights.resize(static_cast<std::size_t>(layer.inputs) * layer.outputs);
        layer.biases.assign(layer.outputs, 0.0);
        const double limit = std::sqrt(6.0 / layer.inputs);
        const bool rectified = l + 2 < widths.size();
        for (int o = 0; o < layer.outputs; ++o) {
            double* row = layer.weights.data() +
                          static_cast<std::size_t>(o) * layer.inputs;
            while (true) {
                bool any_positive = false;
                for (int i = 0; i < layer.inputs; ++i) {
                    row[i] = rng.uniform(-limit, limit);
                    any_positive = any_positive || row[i] > 0.0;
                }
                if (!rectified || any_positive) break;
            }
        }
        net.layers.push_back(std::move(layer));
    }
    return net;
}

namespace {

void affine(const Layer& layer, const std::vector<double>& x, std::vector<double>& z) {
    z.assign(layer.outputs, 0.0);
    for (int o = 0; o < layer.outputs; ++o) {
        const double* row =
            layer.weights.data() + static_cast<std::size_t>(o) * layer.inputs;
        double sum = layer.biases[o];
        for (int i = 0; i < layer.inputs; ++i) sum += row[i] * x[i];
        z[o] = sum;
    }
}

}  // namespace

std::vector<double> mlp_forward(const MLP& net, const std::vector<double>& input) {
    net.validate();
    if (input.size() != static_cast<std::size_t>(net.config.input_dim)) {
        throw contract_error("mlp_forward: input dimension mismatch");
    }
    std::vector<double> x = input;
    std::vector<double> z;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        affine(net.layers[l], x, z);
        if (l + 1 < net.layers.size()) {
            for (double& v : z) v = std::max(v, 0.0);
        }
        x = z;
    }
    return x;
}

Gradients mlp_gradients(const MLP& net, const Batch& batch) {
    net.validate();
    if (batch.empty()) {
        throw domain_error("mlp_gradients: empty batch");
    }

    Gradients grads;
    grads.layers.reserve(net.layers.size());
    for (const Layer& layer : net.layers) {
        Layer g;
        g.inputs = layer.inputs;
        g.outputs = layer.outputs;
        g.weights.assign(layer.weights.size(), 0.0);
        g.biases.assign(layer.biases.size(), 0.0);
        grads.layers.push_back(std::move(g));
    }

    const std::size_t n_layers = net.layers.size();
    const double denom =
        static_cast<double>(batch.size()) * net.config.output_dim;
    std::vector<std::vector<double>> activations(n_layers + 1);
    std::vector<std::vector<double>> pre(n_layers);
    double loss = 0.0;

    for (const Sample& sample : batch) {
        if (sample.input.size() != static_cast<std::size_t>(net.config.input_dim) ||
            sample.target.size() != static_cast<std::size_t>(net.config.output_dim)) {
            throw contract_error("mlp_gradients: sample dimension mismatch");
        }
        activations[0] = sample.input;
        for (std::size_t l = 0; l < n_layers; ++l) {
            affine(net.layers[l], activations[l], pre[l]);
            activations[l + 1] = pre[l];
            if (l + 1 < n_layers) {
                for (double& v : activations[l + 1]) v = std::max(v, 0.0);
            }
        }

        std::vector<double> delta(net.config.output_dim);
        for (int k = 0; k < net.config.output_dim; ++k) {
            const double err = activations[n_layers][k] - sample.target[k];
            loss += err * err / denom;
            delta[k] = 2.0 * err / denom;
        }

        for (std::size_t l = n_layers; l-- > 0;) {
            Layer& g = grads.layers[l];
            const Layer& layer = net.layers[l];
            for (int o = 0; o < layer.outputs; ++o) {
                g.biases[o] += delta[o];
                double* grow =
                    g.weights.data() + static_cast<std::size_t>(o) * layer.inputs;
                for (int i = 0; i < layer.inputs; ++i) {
                    grow[i] += delta[o] * activations[l][i];
                }
            }
            if (l == 0) break;
            std::vector<double> prev_delta(layer.inputs, 0.0);
            for (int i = 0; i < layer.inputs; ++i) {
                double sum = 0.0;
                for (int o = 0; o < layer.outputs; ++o) {
                    sum += layer.weights[static_cast<std::size_t>(o) * layer.inputs + i] *
                           delta[o];
                }
                prev_delta[i] = pre[l - 1][i] > 0.0 ? sum : 0.0;
            }
            delta = std::move(prev_delta);
        }
    }

    grads.loss = loss;
    return grads;
}

namespace {

Batch dataset_to_batch(const surrogate::Dataset& dataset) {
    Batch batch;
    batch.reserve(dataset.rows.size());
    for (const surrogate::DataRow& row : dataset.rows) {
        batch.push_back({{row.pressure, row.temperature}, {row.value}});
    }
    return batch;
}

struct AdamState {
    std::vector<Layer> m;
    std::vector<Layer> v;
    long step = 0;
};

AdamState make_adam_state(const MLP& net) {
    AdamState state;
    for (const Layer& layer : net.layers) {
        Layer zero;
        zero.inputs = layer.inputs;
        zero.outputs = layer.outputs;
        zero.weights.assign(layer.weights.size(), 0.0);
        zero.biases.assign(layer.biases.size(), 0.0);
        state.m.push_back(zero);
        state.v.push_back(zero);
    }
    return state;
}

void apply_update(MLP& net, const Gradients& grads, const TrainConfig& config,
                  AdamState& adam) {
    constexpr double beta1 = 0.9;
    constexpr double beta2 = 0.999;
    constexpr double eps = 1e-8;

    if (config.optimizer == Optimizer::PlainGradientDescent) {
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            for (std::size_t i = 0; i < net.layers[l].weights.size(); ++i) {
                net.layers[l].weights[i] -= config.learning_rate * grads.layers[l].weights[i];
            }
            for (std::size_t i = 0; i < net.layers[l].biases.size(); ++i) {
                net.layers[l].biases[i] -= config.learning_rate * grads.layers[l].biases[i];
            }
        }
        return;
    }

    ++adam.step;
    const double corr1 = 1.0 - std::pow(beta1, static_cast<double>(adam.step));
    const double corr2 = 1.0 - std::pow(beta2, static_cast<double>(adam.step));
    auto update = [&](double& theta, double& m, double& v, double g) {
        m = beta1 * m + (1.0 - beta1) * g;
        v = beta2 * v + (1.0 - beta2) * g * g;
        const double m_hat = m / corr1;
        const double v_hat = v / corr2;
        theta -= config.learning_rate * m_hat / (std::sqrt(v_hat) + eps);
    };
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t i = 0; i < net.layers[l].weights.size(); ++i) {
            update(net.layers[l].weights[i], adam.m[l].weights[i], adam.v[l].weights[i],
                   grads.layers[l].weights[i]);
        }
        for (std::size_t i = 0; i < net.layers[l].biases.size(); ++i) {
            update(net.layers[l].biases[i], adam.m[l].biases[i], adam.v[l].biases[i],
                   grads.layers[l].biases[i]);
        }
    }
}

}  // namespace

TrainResult mlp_train(const MLP& net, const surrogate::Dataset& dataset,
                      const TrainConfig& config) {
    net.validate();
    config.validate();
    dataset.validate();
    if (net.config.input_dim != 2 || net.config.output_dim != 1) {
        throw contract_error("mlp_train: dataset training expects a 2-input, "
                             "1-output network");
    }
    const std::size_t n = dataset.rows.size();
    const std::size_t batch_size =
        config.batch_size == 0 ? n : static_cast<std::size_t>(config.batch_size);
    if (batch_size < 1 || batch_size > n) {
        throw contract_error("mlp_train: batch size outside [1, dataset size]");
    }

    const Batch full = dataset_to_batch(dataset);
    TrainResult result;
    result.net = net;
    result.loss_history.reserve(config.epochs);
    AdamState adam = make_adam_state(result.net);
    Rng rng(config.seed);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_loss = 0.0;
        if (batch_size == n) {
            const Gradients grads = mlp_gradients(result.net, full);
            apply_update(result.net, grads, config, adam);
            epoch_loss = grads.loss;
        } else {
            for (std::size_t i = n - 1; i > 0; --i) {
                std::swap(order[i], order[rng.index(i + 1)]);
            }
            for (std::size_t start = 0; start < n; start += batch_size) {
                const std::size_t stop = std::min(start + batch_size, n);
                Batch minibatch;
                minibatch.reserve(stop - start);
                for (std::size_t i = start; i < stop; ++i) {
                    minibatch.push_back(full[order[i]]);
                }
                const Gradients grads = mlp_gradients(result.net, minibatch);
                apply_update(result.net, grads, config, adam);
                epoch_loss += grads.loss * static_cast<double>(stop - start) /
                              static_cast<double>(n);
            }
        }
        if (!std::isfinite(epoch_loss) || epoch_loss > 1e6) {
            throw divergence_error(epoch, "mlp_train: loss " +
                                              format_g17(epoch_loss) +
                                              " diverged at epoch " +
                                              std::to_string(epoch));
        }
        result.loss_history.push_back(epoch_loss);
    }
    return result;
}

double predict(const MLP& net, double pressure_atm, double temperature_c) {
    const std::vector<double> input = {net.scaler.to_unit_pressure(pressure_atm),
                                       net.scaler.to_unit_temperature(temperature_c)};
    return net.scaler.from_unit_value(mlp_forward(net, input)[0]);
}

namespace {

constexpr const char* kModelFormat = "polycell-mlp-v1";

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_g17(values[i]);
    }
    return out;
}

std::vector<double> split_doubles(const std::string& text) {
    std::vector<double> values;
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, ',')) {
        values.push_back(parse_double(token));
    }
    return values;
}

}  // namespace

std::string serialize_mlp(const MLP& net) {
    net.validate();
    KvDocument doc;
    doc.set("format", kModelFormat);
    doc.set("input_dim", static_cast<std::uint64_t>(net.config.input_dim));
    std::string widths;
    for (std::size_t i = 0; i < net.config.hidden_layers.size(); ++i) {
        if (i > 0) widths += ',';
        widths += std::to_string(net.config.hidden_layers[i]);
    }
    doc.set("hidden_layers", widths);
    doc.set("output_dim", static_cast<std::uint64_t>(net.config.output_dim));
    doc.set("scaler.pressure.min", net.scaler.pressure.min);
    doc.set("scaler.pressure.max", net.scaler.pressure.max);
    doc.set("scaler.temperature.min", net.scaler.temperature.min);
    doc.set("scaler.temperature.max", net.scaler.temperature.max);
    doc.set("scaler.value.min", net.scaler.value.min);
    doc.set("scaler.value.max", net.scaler.value.max);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const std::string prefix = "layer" + std::to_string(l);
        doc.set(prefix + ".weights", join_doubles(net.layers[l].weights));
        doc.set(prefix + ".biases", join_doubles(net.layers[l].biases));
    }
    return doc.serialize();
}

MLP deserialize_mlp(const std::string& text) {
    KvDocument doc = KvDocument::parse(text);
    auto require = [&](const std::string& key) -> const std::string& {
        const std::string* value = doc.find(key);
        if (value == nullptr) {
            throw io_error("model file: missing key '" + key + "'");
        }
        return *value;
    };
    if (require("format") != kModelFormat) {
        throw io_error("model file: unsupported format tag (expected " +
                       std::string(kModelFormat) + ")");
    }

    MLP net;
    net.config.input_dim = static_cast<int>(parse_u64(require("input_dim")));
    net.config.output_dim = static_cast<int>(parse_u64(require("output_dim")));
    net.config.hidden_layers.clear();
    const std::string& widths = require("hidden_layers");
    if (!widths.empty()) {
        std::string token;
        std::istringstream stream(widths);
        while (std::getline(stream, token, ',')) {
            net.config.hidden_layers.push_back(static_cast<int>(parse_u64(token)));
        }
    }
    net.scaler.pressure = {parse_double(require("scaler.pressure.min")),
                           parse_double(require("scaler.pressure.max"))};
    net.scaler.temperature = {parse_double(require("scaler.temperature.min")),
                              parse_double(require("scaler.temperature.max"))};
    net.scaler.value = {parse_double(require("scaler.value.min")),
                        parse_double(require("scaler.value.max"))};

    std::vector<int> widths_chain;
    widths_chain.push_back(net.config.input_dim);
    widths_chain.insert(widths_chain.end(), net.config.hidden_layers.begin(),
                        net.config.hidden_layers.end());
    widths_chain.push_back(net.config.output_dim);
    for (std::size_t l = 0; l + 1 < widths_chain.size(); ++l) {
        Layer layer;
        layer.inputs = widths_chain[l];
        layer.outputs = widths_chain[l + 1];
        const std::string prefix = "layer" + std::to_string(l);
        layer.weights = split_doubles(require(prefix + ".weights"));
        layer.biases = split_doubles(require(prefix + ".biases"));
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

void save_mlp(const std::string& path, const MLP& net) {
    write_file_atomic(path, serialize_mlp(net));
}

MLP load_mlp(const std::string& path) {
    return deserialize_mlp(read_file(path));
}

}  // namespace polycell::mlp
