// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0
//
// Real-coded NSGA-II over two bounded design variables. All randomness comes
// from one seeded generator in a documented draw order, so runs are
// bit-reproducible for a fixed seed.

#ifndef POLYCELL_NSGA2_HPP
#define POLYCELL_NSGA2_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "polycell/rng.hpp"

namespace polycell::evolve {

struct Bounds {
    double p_min = 1.0;
    double p_max = 5.0;
    double t_min = 50.0;
    double t_max = 90.0;

    void validate() const;
};

struct Individual {
    std::array<double, 2> genes{0.0, 0.0};       // (P in atm, T in Celsius)
    std::array<double, 2> objectives{0.0, 0.0};  // minimization sense
    int rank = 0;
    double crowding = 0.0;
};

using Population = std::vector<Individual>;

struct GAConfig {
    int population_size = 200;
    int generations = 200;
    std::uint64_t seed = 1;
    double crossover_probability = 0.9;
    double sbx_index = 15.0;
    double mutation_probability = 0.5;  // 1 / number of design variables
    double mutation_index = 20.0;

    void validate() const;
};

/// The two evaluators in engineering sense: production is maximized,
/// consumption minimized. Internally production is negated so both
/// objectives are minimized.
struct ObjectiveSpec {
    std::function<double(double, double)> production;
    std::function<double(double, double)> consumption;
};

struct ParetoPoint {
    double pressure = 0.0;
    double temperature = 0.0;
    double production = 0.0;   // W, engineering sign
    double consumption = 0.0;  // W
    double ratio = 0.0;        // consumption / production; 0 when production <= 0
};

struct ParetoResult {
    /// Final nondominated set, duplicates by gene pair collapsed, sorted by
    /// descending production.
    std::vector<ParetoPoint> front;
    ParetoPoint max_production;
    ParetoPoint min_consumption;
};

struct FrontReport {
    ParetoPoint max_production;
    ParetoPoint min_consumption;
    double mean_ratio = 0.0;
    double ratio_at_max_production = 0.0;
};

/// population_size individuals with genes uniform within bounds; draw order
/// is P then T per individual.
Population init_population(const Bounds& bounds, const GAConfig& config, Rng& rng);

/// Sets objectives to (-production, +consumption). Non-finite evaluator
/// output raises evaluation_error naming the individual.
void evaluate(Population& population, const ObjectiveSpec& objectives);

/// Strict Pareto dominance, minimization sense. Arity mismatch raises
/// contract_error.
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

/// Fronts as index lists over an objective matrix of any objective count;
/// front 0 is the nondominated set and fronts partition the population.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<std::vector<double>>& objectives);

/// Crowding distances for one front: per objective, boundary members get
/// infinity and interior members accumulate the normalized neighbor gap.
/// A zero objective range contributes nothing for that objective.
std::vector<double> crowding_distances(
    const std::vector<std::vector<double>>& objectives,
    const std::vector<std::size_t>& front);

/// Binary tournament by crowded comparison: lower rank wins, then larger
/// crowding, then the first-drawn candidate. Two index draws per call.
std::size_t tournament_select(const Population& population, Rng& rng);

/// Simulated binary crossover. Draws: one application draw; when it succeeds,
/// per gene one 50% gate draw and, when the gate passes, one spread draw.
/// Children are mean-preserving before clipping to bounds.
std::pair<Individual, Individual> sbx_crossover(const Individual& parent1,
                                                const Individual& parent2,
                                                const Bounds& bounds,
                                                const GAConfig& config, Rng& rng);

/// Bounded polynomial mutation; per gene one application draw and, when it
/// succeeds, one shape draw.
Individual polynomial_mutation(const Individual& individual, const Bounds& bounds,
                               const GAConfig& config, Rng& rng);

/// Called after each generation's environmental selection with the surviving
/// population (ranks and crowding set).
using GenerationObserver =
    std::function<void(int generation, const Population& population)>;

/// Full elitist loop: init, evaluate, then per generation tournament
/// selection, SBX, polynomial mutation, offspring evaluation, and (mu+lambda)
/// truncation by rank then crowding (ties by combined-population index).
/// Per offspring pair the draw order is: four tournament index draws, the
/// crossover draws, then mutation draws for each child in order.
ParetoResult run(const ObjectiveSpec& objectives, const Bounds& bounds,
                 const GAConfig& config,
                 const GenerationObserver& observer = nullptr);

/// Extremes (ties broken by lower pressure, then lower temperature), mean
/// front ratio, and the ratio at the max-production point.
FrontReport front_report(const ParetoResult& result);

}  // namespace polycell::evolve

#endif
