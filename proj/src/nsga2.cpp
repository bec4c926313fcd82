// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#include "polycell/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polycell/errors.hpp"
#include "polycell/textio.hpp"

namespace polycell::evolve {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double gene_lo(const Bounds& b, std::size_t gene) {
    return gene == 0 ? b.p_min : b.t_min;
}

double gene_hi(const Bounds& b, std::size_t gene) {
    return gene == 0 ? b.p_max : b.t_max;
}

double clip(double x, double lo, double hi) {
    return std::min(std::max(x, lo), hi);
}

}  // namespace

void Bounds::validate() const {
    if (!(p_min < p_max) || !(t_min < t_max)) {
        throw contract_error("Bounds: need min < max on both axes");
    }
}

void GAConfig::validate() const {
    if (population_size < 4 || population_size % 2 != 0) {
        throw contract_error("GAConfig: population size must be even and >= 4");
    }
    if (generations < 1) {
        throw contract_error("GAConfig: generations must be >= 1");
    }
    if (crossover_probability < 0 || crossover_probability > 1 ||
        mutation_probability < 0 || mutation_probability > 1) {
        throw contract_error("GAConfig: probabilities must lie in [0, 1]");
    }
    if (sbx_index <= 0 || mutation_index <= 0) {
        throw contract_error("GAConfig: distribution indices must be positive");
    }
}

Population init_population(const Bounds& bounds, const GAConfig& config, Rng& rng) {
    bounds.validate();
    config.validate();
    Population population(config.population_size);
    for (Individual& ind : population) {
        ind.genes[0] = rng.uniform(bounds.p_min, bounds.p_max);
        ind.genes[1] = rng.uniform(bounds.t_min, bounds.t_max);
    }
    return population;
}

void evaluate(Population& population, const ObjectiveSpec& objectives) {
    if (!objectives.production || !objectives.consumption) {
        throw contract_error("evaluate: both objective evaluators must be set");
    }
    for (std::size_t i = 0; i < population.size(); ++i) {
        Individual& ind = population[i];
        const double pro = objectives.production(ind.genes[0], ind.genes[1]);
        const double cons = objectives.consumption(ind.genes[0], ind.genes[1]);
        if (!std::isfinite(pro) || !std::isfinite(cons)) {
            throw evaluation_error("evaluate: non-finite objective for individual " +
                                   std::to_string(i) + " at (" +
                                   format_g17(ind.genes[0]) + ", " +
                                   format_g17(ind.genes[1]) + ")");
        }
        ind.objectives[0] = -pro;
        ind.objectives[1] = cons;
    }
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw contract_error("dominates: objective vectors must share a nonzero arity");
    }
    bool strictly_better = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<std::vector<double>>& objectives) {
    const std::size_t n = objectives.size();
    if (n == 0) {
        throw contract_error("fast_nondominated_sort: empty population");
    }
    for (const std::vector<double>& row : objectives) {
        if (row.size() != objectives.front().size() || row.empty()) {
            throw contract_error("fast_nondominated_sort: ragged objective matrix");
        }
    }

    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objectives[i], objectives[j])) {
                dominated[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(objectives[j], objectives[i])) {
                dominated[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        std::sort(current.begin(), current.end());
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated[i]) {
                if (--domination_count[j] == 0) next.push_back(j);
            }
        }
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distances(
    const std::vector<std::vector<double>>& objectives,
    const std::vector<std::size_t>& front) {
    if (front.empty()) {
        throw contract_error("crowding_distances: empty front");
    }
    const std::size_t size = front.size();
    std::vector<double> distance(size, 0.0);
    if (size <= 2) {
        std::fill(distance.begin(), distance.end(), kInfinity);
        return distance;
    }

    const std::size_t arity = objectives[front[0]].size();
    std::vector<std::size_t> order(size);
    for (std::size_t m = 0; m < arity; ++m) {
        for (std::size_t i = 0; i < size; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t lhs, std::size_t rhs) {
                             return objectives[front[lhs]][m] < objectives[front[rhs]][m];
                         });
        const double lo = objectives[front[order.front()]][m];
        const double hi = objectives[front[order.back()]][m];
        distance[order.front()] = kInfinity;
        distance[order.back()] = kInfinity;
        const double range = hi - lo;
        if (range <= 0.0) continue;
        for (std::size_t i = 1; i + 1 < size; ++i) {
            const double gap = objectives[front[order[i + 1]]][m] -
                               objectives[front[order[i - 1]]][m];
            distance[order[i]] += gap / range;
        }
    }
    return distance;
}

std::size_t tournament_select(const Population& population, Rng& rng) {
    const std::size_t first = rng.index(population.size());
    const std::size_t second = rng.index(population.size());
    const Individual& a = population[first];
    const Individual& b = population[second];
    if (a.rank != b.rank) return a.rank < b.rank ? first : second;
    if (a.crowding != b.crowding) return a.crowding > b.crowding ? first : second;
    return first;
}

std::pair<Individual, Individual> sbx_crossover(const Individual& parent1,
                                                const Individual& parent2,
                                                const Bounds& bounds,
                                                const GAConfig& config, Rng& rng) {
    Individual child1;
    Individual child2;
    child1.genes = parent1.genes;
    child2.genes = parent2.genes;

    if (rng.uniform01() <= config.crossover_probability) {
        for (std::size_t g = 0; g < 2; ++g) {
            if (rng.uniform01() > 0.5) continue;
            const double u = rng.uniform01();
            const double exponent = 1.0 / (config.sbx_index + 1.0);
            const double beta =
                u <= 0.5 ? std::pow(2.0 * u, exponent)
                         : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
            const double x1 = parent1.genes[g];
            const double x2 = parent2.genes[g];
            child1.genes[g] = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
            child2.genes[g] = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
        }
    }
    for (std::size_t g = 0; g < 2; ++g) {
        child1.genes[g] = clip(child1.genes[g], gene_lo(bounds, g), gene_hi(bounds, g));
        child2.genes[g] = clip(child2.genes[g], gene_lo(bounds, g), gene_hi(bounds, g));
    }
    return {child1, child2};
}

Individual polynomial_mutation(const Individual& individual, const Bounds& bounds,
                               const GAConfig& config, Rng& rng) {
    Individual mutated = individual;
    for (std::size_t g = 0; g < 2; ++g) {
        if (rng.uniform01() > config.mutation_probability) continue;
        const double lo = gene_lo(bounds, g);
        const double hi = gene_hi(bounds, g);
        const double span = hi - lo;
        const double x = mutated.genes[g];
        const double u = rng.uniform01();
        const double exponent = 1.0 / (config.mutation_index + 1.0);
        double delta_q = 0.0;
        if (u <= 0.5) {
            const double delta1 = (x - lo) / span;
            const double val = 2.0 * u + (1.0 - 2.0 * u) *
                                             std::pow(1.0 - delta1, config.mutation_index + 1.0);
            delta_q = std::pow(val, exponent) - 1.0;
        } else {
            const double delta2 = (hi - x) / span;
            const double val = 2.0 * (1.0 - u) +
                               2.0 * (u - 0.5) *
                                   std::pow(1.0 - delta2, config.mutation_index + 1.0);
            delta_q = 1.0 - std::pow(val, exponent);
        }
        mutated.genes[g] = clip(x + delta_q * span, lo, hi);
    }
    return mutated;
}

namespace {

std::vector<std::vector<double>> objective_matrix(const Population& population) {
    std::vector<std::vector<double>> matrix;
    matrix.reserve(population.size());
    for (const Individual& ind : population) {
        matrix.push_back({ind.objectives[0], ind.objectives[1]});
    }
    return matrix;
}

/// (mu+lambda) truncation: fill by front, split the last front by crowding
/// (descending, ties kept in combined-index order).
Population environmental_selection(const Population& combined, std::size_t target) {
    const std::vector<std::vector<double>> objs = objective_matrix(combined);
    const std::vector<std::vector<std::size_t>> fronts = fast_nondominated_sort(objs);

    Population next;
    next.reserve(target);
    for (std::size_t rank = 0; rank < fronts.size() && next.size() < target; ++rank) {
        const std::vector<std::size_t>& front = fronts[rank];
        const std::vector<double> crowd = crowding_distances(objs, front);
        std::vector<std::size_t> positions(front.size());
        for (std::size_t i = 0; i < front.size(); ++i) positions[i] = i;
        if (next.size() + front.size() > target) {
            std::stable_sort(positions.begin(), positions.end(),
                             [&](std::size_t lhs, std::size_t rhs) {
                                 return crowd[lhs] > crowd[rhs];
                             });
            positions.resize(target - next.size());
        }
        for (std::size_t pos : positions) {
            Individual survivor = combined[front[pos]];
            survivor.rank = static_cast<int>(rank);
            survivor.crowding = crowd[pos];
            next.push_back(survivor);
        }
    }
    return next;
}

ParetoPoint to_point(const Individual& ind) {
    ParetoPoint point;
    point.pressure = ind.genes[0];
    point.temperature = ind.genes[1];
    point.production = -ind.objectives[0];
    point.consumption = ind.objectives[1];
    point.ratio = point.production > 0.0 ? point.consumption / point.production : 0.0;
    return point;
}

}  // namespace

ParetoResult run(const ObjectiveSpec& objectives, const Bounds& bounds,
                 const GAConfig& config, const GenerationObserver& observer) {
    bounds.validate();
    config.validate();
    Rng rng(config.seed);

    Population population = init_population(bounds, config, rng);
    evaluate(population, objectives);
    population = environmental_selection(population, population.size());
    if (observer) observer(0, population);

    const std::size_t n = static_cast<std::size_t>(config.population_size);
    for (int generation = 1; generation <= config.generations; ++generation) {
        Population offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            const std::size_t i1 = tournament_select(population, rng);
            const std::size_t i2 = tournament_select(population, rng);
            auto [child1, child2] =
                sbx_crossover(population[i1], population[i2], bounds, config, rng);
            child1 = polynomial_mutation(child1, bounds, config, rng);
            child2 = polynomial_mutation(child2, bounds, config, rng);
            offspring.push_back(child1);
            offspring.push_back(child2);
        }
        evaluate(offspring, objectives);

        Population combined = population;
        combined.insert(combined.end(), offspring.begin(), offspring.end());
        population = environmental_selection(combined, n);
        if (observer) observer(generation, population);
    }

    ParetoResult result;
    for (const Individual& ind : population) {
        if (ind.rank != 0) continue;
        const bool duplicate =
            std::any_of(result.front.begin(), result.front.end(),
                        [&](const ParetoPoint& p) {
                            return p.pressure == ind.genes[0] &&
                                   p.temperature == ind.genes[1];
                        });
        if (!duplicate) result.front.push_back(to_point(ind));
    }
    std::sort(result.front.begin(), result.front.end(),
              [](const ParetoPoint& a, const ParetoPoint& b) {
                  if (a.production != b.production) return a.production > b.production;
                  if (a.pressure != b.pressure) return a.pressure < b.pressure;
                  return a.temperature < b.temperature;
              });
    result.max_production = result.front.front();
    result.min_consumption = *std::min_element(
        result.front.begin(), result.front.end(),
        [](const ParetoPoint& a, const ParetoPoint& b) {
            if (a.consumption != b.consumption) return a.consumption < b.consumption;
            if (a.pressure != b.pressure) return a.pressure < b.pressure;
            return a.temperature < b.temperature;
        });
    return result;
}

FrontReport front_report(const ParetoResult& result) {
    if (result.front.empty()) {
        throw contract_error("front_report: empty Pareto front");
    }
    FrontReport report;
    report.max_production = result.max_production;
    report.min_consumption = result.min_consumption;
    double ratio_sum = 0.0;
    for (const ParetoPoint& point : result.front) ratio_sum += point.ratio;
    report.mean_ratio = ratio_sum / static_cast<double>(result.front.size());
    report.ratio_at_max_production = result.max_production.ratio;
    return report;
}

}  // namespace polycell::evolve
