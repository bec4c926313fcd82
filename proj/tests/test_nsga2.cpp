// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "polycell/errors.hpp"
#include "polycell/nsga2.hpp"
#include "polycell/quadratic.hpp"
#include "polycell/rng.hpp"

using namespace polycell;
using namespace polycell::evolve;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Peel non-dominated layers one at a time: the O(n^2) reference
/// classification the fast sort must reproduce.
std::vector<int> brute_force_ranks(const std::vector<std::vector<double>>& objectives) {
    std::vector<int> ranks(objectives.size(), -1);
    int rank = 0;
    std::size_t assigned = 0;
    while (assigned < objectives.size()) {
        std::vector<std::size_t> layer;
        for (std::size_t i = 0; i < objectives.size(); ++i) {
            if (ranks[i] != -1) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < objectives.size() && !dominated; ++j) {
                dominated = ranks[j] == -1 && j != i
                            && dominates(objectives[j], objectives[i]);
            }
            if (!dominated) layer.push_back(i);
        }
        for (std::size_t i : layer) ranks[i] = rank;
        assigned += layer.size();
        ++rank;
    }
    return ranks;
}

ObjectiveSpec paper_pentagonal_spec() {
    const surrogate::QuadraticSurface production = surrogate::paper_surface(
        surrogate::ModelTag::Pentagonal, surrogate::ObjectiveTag::Production);
    const surrogate::QuadraticSurface consumption = surrogate::paper_surface(
        surrogate::ModelTag::Pentagonal, surrogate::ObjectiveTag::Consumption);
    ObjectiveSpec spec;
    spec.production = [production](double p, double t) {
        return surrogate::evaluate_surface(production, p, t);
    };
    spec.consumption = [consumption](double p, double t) {
        return surrogate::evaluate_surface(consumption, p, t);
    };
    return spec;
}

}  // namespace

TEST_CASE("seeded generator basics") {
    Rng a(123);
    Rng b(123);
    Rng c(124);
    bool equal = true;
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform01();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        equal = equal && x == b.uniform01();
        differs = differs || x != c.uniform01();
    }
    CHECK(equal);
    CHECK(differs);
    Rng d(5);
    for (int i = 0; i < 100; ++i) CHECK(d.index(7) < 7);
}

TEST_CASE("strict Pareto dominance") {
    CHECK(dominates({1.0, 1.0}, {2.0, 2.0}));
    CHECK(dominates({1.0, 2.0}, {2.0, 2.0}));
    CHECK_FALSE(dominates({2.0, 2.0}, {2.0, 2.0}));
    CHECK_FALSE(dominates({1.0, 3.0}, {2.0, 2.0}));
    CHECK_FALSE(dominates({2.0, 2.0}, {1.0, 3.0}));
    CHECK(dominates({1.0, 2.0, 3.0}, {1.0, 2.0, 4.0}));
    CHECK_THROWS_AS(dominates({1.0}, {1.0, 2.0}), contract_error);
    CHECK_THROWS_AS(dominates({}, {}), contract_error);
}

TEST_CASE("fast sort reproduces the documented example") {
    const std::vector<std::vector<double>> objectives = {
        {1.0, 3.0}, {2.0, 2.0}, {3.0, 1.0}, {3.0, 3.0}};
    const auto fronts = fast_nondominated_sort(objectives);
    REQUIRE(fronts.size() == 2);
    CHECK(fronts[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(fronts[1] == std::vector<std::size_t>{3});
}

TEST_CASE("fast sort agrees with brute force on random populations") {
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 50 + rng.index(150);
        const std::size_t m = 2 + rng.index(2);
        std::vector<std::vector<double>> objectives(n, std::vector<double>(m));
        for (auto& row : objectives) {
            for (double& v : row) v = std::floor(rng.uniform(0.0, 8.0));
        }
        const auto fronts = fast_nondominated_sort(objectives);
        const auto expected = brute_force_ranks(objectives);

        std::vector<int> actual(n, -1);
        std::size_t covered = 0;
        for (std::size_t f = 0; f < fronts.size(); ++f) {
            for (std::size_t i : fronts[f]) {
                CHECK(actual[i] == -1);
                actual[i] = static_cast<int>(f);
                ++covered;
            }
        }
        CHECK(covered == n);
        CHECK(actual == expected);
    }
}

TEST_CASE("fast sort front 0 is exactly the non-dominated set") {
    const std::vector<std::vector<double>> objectives = {
        {5.0, 1.0}, {1.0, 5.0}, {3.0, 3.0}, {6.0, 6.0}, {3.0, 3.0}};
    const auto fronts = fast_nondominated_sort(objectives);
    CHECK(fronts[0] == std::vector<std::size_t>{0, 1, 2, 4});
    CHECK(fronts[1] == std::vector<std::size_t>{3});
}

TEST_CASE("crowding distance hand example") {
    const std::vector<std::vector<double>> objectives = {
        {1.0, 3.0}, {2.0, 2.0}, {3.0, 1.0}};
    const auto distances = crowding_distances(objectives, {0, 1, 2});
    REQUIRE(distances.size() == 3);
    CHECK(distances[0] == kInf);
    CHECK(distances[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(distances[2] == kInf);
}

TEST_CASE("crowding distance of small fronts is infinite") {
    const std::vector<std::vector<double>> objectives = {{1.0, 3.0}, {2.0, 2.0}};
    const auto two = crowding_distances(objectives, {0, 1});
    CHECK(two[0] == kInf);
    CHECK(two[1] == kInf);
    const auto one = crowding_distances(objectives, {1});
    CHECK(one[0] == kInf);
}

TEST_CASE("crowding distance skips zero-range objectives") {
    const std::vector<std::vector<double>> objectives = {
        {1.0, 7.0}, {2.0, 7.0}, {4.0, 7.0}};
    const auto distances = crowding_distances(objectives, {0, 1, 2});
    CHECK(distances[0] == kInf);
    // Only objective 0 contributes: (4 - 1)/3 = 1.
    CHECK(distances[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(distances[2] == kInf);
}

TEST_CASE("tournament selection follows the documented draw protocol") {
    Population population(6);
    for (std::size_t i = 0; i < population.size(); ++i) {
        population[i].rank = static_cast<int>(i / 2);
        population[i].crowding = static_cast<double>(i % 3);
    }
    Rng actual_rng(77);
    Rng mirror_rng(77);
    for (int round = 0; round < 500; ++round) {
        const std::size_t winner = tournament_select(population, actual_rng);
        const std::size_t a = mirror_rng.index(population.size());
        const std::size_t b = mirror_rng.index(population.size());
        std::size_t expected = a;
        if (population[b].rank < population[a].rank) {
            expected = b;
        } else if (population[b].rank == population[a].rank
                   && population[b].crowding > population[a].crowding) {
            expected = b;
        }
        CHECK(winner == expected);
    }
}

TEST_CASE("tournament selection prefers rank then crowding") {
    Population population(2);
    population[0].rank = 0;
    population[1].rank = 1;
    Rng rng(3);
    int zero_wins = 0;
    for (int i = 0; i < 400; ++i) {
        zero_wins += tournament_select(population, rng) == 0 ? 1 : 0;
    }
    CHECK(zero_wins > 250);  // loses only on a double draw of index 1

    population[1].rank = 0;
    population[0].crowding = 9.0;
    population[1].crowding = 1.0;
    Rng rng2(3);
    zero_wins = 0;
    for (int i = 0; i < 400; ++i) {
        zero_wins += tournament_select(population, rng2) == 0 ? 1 : 0;
    }
    CHECK(zero_wins > 250);
}

TEST_CASE("SBX children preserve the parent mean before clipping") {
    Bounds bounds;
    GAConfig config;
    config.crossover_probability = 1.0;
    Individual p1;
    p1.genes = {2.0, 60.0};
    Individual p2;
    p2.genes = {4.0, 80.0};
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [c1, c2] = sbx_crossover(p1, p2, bounds, config, rng);
        for (int g = 0; g < 2; ++g) {
            CHECK(std::fabs((c1.genes[g] + c2.genes[g])
                            - (p1.genes[g] + p2.genes[g])) <= 1e-9);
            CHECK(c1.genes[g] >= (g == 0 ? bounds.p_min : bounds.t_min));
            CHECK(c1.genes[g] <= (g == 0 ? bounds.p_max : bounds.t_max));
            CHECK(c2.genes[g] >= (g == 0 ? bounds.p_min : bounds.t_min));
            CHECK(c2.genes[g] <= (g == 0 ? bounds.t_max : bounds.t_max));
        }
    }
}

TEST_CASE("SBX respects bounds for edge parents") {
    Bounds bounds;
    GAConfig config;
    config.crossover_probability = 1.0;
    config.sbx_index = 2.0;  // wide spread distribution
    Individual p1;
    p1.genes = {1.0001, 50.0001};
    Individual p2;
    p2.genes = {4.9999, 89.9999};
    Rng rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto [c1, c2] = sbx_crossover(p1, p2, bounds, config, rng);
        for (const Individual& child : {c1, c2}) {
            CHECK(child.genes[0] >= bounds.p_min);
            CHECK(child.genes[0] <= bounds.p_max);
            CHECK(child.genes[1] >= bounds.t_min);
            CHECK(child.genes[1] <= bounds.t_max);
        }
    }
}

TEST_CASE("SBX with zero probability copies the parents") {
    Bounds bounds;
    GAConfig config;
    config.crossover_probability = 0.0;
    Individual p1;
    p1.genes = {1.5, 55.0};
    Individual p2;
    p2.genes = {4.5, 85.0};
    Rng rng(1);
    const auto [c1, c2] = sbx_crossover(p1, p2, bounds, config, rng);
    CHECK(c1.genes == p1.genes);
    CHECK(c2.genes == p2.genes);
}

TEST_CASE("polynomial mutation stays within bounds") {
    Bounds bounds;
    GAConfig config;
    config.mutation_probability = 1.0;
    Rng rng(17);
    Individual x;
    for (int trial = 0; trial < 5000; ++trial) {
        x.genes = {rng.uniform(bounds.p_min, bounds.p_max),
                   rng.uniform(bounds.t_min, bounds.t_max)};
        const Individual mutated = polynomial_mutation(x, bounds, config, rng);
        CHECK(mutated.genes[0] >= bounds.p_min);
        CHECK(mutated.genes[0] <= bounds.p_max);
        CHECK(mutated.genes[1] >= bounds.t_min);
        CHECK(mutated.genes[1] <= bounds.t_max);
    }
}

TEST_CASE("polynomial mutation can move off the lower bound") {
    Bounds bounds;
    GAConfig config;
    config.mutation_probability = 1.0;
    Rng rng(19);
    Individual x;
    x.genes = {bounds.p_min, bounds.t_min};
    bool moved_p = false;
    bool moved_t = false;
    for (int trial = 0; trial < 200; ++trial) {
        const Individual mutated = polynomial_mutation(x, bounds, config, rng);
        CHECK(mutated.genes[0] >= bounds.p_min);
        CHECK(mutated.genes[1] >= bounds.t_min);
        moved_p = moved_p || mutated.genes[0] > bounds.p_min;
        moved_t = moved_t || mutated.genes[1] > bounds.t_min;
    }
    CHECK(moved_p);
    CHECK(moved_t);
}

TEST_CASE("polynomial mutation with zero probability is the identity") {
    Bounds bounds;
    GAConfig config;
    config.mutation_probability = 0.0;
    Individual x;
    x.genes = {2.5, 66.0};
    Rng rng(1);
    const Individual same = polynomial_mutation(x, bounds, config, rng);
    CHECK(same.genes == x.genes);
}

TEST_CASE("initial population is seeded uniform within bounds, P then T") {
    Bounds bounds;
    GAConfig config;
    config.population_size = 30;
    Rng rng(9);
    const Population population = init_population(bounds, config, rng);
    REQUIRE(population.size() == 30);

    Rng mirror(9);
    for (const Individual& ind : population) {
        CHECK(ind.genes[0] == mirror.uniform(bounds.p_min, bounds.p_max));
        CHECK(ind.genes[1] == mirror.uniform(bounds.t_min, bounds.t_max));
    }
}

TEST_CASE("evaluate negates production and records consumption") {
    Population population(1);
    population[0].genes = {1.0, 77.645};
    evaluate(population, paper_pentagonal_spec());
    CHECK(population[0].objectives[0] == doctest::Approx(-5.797e-5).epsilon(2e-4));
    CHECK(population[0].objectives[1] == doctest::Approx(1.4506e-7).epsilon(2e-4));
}

TEST_CASE("evaluate raises evaluation_error naming the individual") {
    ObjectiveSpec spec;
    spec.production = [](double p, double) {
        return p > 3.0 ? std::numeric_limits<double>::quiet_NaN() : p;
    };
    spec.consumption = [](double, double) { return 1.0; };
    Population population(2);
    population[0].genes = {2.0, 60.0};
    population[1].genes = {4.0, 60.0};
    try {
        evaluate(population, spec);
        FAIL("expected evaluation_error");
    } catch (const evaluation_error& e) {
        const std::string message = e.what();
        CHECK(message.find("1") != std::string::npos);
        CHECK(message.find("4") != std::string::npos);
    }
}

TEST_CASE("GA configuration validation") {
    GAConfig config;
    CHECK_NOTHROW(config.validate());
    config.population_size = 5;
    CHECK_THROWS_AS(config.validate(), contract_error);
    config.population_size = 2;
    CHECK_THROWS_AS(config.validate(), contract_error);
    config = GAConfig{};
    config.generations = 0;
    CHECK_THROWS_AS(config.validate(), contract_error);
    config = GAConfig{};
    config.crossover_probability = 1.5;
    CHECK_THROWS_AS(config.validate(), contract_error);
    config = GAConfig{};
    config.mutation_probability = -0.1;
    CHECK_THROWS_AS(config.validate(), contract_error);
    config = GAConfig{};
    config.sbx_index = 0.0;
    CHECK_THROWS_AS(config.validate(), contract_error);

    Bounds bad;
    bad.p_min = 5.0;
    bad.p_max = 1.0;
    CHECK_THROWS_AS(bad.validate(), contract_error);
}

TEST_CASE("run is deterministic for a fixed seed") {
    GAConfig config;
    config.population_size = 20;
    config.generations = 15;
    config.seed = 4;
    const ParetoResult a = run(paper_pentagonal_spec(), Bounds{}, config);
    const ParetoResult b = run(paper_pentagonal_spec(), Bounds{}, config);

    REQUIRE(a.front.size() == b.front.size());
    for (std::size_t i = 0; i < a.front.size(); ++i) {
        CHECK(a.front[i].pressure == b.front[i].pressure);
        CHECK(a.front[i].temperature == b.front[i].temperature);
        CHECK(a.front[i].production == b.front[i].production);
        CHECK(a.front[i].consumption == b.front[i].consumption);
    }

    GAConfig other = config;
    other.seed = 5;
    const ParetoResult c = run(paper_pentagonal_spec(), Bounds{}, other);
    bool differs = c.front.size() != a.front.size();
    for (std::size_t i = 0; !differs && i < a.front.size(); ++i) {
        differs = a.front[i].pressure != c.front[i].pressure
                  || a.front[i].temperature != c.front[i].temperature;
    }
    CHECK(differs);
}

TEST_CASE("elitism never loses the best production point") {
    GAConfig config;
    config.population_size = 24;
    config.generations = 30;
    std::vector<double> best_per_generation;
    run(paper_pentagonal_spec(), Bounds{}, config,
        [&](int, const Population& population) {
            double best = -kInf;
            for (const Individual& ind : population) {
                best = std::max(best, -ind.objectives[0]);
            }
            best_per_generation.push_back(best);
        });
    REQUIRE(best_per_generation.size() == 31);  // initial ranking + 30 generations
    for (std::size_t i = 1; i < best_per_generation.size(); ++i) {
        CHECK(best_per_generation[i] >= best_per_generation[i - 1]);
    }
}

TEST_CASE("power-of-two objective scaling leaves the search identical") {
    const ObjectiveSpec base = paper_pentagonal_spec();
    ObjectiveSpec scaled;
    scaled.production = [base](double p, double t) {
        return 4.0 * base.production(p, t);
    };
    scaled.consumption = [base](double p, double t) {
        return 0.25 * base.consumption(p, t);
    };
    GAConfig config;
    config.population_size = 20;
    config.generations = 12;
    const ParetoResult a = run(base, Bounds{}, config);
    const ParetoResult b = run(scaled, Bounds{}, config);
    REQUIRE(a.front.size() == b.front.size());
    for (std::size_t i = 0; i < a.front.size(); ++i) {
        CHECK(a.front[i].pressure == b.front[i].pressure);
        CHECK(a.front[i].temperature == b.front[i].temperature);
    }
}

TEST_CASE("final front is sorted, deduplicated, and mutually non-dominated") {
    GAConfig config;
    config.population_size = 40;
    config.generations = 25;
    const ParetoResult result = run(paper_pentagonal_spec(), Bounds{}, config);
    REQUIRE(!result.front.empty());

    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < result.front.size(); ++i) {
        const ParetoPoint& point = result.front[i];
        CHECK(point.pressure >= Bounds{}.p_min);
        CHECK(point.pressure <= Bounds{}.p_max);
        CHECK(point.temperature >= Bounds{}.t_min);
        CHECK(point.temperature <= Bounds{}.t_max);
        CHECK(seen.insert({point.pressure, point.temperature}).second);
        if (i > 0) CHECK(point.production <= result.front[i - 1].production);
    }
    for (const ParetoPoint& a : result.front) {
        for (const ParetoPoint& b : result.front) {
            CHECK_FALSE(dominates({-a.production, a.consumption},
                                  {-b.production, b.consumption}));
        }
    }
    CHECK(result.max_production.production == result.front.front().production);

    double min_cons = kInf;
    for (const ParetoPoint& point : result.front) {
        min_cons = std::min(min_cons, point.consumption);
    }
    CHECK(result.min_consumption.consumption == min_cons);
}

TEST_CASE("front report aggregates ratios") {
    ParetoResult result;
    result.front = {{1.0, 60.0, 4.0, 1.0, 0.25},
                    {2.0, 70.0, 2.0, 0.5, 0.25},
                    {3.0, 80.0, 1.0, 0.1, 0.1}};
    result.max_production = result.front[0];
    result.min_consumption = result.front[2];
    const FrontReport report = front_report(result);
    CHECK(report.mean_ratio == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(report.ratio_at_max_production == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(report.max_production.pressure == 1.0);
    CHECK(report.min_consumption.pressure == 3.0);

    CHECK_THROWS_AS(front_report(ParetoResult{}), contract_error);
}
