#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "evotfs/fitness.hpp"
#include "evotfs/genetic.hpp"

namespace evotfs {

struct EvolveResult {
    std::vector<Individual> ranked;      // final population, best first
    std::vector<double> best_history;    // index 0 = initial population
};

using GenerationObserver = std::function<void(std::size_t generation, double best_fitness)>;

namespace detail {

inline void evaluate_individual(Individual& ind, const TerminalPool& pool, const FitnessContext& ctx) {
    if (ind.fitness) return;
    ind.phenotype = evaluate_tree(ind.tree, pool, ctx.target.size());
    ind.fitness = fitness(ind.phenotype, ctx);
}

inline std::vector<std::size_t> ranked_indices(const std::vector<Individual>& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ranks_before(pop[a], a, pop[b], b); });
    return order;
}

}  // namespace detail

/// One generational GP run against a single target. Each generation copies
/// the elites unchanged, then fills the population with tournament parents
/// passed through crossover or mutation (exclusive alternatives). Fully
/// deterministic for a fixed (seed, pool, ctx, cfg).
inline EvolveResult evolve(const TerminalPool& pool, const FitnessContext& ctx, const GpConfig& cfg,
                           const GenerationObserver& observer = {}) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<Individual> pop = init_population(pool, cfg, rng);
    for (auto& ind : pop) detail::evaluate_individual(ind, pool, ctx);

    EvolveResult result;
    auto record = [&](std::size_t gen) {
        double best = 0.0;
        for (const auto& ind : pop) best = std::max(best, *ind.fitness);
        result.best_history.push_back(best);
        if (observer) observer(gen, best);
    };
    record(0);

    for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
        auto order = detail::ranked_indices(pop);
        std::vector<Individual> next;
        next.reserve(cfg.population_size);
        for (std::size_t e = 0; e < cfg.elites; ++e) next.push_back(pop[order[e]]);
        while (next.size() < cfg.population_size) {
            double r = rng.uniform01();
            if (r < cfg.crossover_rate) {
                const Individual& pa = tournament_select(pop, cfg.tournament_size, rng);
                const Individual& pb = tournament_select(pop, cfg.tournament_size, rng);
                auto [ca, cb] = crossover(pa.tree, pb.tree, cfg.max_depth, rng);
                next.push_back(Individual{std::move(ca), {}, std::nullopt});
                if (next.size() < cfg.population_size)
                    next.push_back(Individual{std::move(cb), {}, std::nullopt});
            } else if (r < cfg.crossover_rate + cfg.mutation_rate) {
                const Individual& pa = tournament_select(pop, cfg.tournament_size, rng);
                next.push_back(Individual{mutate(pa.tree, pool, cfg.max_depth, rng), {}, std::nullopt});
            } else {
                next.push_back(tournament_select(pop, cfg.tournament_size, rng));
            }
        }
        pop = std::move(next);
        for (auto& ind : pop) detail::evaluate_individual(ind, pool, ctx);
        record(gen);
    }

    auto order = detail::ranked_indices(pop);
    result.ranked.reserve(pop.size());
    for (std::size_t i : order) result.ranked.push_back(std::move(pop[i]));
    return result;
}

}  // namespace evotfs
