#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "evotfs/evolve.hpp"
#include "test_util.hpp"

using namespace evotfs;

namespace {

struct Setup {
    Dataset data;
    TerminalPool pool;
    FitnessContext ctx;
};

Setup make_setup() {
    Rng rng(77);
    std::vector<LabeledSeries> rows;
    test_util::append_class(rows, 0, 3, 6, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    Setup s{make_dataset(std::move(rows)), {}, {}};
    s.pool = extract_windows(s.data, 2);
    s.ctx = make_fitness_context(s.data.series[0].values);
    return s;
}

GpConfig quick_config(std::uint64_t seed) {
    GpConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 10;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("elitism keeps best-of-generation non-decreasing") {
    Setup s = make_setup();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EvolveResult r = evolve(s.pool, s.ctx, quick_config(seed));
        REQUIRE(r.best_history.size() == 11);
        for (std::size_t g = 1; g < r.best_history.size(); ++g)
            REQUIRE(r.best_history[g] >= r.best_history[g - 1]);
    }
}

TEST_CASE("zero generations returns the ranked initial population") {
    Setup s = make_setup();
    GpConfig cfg = quick_config(3);
    cfg.generations = 0;
    EvolveResult r = evolve(s.pool, s.ctx, cfg);
    REQUIRE(r.ranked.size() == cfg.population_size);
    REQUIRE(r.best_history.size() == 1);
    for (std::size_t i = 1; i < r.ranked.size(); ++i)
        REQUIRE(*r.ranked[i - 1].fitness >= *r.ranked[i].fitness);

    // it really is the initial population, reranked
    Rng rng(cfg.seed);
    auto init = init_population(s.pool, cfg, rng);
    std::multiset<std::string> expected, got;
    for (const auto& ind : init) expected.insert(tree_to_string(ind.tree));
    for (const auto& ind : r.ranked) got.insert(tree_to_string(ind.tree));
    REQUIRE(expected == got);
}

TEST_CASE("evolve is bit-deterministic for a fixed seed") {
    Setup s = make_setup();
    EvolveResult a = evolve(s.pool, s.ctx, quick_config(9));
    EvolveResult b = evolve(s.pool, s.ctx, quick_config(9));
    REQUIRE(a.best_history == b.best_history);
    REQUIRE(a.ranked.size() == b.ranked.size());
    for (std::size_t i = 0; i < a.ranked.size(); ++i) {
        REQUIRE(tree_to_string(a.ranked[i].tree) == tree_to_string(b.ranked[i].tree));
        REQUIRE(a.ranked[i].phenotype == b.ranked[i].phenotype);
        REQUIRE(*a.ranked[i].fitness == *b.ranked[i].fitness);
    }
}

TEST_CASE("every phenotype is finite with the target length") {
    Setup s = make_setup();
    EvolveResult r = evolve(s.pool, s.ctx, quick_config(4));
    for (const auto& ind : r.ranked) {
        REQUIRE(ind.phenotype.size() == s.ctx.target.size());
        for (double v : ind.phenotype) REQUIRE(std::isfinite(v));
        REQUIRE(*ind.fitness > 0.0);
        REQUIRE(*ind.fitness <= 1.0);
    }
}

TEST_CASE("evolution rediscovers a target stitched from pool windows") {
    // T = 3L and the target's three windows sit in the pool, so the literal
    // Connect reconstruction has fitness exactly 1 and bounds the search
    Dataset d = make_dataset({{0, {0.9, 0.1, 0.8, 0.2, 0.7, 0.3}}, {1, {0.4, 0.6, 0.5, 0.45, 0.55, 0.35}}});
    TerminalPool pool = extract_windows(d, 2);
    const auto& target = d.series[0].values;
    FitnessContext ctx = make_fitness_context(target);

    // windows at offsets 0, 2, 4 of series 0 are pool entries 0, 2, 4
    GpTree literal{GpNode::make(NodeOp::Connect,
                                {GpNode::subseries(0), GpNode::subseries(2), GpNode::subseries(4)})};
    REQUIRE(evaluate_tree(literal, pool, 6) == target);
    double literal_fitness = fitness(evaluate_tree(literal, pool, 6), ctx);
    REQUIRE(literal_fitness == Catch::Approx(1.0).margin(1e-9));

    GpConfig cfg;
    cfg.population_size = 30;
    cfg.generations = 50;
    cfg.seed = 1;
    EvolveResult r = evolve(pool, ctx, cfg);
    REQUIRE(*r.ranked.front().fitness >= literal_fitness - 1e-9);
}

TEST_CASE("observer sees one call per generation") {
    Setup s = make_setup();
    GpConfig cfg = quick_config(5);
    std::vector<std::size_t> gens;
    evolve(s.pool, s.ctx, cfg, [&](std::size_t gen, double best) {
        gens.push_back(gen);
        REQUIRE(best > 0.0);
    });
    REQUIRE(gens.size() == cfg.generations + 1);
    REQUIRE(gens.front() == 0);
    REQUIRE(gens.back() == cfg.generations);
}
