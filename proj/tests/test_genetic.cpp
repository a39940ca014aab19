#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "evotfs/genetic.hpp"
#include "test_util.hpp"

using namespace evotfs;

namespace {

TerminalPool small_pool() {
    Dataset d = make_dataset({{0, {0.1, 0.2, 0.3, 0.4}}, {1, {0.5, 0.6, 0.7, 0.8}}});
    return extract_windows(d, 2);
}

GpConfig defaults() {
    GpConfig cfg;
    cfg.population_size = 30;
    return cfg;
}

}  // namespace

TEST_CASE("init_population builds type-valid trees with Connect roots") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    Rng rng(1);
    auto pop = init_population(pool, cfg, rng);
    REQUIRE(pop.size() == cfg.population_size);
    for (const auto& ind : pop) {
        REQUIRE(ind.tree.root.op == NodeOp::Connect);
        REQUIRE(ind.tree.root.children.size() == 3);
        std::string why;
        REQUIRE(valid_tree(ind.tree, pool.size(), cfg.max_depth, &why));
    }
}

TEST_CASE("init_population ramps depths across [2, max_depth]") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    cfg.population_size = 90;
    Rng rng(2);
    auto pop = init_population(pool, cfg, rng);
    std::set<int> depths;
    for (const auto& ind : pop) {
        int d = depth(ind.tree);
        REQUIRE(d >= 1);
        REQUIRE(d <= cfg.max_depth);
        depths.insert(d);
    }
    // full-method trees hit their target depth, so the top of the ramp shows up
    REQUIRE(depths.count(cfg.max_depth) == 1);
    REQUIRE(depths.size() >= 5);
}

TEST_CASE("init_population with max_depth 2 keeps children shallow") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    cfg.max_depth = 2;
    Rng rng(3);
    auto pop = init_population(pool, cfg, rng);
    for (const auto& ind : pop) {
        REQUIRE(depth(ind.tree) <= 2);
        for (const auto& child : ind.tree.root.children) {
            bool terminal = child.op == NodeOp::Subseries;
            bool single_arith = arity(child.op) == 2 && depth(child) == 1;
            REQUIRE((terminal || single_arith));
        }
    }
}

TEST_CASE("init_population is deterministic for a fixed seed") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    Rng a(42), b(42);
    auto pa = init_population(pool, cfg, a);
    auto pb = init_population(pool, cfg, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i)
        REQUIRE(tree_to_string(pa[i].tree) == tree_to_string(pb[i].tree));
}

TEST_CASE("crossover preserves types and the depth bound") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    Rng rng(4);
    auto pop = init_population(pool, cfg, rng);
    for (int trial = 0; trial < 1000; ++trial) {
        const GpTree& p1 = pop[rng.index(pop.size())].tree;
        const GpTree& p2 = pop[rng.index(pop.size())].tree;
        auto [c1, c2] = crossover(p1, p2, cfg.max_depth, rng);
        std::string why;
        REQUIRE(valid_tree(c1, pool.size(), cfg.max_depth, &why));
        REQUIRE(valid_tree(c2, pool.size(), cfg.max_depth, &why));
    }
}

TEST_CASE("crossover of identical single-terminal parents is an identity") {
    TerminalPool pool = small_pool();
    // every Array-typed non-root node is the same terminal, so any swap
    // exchanges identical subtrees
    GpTree p{GpNode::make(NodeOp::Connect,
                          {GpNode::subseries(5), GpNode::subseries(5), GpNode::subseries(5)})};
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto [c1, c2] = crossover(p, p, 10, rng);
        REQUIRE(tree_to_string(c1) == tree_to_string(p));
        REQUIRE(tree_to_string(c2) == tree_to_string(p));
    }
    (void)pool;
}

TEST_CASE("crossover is deterministic for a fixed seed") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    Rng init_rng(6);
    auto pop = init_population(pool, cfg, init_rng);
    Rng a(7), b(7);
    auto ra = crossover(pop[0].tree, pop[1].tree, cfg.max_depth, a);
    auto rb = crossover(pop[0].tree, pop[1].tree, cfg.max_depth, b);
    REQUIRE(tree_to_string(ra.first) == tree_to_string(rb.first));
    REQUIRE(tree_to_string(ra.second) == tree_to_string(rb.second));
}

TEST_CASE("mutation stays in the grammar and depth bound") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    Rng rng(8);
    auto pop = init_population(pool, cfg, rng);
    for (int trial = 0; trial < 1000; ++trial) {
        const GpTree& p = pop[rng.index(pop.size())].tree;
        GpTree m = mutate(p, pool, cfg.max_depth, rng);
        std::string why;
        REQUIRE(valid_tree(m, pool.size(), cfg.max_depth, &why));
        REQUIRE(depth(m) <= cfg.max_depth);
    }
}

TEST_CASE("mutating a Float leaf produces a fresh constant in [-1, 1]") {
    TerminalPool pool = small_pool();
    GpTree p{GpNode::make(
        NodeOp::Connect,
        {GpNode::make(NodeOp::Add, {GpNode::subseries(0), GpNode::constant(0.5)}), GpNode::subseries(1),
         GpNode::subseries(2)})};
    bool hit_float = false;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng(seed);
        GpTree m = mutate(p, pool, 10, rng);
        const GpNode& add = m.root.children[0];
        if (add.op == NodeOp::Add && add.children[1].op == NodeOp::Constant &&
            add.children[1].value != 0.5 && add.children[0].op == NodeOp::Subseries &&
            add.children[0].pool_index == 0) {
            hit_float = true;
            REQUIRE(add.children[1].value >= -1.0);
            REQUIRE(add.children[1].value <= 1.0);
        }
    }
    REQUIRE(hit_float);
}

TEST_CASE("mutation is deterministic for a fixed seed") {
    TerminalPool pool = small_pool();
    GpConfig cfg = defaults();
    Rng init_rng(9);
    auto pop = init_population(pool, cfg, init_rng);
    Rng a(10), b(10);
    REQUIRE(tree_to_string(mutate(pop[3].tree, pool, cfg.max_depth, a)) ==
            tree_to_string(mutate(pop[3].tree, pool, cfg.max_depth, b)));
}

TEST_CASE("tournament_select forced choice and max semantics") {
    TerminalPool pool = small_pool();
    GpTree t{GpNode::make(NodeOp::Connect,
                          {GpNode::subseries(0), GpNode::subseries(1), GpNode::subseries(2)})};

    std::vector<Individual> lone;
    lone.push_back(Individual{t, {0.0}, 0.25});
    Rng rng(11);
    REQUIRE(*tournament_select(lone, 3, rng).fitness == 0.25);

    std::vector<Individual> pop;
    pop.push_back(Individual{t, {0.0}, 0.2});
    pop.push_back(Individual{t, {0.0}, 0.9});
    pop.push_back(Individual{t, {0.0}, 0.5});
    // k much larger than the population: with replacement the draw covers
    // everyone for this seed, so the global best wins
    Rng wide(12);
    REQUIRE(*tournament_select(pop, 24, wide).fitness == 0.9);

    REQUIRE_THROWS_AS(tournament_select({}, 3, rng), EmptyPopulation);
}

TEST_CASE("tournament_select breaks fitness ties by node count then index") {
    TerminalPool pool = small_pool();
    GpTree small{GpNode::make(NodeOp::Connect,
                              {GpNode::subseries(0), GpNode::subseries(1), GpNode::subseries(2)})};
    GpTree big{GpNode::make(
        NodeOp::Connect,
        {GpNode::make(NodeOp::Add, {GpNode::subseries(0), GpNode::subseries(1)}),
         GpNode::make(NodeOp::Add, {GpNode::subseries(2), GpNode::subseries(3)}), GpNode::subseries(2)})};
    REQUIRE(node_count(small) < node_count(big));

    std::vector<Individual> pop;
    pop.push_back(Individual{big, {0.0}, 0.5});    // index 0: 9 nodes
    pop.push_back(Individual{small, {0.0}, 0.5});  // index 1: 4 nodes, wins on size
    Rng rng(13);
    const Individual& winner = tournament_select(pop, 16, rng);
    REQUIRE(node_count(winner.tree) == node_count(small));

    // equal fitness and equal size: the earlier index wins
    std::vector<Individual> same;
    same.push_back(Individual{small, {0.0}, 0.5});
    same.push_back(Individual{small, {0.0}, 0.5});
    Rng rng2(14);
    const Individual& first = tournament_select(same, 16, rng2);
    REQUIRE(&first == &same[0]);
}
