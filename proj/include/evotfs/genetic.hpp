#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evotfs/errors.hpp"
#include "evotfs/rng.hpp"
#include "evotfs/terminals.hpp"
#include "evotfs/tree.hpp"

namespace evotfs {

/// One GP process configuration. Defaults follow the standard setup:
/// 50 generations, tournament 3, 80% crossover / 20% mutation, 2 elites,
/// ramped half-and-half initialization, max depth 10.
struct GpConfig {
    std::size_t population_size = 30;
    std::size_t generations = 50;
    double crossover_rate = 0.80;
    double mutation_rate = 0.20;
    std::size_t tournament_size = 3;
    std::size_t elites = 2;
    int max_depth = 10;
    std::uint64_t seed = 0;

    void validate() const {
        if (population_size < 1) throw ConfigError("population size must be >= 1");
        if (crossover_rate < 0 || mutation_rate < 0 || crossover_rate + mutation_rate > 1.0 + 1e-12)
            throw ConfigError("crossover_rate + mutation_rate must lie in [0, 1]");
        if (tournament_size < 1) throw ConfigError("tournament size must be >= 1");
        if (elites >= population_size) throw ConfigError("elites must be < population size");
        if (max_depth < 2) throw ConfigError("max depth must be >= 2");
    }
};

struct Individual {
    GpTree tree;
    std::vector<double> phenotype;       // cached synthetic series
    std::optional<double> fitness;       // set together with phenotype
};

// --- type-constrained construction -------------------------------------------

namespace detail {

inline NodeOp random_arith_op(Rng& rng) {
    static constexpr NodeOp kOps[] = {NodeOp::Add, NodeOp::Sub, NodeOp::Mul, NodeOp::ProtDiv};
    return kOps[rng.index(4)];
}

}  // namespace detail

/// Grow or build-full an Array-typed subtree of depth <= budget. The grammar
/// always has a terminal of the required type, so construction never fails:
/// Array slots fall back to a subseries terminal at the depth bound and Float
/// slots are always constants.
inline GpNode random_array_subtree(int budget, bool full, const TerminalPool& pool, Rng& rng) {
    // grow picks uniformly over the 1 Array terminal kind + 4 functions
    if (budget <= 0 || (!full && rng.index(5) == 0))
        return GpNode::subseries(static_cast<std::uint32_t>(rng.index(pool.size())));
    NodeOp op = detail::random_arith_op(rng);
    // argument pattern: (Array, Array), (Array, Float) or (Float, Array);
    // two Floats would make the output a Float and are never generated
    std::size_t pattern = rng.index(3);
    auto array_child = [&] { return random_array_subtree(budget - 1, full, pool, rng); };
    auto float_child = [&] { return GpNode::constant(sample_constant(rng)); };
    std::vector<GpNode> children;
    children.reserve(2);
    switch (pattern) {
        case 0:
            children.push_back(array_child());
            children.push_back(array_child());
            break;
        case 1:
            children.push_back(array_child());
            children.push_back(float_child());
            break;
        default:
            children.push_back(float_child());
            children.push_back(array_child());
    }
    return GpNode::make(op, std::move(children));
}

/// A fresh tree: Connect root over three Array subtrees of depth < depth_target.
inline GpTree random_tree(int depth_target, bool full, const TerminalPool& pool, Rng& rng) {
    std::vector<GpNode> children;
    children.reserve(3);
    for (int i = 0; i < 3; ++i) children.push_back(random_array_subtree(depth_target - 1, full, pool, rng));
    return GpTree{GpNode::make(NodeOp::Connect, std::move(children))};
}

/// Ramped half-and-half: target depths cycle over [2, max_depth], alternating
/// grow and full construction.
inline std::vector<Individual> init_population(const TerminalPool& pool, const GpConfig& cfg, Rng& rng) {
    if (pool.empty()) throw ConfigError("terminal pool is empty");
    cfg.validate();
    std::vector<Individual> pop;
    pop.reserve(cfg.population_size);
    const int span = cfg.max_depth - 1;  // depths 2..max_depth
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        int depth_target = 2 + static_cast<int>((i / 2) % static_cast<std::size_t>(span));
        bool full = (i % 2) == 1;
        pop.push_back(Individual{random_tree(depth_target, full, pool, rng), {}, std::nullopt});
    }
    return pop;
}

// --- node selection -----------------------------------------------------------

struct NodeRef {
    GpNode* node;
    int depth;  // edges from the root
};

namespace detail {

inline void collect_nodes(GpNode& n, int d, std::vector<NodeRef>& out) {
    if (d > 0) out.push_back({&n, d});
    for (auto& c : n.children) collect_nodes(c, d + 1, out);
}

/// All non-root nodes in preorder.
inline std::vector<NodeRef> nonroot_nodes(GpTree& t) {
    std::vector<NodeRef> out;
    collect_nodes(t.root, 0, out);
    return out;
}

}  // namespace detail

// --- genetic operators ----------------------------------------------------------

/// Type-preserving subtree crossover. A non-root subtree of p1 and a same
/// output-type subtree of p2 are swapped; an offspring that would exceed
/// max_depth is replaced by its corresponding parent. If p2 holds no subtree
/// of the required type, both parents come back unchanged.
inline std::pair<GpTree, GpTree> crossover(const GpTree& p1, const GpTree& p2, int max_depth, Rng& rng) {
    GpTree c1 = p1, c2 = p2;
    auto refs1 = detail::nonroot_nodes(c1);
    NodeRef pick1 = refs1[rng.index(refs1.size())];
    GpType want = result_type(pick1.node->op);

    auto refs2 = detail::nonroot_nodes(c2);
    std::vector<NodeRef> same_type;
    for (const auto& r : refs2)
        if (result_type(r.node->op) == want) same_type.push_back(r);
    if (same_type.empty()) return {p1, p2};
    NodeRef pick2 = same_type[rng.index(same_type.size())];

    std::swap(*pick1.node, *pick2.node);
    if (depth(c1) > max_depth) c1 = p1;
    if (depth(c2) > max_depth) c2 = p2;
    return {std::move(c1), std::move(c2)};
}

/// Type-constrained mutation: a uniformly chosen non-root subtree is replaced
/// by a freshly grown subtree of the same output type that fits the depth
/// budget at the insertion point.
inline GpTree mutate(const GpTree& p, const TerminalPool& pool, int max_depth, Rng& rng) {
    GpTree c = p;
    auto refs = detail::nonroot_nodes(c);
    NodeRef pick = refs[rng.index(refs.size())];
    int budget = max_depth - pick.depth;
    if (result_type(pick.node->op) == GpType::Float)
        *pick.node = GpNode::constant(sample_constant(rng));
    else
        *pick.node = random_array_subtree(budget, /*full=*/false, pool, rng);
    return c;
}

/// fitness desc, then node count asc, then population index asc.
inline bool ranks_before(const Individual& a, std::size_t ia, const Individual& b, std::size_t ib) {
    if (*a.fitness != *b.fitness) return *a.fitness > *b.fitness;
    std::size_t na = node_count(a.tree), nb = node_count(b.tree);
    if (na != nb) return na < nb;
    return ia < ib;
}

/// Best of k uniform draws with replacement.
inline const Individual& tournament_select(const std::vector<Individual>& pop, std::size_t k, Rng& rng) {
    if (pop.empty()) throw EmptyPopulation("tournament over an empty population");
    std::size_t best = rng.index(pop.size());
    for (std::size_t draw = 1; draw < k; ++draw) {
        std::size_t i = rng.index(pop.size());
        if (ranks_before(pop[i], i, pop[best], best)) best = i;
    }
    return pop[best];
}

}  // namespace evotfs
