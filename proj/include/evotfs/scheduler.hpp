#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evotfs/dtw.hpp"
#include "evotfs/errors.hpp"
#include "evotfs/evolve.hpp"
#include "evotfs/parallel.hpp"
#include "evotfs/series.hpp"
#include "evotfs/terminals.hpp"

namespace evotfs {

/// Per-class oversampling quota: how many samples to generate, how many GP
/// processes run, and which samples are their targets.
struct ClassPlan {
    int class_id = 0;
    std::size_t existing_count = 0;     // N_i
    std::size_t generate_count = 0;     // N_gi = N_maj - N_i
    std::size_t process_count = 0;      // N_pi = min(N_gi, N_i)
    std::size_t per_process_quota = 0;  // ceil(N_gi / N_pi)
    std::vector<std::size_t> targets;   // dataset indices, ascending
};

struct OversamplePlan {
    std::vector<ClassPlan> classes;  // ascending class id; balanced classes omitted
    int majority_class = 0;
    std::size_t majority_count = 0;

    std::size_t total_processes() const {
        std::size_t n = 0;
        for (const auto& c : classes) n += c.process_count;
        return n;
    }
};

/// Derive per-class quotas from the class counts. Every non-majority class i
/// is brought up to the majority count: N_gi = N_maj - N_i, run by
/// N_pi = min(N_gi, N_i) processes. When N_pi = N_i (per-class IR >= 2) every
/// sample of the class is a target; when N_pi < N_i (IR < 2) the N_pi samples
/// DTW-nearest to the class center are the targets, ties broken by smaller
/// dataset index. Expects a normalized dataset (centers are computed after
/// normalization).
inline OversamplePlan build_plan(const Dataset& d) {
    auto counts = d.class_counts();
    if (counts.size() < 2)
        throw NotImbalanceable("need at least two classes, got " + std::to_string(counts.size()));

    OversamplePlan plan;
    plan.majority_count = 0;
    for (const auto& [cls, n] : counts) {
        if (n > plan.majority_count) {
            plan.majority_count = n;
            plan.majority_class = cls;
        }
    }

    for (const auto& [cls, n] : counts) {
        if (n >= plan.majority_count) continue;  // majority itself, or a tie with it
        ClassPlan cp;
        cp.class_id = cls;
        cp.existing_count = n;
        cp.generate_count = plan.majority_count - n;
        cp.process_count = std::min(cp.generate_count, cp.existing_count);
        cp.per_process_quota = (cp.generate_count + cp.process_count - 1) / cp.process_count;

        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.series[i].label == cls) members.push_back(i);

        if (cp.process_count == cp.existing_count) {
            cp.targets = members;
        } else {
            ClassCenter center = class_center(d, cls);
            std::vector<std::pair<double, std::size_t>> by_distance;
            by_distance.reserve(members.size());
            for (std::size_t i : members)
                by_distance.emplace_back(dtw_distance(d.series[i].values, center.center), i);
            std::sort(by_distance.begin(), by_distance.end());
            cp.targets.reserve(cp.process_count);
            for (std::size_t r = 0; r < cp.process_count; ++r) cp.targets.push_back(by_distance[r].second);
            std::sort(cp.targets.begin(), cp.targets.end());
        }
        plan.classes.push_back(std::move(cp));
    }

    if (plan.classes.empty()) throw EmptyPlan("all classes already balanced");
    return plan;
}

/// Population size per GP process, chosen from the imbalance ratio:
/// 30 when IR < 15, otherwise 50.
inline std::size_t population_size_for(double ir) { return ir < 15.0 ? 30 : 50; }

struct Provenance {
    int class_id = 0;
    std::size_t target_index = 0;  // dataset index of the target sample
    std::size_t rank = 0;          // rank within the final population
    double fitness = 0.0;
    std::uint64_t seed = 0;
};

struct SyntheticBatch {
    std::vector<LabeledSeries> samples;
    std::vector<Provenance> provenance;  // parallel to samples
    std::vector<std::string> warnings;
};

/// proc ordinal, class, target, generation, best fitness — for verbose logs.
using ProcessObserver =
    std::function<void(std::size_t proc, int class_id, std::size_t target, std::size_t gen, double best)>;

namespace detail {

struct ProcessSpec {
    int class_id = 0;
    std::size_t target_index = 0;
    std::size_t deliver = 0;
    std::uint64_t seed = 0;
};

struct ProcessOutput {
    std::vector<LabeledSeries> samples;
    std::vector<Provenance> provenance;
    std::vector<std::string> warnings;
};

inline ProcessOutput run_process(const Dataset& d, const ProcessSpec& spec, const TerminalPool& pool,
                                 const FitnessContext& ctx, GpConfig cfg,
                                 const GenerationObserver& observer = {}) {
    ProcessOutput out;
    if (spec.deliver == 0) return out;  // quota already exhausted by earlier processes
    cfg.seed = spec.seed;
    EvolveResult evolved = evolve(pool, ctx, cfg, observer);
    std::vector<std::size_t> chosen;
    chosen.reserve(spec.deliver);
    for (std::size_t rank = 0; rank < evolved.ranked.size() && chosen.size() < spec.deliver; ++rank) {
        bool duplicate = false;
        for (std::size_t c : chosen)
            if (evolved.ranked[c].phenotype == evolved.ranked[rank].phenotype) {
                duplicate = true;
                break;
            }
        if (!duplicate) chosen.push_back(rank);
    }
    if (chosen.size() < spec.deliver) {
        // population collapsed below the quota: admit duplicates from the top
        out.warnings.push_back("class " + d.label_name(spec.class_id) + " target " +
                               std::to_string(spec.target_index) + ": only " + std::to_string(chosen.size()) +
                               " distinct phenotypes for a quota of " + std::to_string(spec.deliver) +
                               "; admitting duplicates");
        std::size_t fill = 0;
        while (chosen.size() < spec.deliver) {
            chosen.push_back(fill % evolved.ranked.size());
            ++fill;
        }
    }
    for (std::size_t rank : chosen) {
        const Individual& ind = evolved.ranked[rank];
        out.samples.push_back(LabeledSeries{spec.class_id, ind.phenotype});
        out.provenance.push_back(Provenance{spec.class_id, spec.target_index, rank, *ind.fitness, spec.seed});
    }
    return out;
}

}  // namespace detail

/// Run one GP process per planned target and collect the synthetic samples in
/// (class, target index, rank) order. Each process draws from a private
/// stream seeded by hash(master, class, target), so the batch is identical
/// for any worker count. Within one process the delivered phenotypes are
/// distinct unless the population collapsed (then duplicates are admitted and
/// a warning recorded).
inline SyntheticBatch run_plan(const Dataset& d, const OversamplePlan& plan, const TerminalPool& pool,
                               const GpConfig& cfg, const FitnessParams& fit = {}, std::size_t workers = 1,
                               const ProcessObserver& observer = {}) {
    std::vector<detail::ProcessSpec> specs;
    for (const auto& cp : plan.classes) {
        std::size_t remaining = cp.generate_count;
        for (std::size_t t = 0; t < cp.targets.size(); ++t) {
            detail::ProcessSpec spec;
            spec.class_id = cp.class_id;
            spec.target_index = cp.targets[t];
            spec.deliver = std::min(cp.per_process_quota, remaining);
            spec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(cp.class_id), cp.targets[t]);
            remaining -= spec.deliver;
            specs.push_back(spec);
        }
    }

    std::vector<detail::ProcessOutput> outputs(specs.size());
    parallel_for(specs.size(), workers, [&](std::size_t i) {
        const auto& spec = specs[i];
        FitnessContext ctx = make_fitness_context(d.series[spec.target_index].values, fit);
        GenerationObserver gen_observer;
        if (observer)
            gen_observer = [&, i](std::size_t gen, double best) {
                observer(i, spec.class_id, spec.target_index, gen, best);
            };
        outputs[i] = detail::run_process(d, spec, pool, ctx, cfg, gen_observer);
    });

    SyntheticBatch batch;
    for (auto& out : outputs) {
        for (auto& s : out.samples) batch.samples.push_back(std::move(s));
        for (auto& p : out.provenance) batch.provenance.push_back(p);
        for (auto& w : out.warnings) batch.warnings.push_back(std::move(w));
    }
    return batch;
}

/// Original series first in their original order, then the synthetic samples
/// in batch order; deterministic, so identical inputs emit identical files.
inline Dataset merge(const Dataset& d, const SyntheticBatch& batch) {
    Dataset out = d;
    for (const auto& s : batch.samples) {
        if (s.values.size() != d.length)
            throw LengthMismatch("synthetic sample length " + std::to_string(s.values.size()) +
                                 " != dataset length " + std::to_string(d.length));
        out.series.push_back(s);
    }
    return out;
}

}  // namespace evotfs
