#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "evotfs/scheduler.hpp"
#include "evotfs/ucr.hpp"
#include "test_util.hpp"

using namespace evotfs;

namespace {

Dataset counts_dataset(std::size_t majority, std::size_t minority, std::size_t len = 6,
                       std::uint64_t seed = 1) {
    Rng rng(seed);
    std::vector<LabeledSeries> rows;
    test_util::append_class(rows, 0, majority, len, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    test_util::append_class(rows, 1, minority, len, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    return make_dataset(std::move(rows), {"maj", "min"});
}

GpConfig tiny_gp(std::uint64_t seed = 0) {
    GpConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 2;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("build_plan with counts {20, 5}: every minority sample is a target") {
    Dataset d = counts_dataset(20, 5);
    OversamplePlan plan = build_plan(d);
    REQUIRE(plan.majority_count == 20);
    REQUIRE(plan.classes.size() == 1);
    const ClassPlan& cp = plan.classes[0];
    REQUIRE(cp.class_id == 1);
    REQUIRE(cp.generate_count == 15);
    REQUIRE(cp.process_count == 5);
    REQUIRE(cp.per_process_quota == 3);
    REQUIRE(cp.targets == std::vector<std::size_t>{20, 21, 22, 23, 24});
}

TEST_CASE("build_plan with counts {10, 6}: targets are the DTW-nearest to the center") {
    Dataset d = counts_dataset(10, 6);
    OversamplePlan plan = build_plan(d);
    const ClassPlan& cp = plan.classes[0];
    REQUIRE(cp.generate_count == 4);
    REQUIRE(cp.process_count == 4);
    REQUIRE(cp.per_process_quota == 1);
    REQUIRE(cp.targets.size() == 4);

    // brute-force oracle: mean series, DTW to each member, 4 smallest
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d.series[i].label == 1) members.push_back(i);
    std::vector<double> center(d.length, 0.0);
    for (std::size_t i : members)
        for (std::size_t t = 0; t < d.length; ++t) center[t] += d.series[i].values[t];
    for (auto& v : center) v /= static_cast<double>(members.size());
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i : members) ranked.emplace_back(dtw_distance(d.series[i].values, center), i);
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::size_t> expected;
    for (int r = 0; r < 4; ++r) expected.push_back(ranked[r].second);
    std::sort(expected.begin(), expected.end());
    REQUIRE(cp.targets == expected);
}

TEST_CASE("build_plan at the IR = 2 boundary uses every sample with quota 1") {
    Dataset d = counts_dataset(10, 5);
    const ClassPlan& cp = build_plan(d).classes[0];
    REQUIRE(cp.generate_count == 5);
    REQUIRE(cp.process_count == 5);
    REQUIRE(cp.per_process_quota == 1);
    REQUIRE(cp.targets.size() == 5);
}

TEST_CASE("build_plan errors") {
    Dataset balanced = counts_dataset(5, 5);
    REQUIRE_THROWS_AS(build_plan(balanced), EmptyPlan);

    std::vector<LabeledSeries> rows;
    test_util::append_class(rows, 0, 4, 3, [](std::size_t, std::size_t) { return 0.5; });
    REQUIRE_THROWS_AS(build_plan(make_dataset(std::move(rows))), NotImbalanceable);
}

TEST_CASE("build_plan covers every non-majority class of a 3-class dataset") {
    Rng rng(4);
    std::vector<LabeledSeries> rows;
    test_util::append_class(rows, 0, 9, 5, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    test_util::append_class(rows, 1, 4, 5, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    test_util::append_class(rows, 2, 6, 5, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    OversamplePlan plan = build_plan(make_dataset(std::move(rows)));
    REQUIRE(plan.classes.size() == 2);
    REQUIRE(plan.classes[0].class_id == 1);
    REQUIRE(plan.classes[0].generate_count == 5);   // 9 - 4, IR 2.25 >= 2: all 4 samples
    REQUIRE(plan.classes[0].process_count == 4);
    REQUIRE(plan.classes[0].per_process_quota == 2);
    REQUIRE(plan.classes[1].class_id == 2);
    REQUIRE(plan.classes[1].generate_count == 3);   // 9 - 6, IR 1.5 < 2: nearest-center targets
    REQUIRE(plan.classes[1].process_count == 3);
}

TEST_CASE("IR<2 target selection is invariant under dataset permutation") {
    Dataset d = counts_dataset(10, 6, 6, /*seed=*/9);
    OversamplePlan plan = build_plan(d);
    std::multiset<std::string> picked;
    for (std::size_t i : plan.classes[0].targets) picked.insert(format_value(d.series[i].values[0]));

    Dataset permuted = d;
    std::reverse(permuted.series.begin(), permuted.series.end());
    OversamplePlan plan2 = build_plan(permuted);
    std::multiset<std::string> picked2;
    for (std::size_t i : plan2.classes[0].targets) picked2.insert(format_value(permuted.series[i].values[0]));
    REQUIRE(picked == picked2);
}

TEST_CASE("population_size_for follows the IR rule") {
    REQUIRE(population_size_for(10.0) == 30);
    REQUIRE(population_size_for(20.83) == 50);
    REQUIRE(population_size_for(15.0) == 50);
    REQUIRE(population_size_for(14.999) == 30);
    REQUIRE(population_size_for(1.0) == 30);
}

TEST_CASE("run_plan delivers exactly the planned counts") {
    Dataset raw = counts_dataset(8, 3);
    auto [d, params] = min_max_normalize(raw);
    TerminalPool pool = extract_windows(d, default_window_len(d.length));
    OversamplePlan plan = build_plan(d);
    SyntheticBatch batch = run_plan(d, plan, pool, tiny_gp(), {}, 1);
    REQUIRE(batch.samples.size() == 5);
    for (const auto& s : batch.samples) {
        REQUIRE(s.label == 1);
        REQUIRE(s.values.size() == d.length);
    }
    Dataset merged = merge(d, batch);
    auto counts = merged.class_counts();
    REQUIRE(counts[0] == 8);
    REQUIRE(counts[1] == 8);
}

TEST_CASE("run_plan handles a quota remainder that idles the last process") {
    // counts {13, 4}: N_g = 9 over 4 processes at quota 3 -> 3, 3, 3, 0
    Dataset raw = counts_dataset(13, 4);
    auto [d, params] = min_max_normalize(raw);
    TerminalPool pool = extract_windows(d, default_window_len(d.length));
    OversamplePlan plan = build_plan(d);
    REQUIRE(plan.classes[0].per_process_quota == 3);
    REQUIRE(plan.classes[0].process_count == 4);
    SyntheticBatch batch = run_plan(d, plan, pool, tiny_gp(2), {}, 2);
    REQUIRE(batch.samples.size() == 9);
    auto counts = merge(d, batch).class_counts();
    REQUIRE(counts[0] == 13);
    REQUIRE(counts[1] == 13);
}

TEST_CASE("run_plan with quota 1 delivers each process's best individual") {
    Dataset raw = counts_dataset(6, 3);
    auto [d, params] = min_max_normalize(raw);
    TerminalPool pool = extract_windows(d, default_window_len(d.length));
    OversamplePlan plan = build_plan(d);
    REQUIRE(plan.classes[0].per_process_quota == 1);
    SyntheticBatch batch = run_plan(d, plan, pool, tiny_gp(3), {}, 1);
    REQUIRE(batch.samples.size() == 3);
    for (const auto& p : batch.provenance) REQUIRE(p.rank == 0);
}

TEST_CASE("run_plan admits duplicates only when the population collapses") {
    // quota 6 from a population of 4 forces backfill beyond distinct ranks
    Dataset raw = counts_dataset(7, 1);
    auto [d, params] = min_max_normalize(raw);
    TerminalPool pool = extract_windows(d, default_window_len(d.length));
    OversamplePlan plan = build_plan(d);
    REQUIRE(plan.classes[0].per_process_quota == 6);
    GpConfig cfg = tiny_gp(1);
    cfg.population_size = 4;
    cfg.elites = 2;
    SyntheticBatch batch = run_plan(d, plan, pool, cfg, {}, 1);
    REQUIRE(batch.samples.size() == 6);
    REQUIRE_FALSE(batch.warnings.empty());
}

TEST_CASE("run_plan output is independent of the worker count") {
    Dataset raw = counts_dataset(10, 4);
    auto [d, params] = min_max_normalize(raw);
    TerminalPool pool = extract_windows(d, default_window_len(d.length));
    OversamplePlan plan = build_plan(d);
    SyntheticBatch serial = run_plan(d, plan, pool, tiny_gp(8), {}, 1);
    SyntheticBatch threaded = run_plan(d, plan, pool, tiny_gp(8), {}, 8);
    REQUIRE(serial.samples.size() == threaded.samples.size());
    for (std::size_t i = 0; i < serial.samples.size(); ++i)
        REQUIRE(serial.samples[i].values == threaded.samples[i].values);
}

TEST_CASE("run_plan balances a 3-class dataset end to end") {
    Rng rng(12);
    std::vector<LabeledSeries> rows;
    test_util::append_class(rows, 0, 7, 6, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    test_util::append_class(rows, 1, 3, 6, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    test_util::append_class(rows, 2, 5, 6, [&](std::size_t, std::size_t) { return rng.uniform(0, 1); });
    Dataset raw = make_dataset(std::move(rows));
    auto [d, params] = min_max_normalize(raw);
    TerminalPool pool = extract_windows(d, default_window_len(d.length));
    OversamplePlan plan = build_plan(d);
    Dataset merged = merge(d, run_plan(d, plan, pool, tiny_gp(6), {}, 2));
    auto counts = merged.class_counts();
    REQUIRE(counts[0] == 7);
    REQUIRE(counts[1] == 7);
    REQUIRE(counts[2] == 7);
}

TEST_CASE("merge keeps originals first and appends synthetics") {
    Dataset d = counts_dataset(3, 2);
    SyntheticBatch empty;
    Dataset same = merge(d, empty);
    REQUIRE(to_ucr_string(same) == to_ucr_string(d));

    SyntheticBatch batch;
    batch.samples.push_back(LabeledSeries{1, std::vector<double>(d.length, 0.5)});
    Dataset merged = merge(d, batch);
    REQUIRE(merged.size() == d.size() + 1);
    REQUIRE(merged.series.back().values == std::vector<double>(d.length, 0.5));
    REQUIRE(to_ucr_string(merged) == to_ucr_string(merge(d, batch)));

    SyntheticBatch wrong;
    wrong.samples.push_back(LabeledSeries{1, {0.5}});
    REQUIRE_THROWS_AS(merge(d, wrong), LengthMismatch);
}
