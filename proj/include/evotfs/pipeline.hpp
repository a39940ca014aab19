#pragma once

#include <optional>
#include <string>
#include <utility>

#include "evotfs/fitness.hpp"
#include "evotfs/scheduler.hpp"
#include "evotfs/series.hpp"
#include "evotfs/terminals.hpp"

namespace evotfs {

/// Everything one oversampling run needs beyond the raw training data.
struct PipelineConfig {
    GpConfig gp;                               // population_size filled by the IR rule unless overridden
    FitnessParams fit;
    std::optional<std::size_t> window_len;     // default: ceil(T/3)
    std::optional<std::size_t> population;     // default: 30 if IR < 15 else 50
    std::size_t workers = 1;
};

struct OversampleOutcome {
    Dataset merged_normalized;  // originals normalized + synthetics, for in-memory evaluation
    Dataset merged_original;    // originals verbatim + synthetics denormalized, for emission
    SyntheticBatch batch;
    OversamplePlan plan;
    NormParams params;
    std::size_t window_len = 0;
    std::size_t population_size = 0;
};

/// The full oversampling pipeline on a raw training set: normalize, extract
/// the window pool, derive the plan, run one GP process per target, merge.
inline OversampleOutcome run_oversample(const Dataset& raw_train, const PipelineConfig& cfg,
                                        const ProcessObserver& observer = {}) {
    OversampleOutcome out;
    auto [normalized, params] = min_max_normalize(raw_train);
    out.params = params;

    out.window_len = cfg.window_len ? *cfg.window_len : default_window_len(normalized.length);
    if (out.window_len < 1 || out.window_len > normalized.length)
        throw ConfigError("window length must lie in [1, " + std::to_string(normalized.length) + "]");
    if (3 * out.window_len < normalized.length)
        throw ConfigError("window length " + std::to_string(out.window_len) +
                          " is too small: Connect covers only 3L = " + std::to_string(3 * out.window_len) +
                          " of " + std::to_string(normalized.length) + " time steps");

    TerminalPool pool = extract_windows(normalized, out.window_len);
    out.plan = build_plan(normalized);

    GpConfig gp = cfg.gp;
    gp.population_size = cfg.population ? *cfg.population : population_size_for(imbalance_ratio(normalized));
    out.population_size = gp.population_size;

    out.batch = run_plan(normalized, out.plan, pool, gp, cfg.fit, cfg.workers, observer);
    out.merged_normalized = merge(normalized, out.batch);

    SyntheticBatch denorm = out.batch;
    for (auto& s : denorm.samples)
        for (auto& v : s.values) v = denormalize_value(v, params);
    out.merged_original = merge(raw_train, denorm);
    return out;
}

}  // namespace evotfs
