#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "evotfs/density.hpp"
#include "evotfs/knn.hpp"
#include "evotfs/metrics.hpp"
#include "evotfs/pipeline.hpp"
#include "evotfs/smote.hpp"

namespace evotfs {

// Desk-scale evaluation harness: rebalance a training set with one of the
// methods below, train a simple classifier, and score it on a held-out test
// set. All methods operate in the training set's normalized space; the test
// set is normalized with the training parameters (never refit).

enum class Method { None, Duplicate, Smote, EvoTfs };
enum class Classifier { Dtw1nn, Spec1nn };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::None: return "none";
        case Method::Duplicate: return "duplicate";
        case Method::Smote: return "smote";
        case Method::EvoTfs: return "evotfs";
    }
    return "?";
}

inline const char* classifier_name(Classifier c) {
    return c == Classifier::Dtw1nn ? "dtw1nn" : "spec1nn";
}

struct HarnessSettings {
    PipelineConfig pipeline;      // GP + fitness knobs for the evotfs method
    std::size_t smote_k = 5;
    std::size_t density_k = 3;
    std::size_t seeds = 1;
    std::uint64_t base_seed = 0;
    std::size_t workers = 1;
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    double f1 = 0.0;
    double g_mean = 0.0;
    double u = 0.0;
};

struct MethodSummary {
    Method method = Method::None;
    Classifier classifier = Classifier::Dtw1nn;
    std::vector<SeedOutcome> per_seed;

    double mean(double SeedOutcome::* field) const {
        double sum = 0.0;
        for (const auto& s : per_seed) sum += s.*field;
        return per_seed.empty() ? 0.0 : sum / static_cast<double>(per_seed.size());
    }
    double stddev(double SeedOutcome::* field) const {
        if (per_seed.size() < 2) return 0.0;
        double m = mean(field);
        double sum = 0.0;
        for (const auto& s : per_seed) sum += (s.*field - m) * (s.*field - m);
        return std::sqrt(sum / static_cast<double>(per_seed.size()));
    }
};

/// Minority class of a training set: the class with the smallest count
/// (ties by smaller class id). The reported F1 scores this class.
inline int minority_class(const Dataset& d) {
    auto counts = d.class_counts();
    int cls = counts.begin()->first;
    std::size_t best = counts.begin()->second;
    for (const auto& [c, n] : counts)
        if (n < best) {
            best = n;
            cls = c;
        }
    return cls;
}

/// Rebalance a normalized training set with one method under one seed.
inline Dataset rebalance(const Dataset& train_normalized, const Dataset& train_raw, Method method,
                         std::uint64_t seed, const HarnessSettings& settings) {
    switch (method) {
        case Method::None:
            return train_normalized;
        case Method::Duplicate:
            return duplicate_oversample(train_normalized);
        case Method::Smote: {
            Rng rng(derive_seed(seed, 0x5307EULL));
            return smote_oversample(train_normalized, settings.smote_k, rng);
        }
        case Method::EvoTfs: {
            PipelineConfig cfg = settings.pipeline;
            cfg.gp.seed = seed;
            cfg.workers = settings.workers;
            return run_oversample(train_raw, cfg).merged_normalized;
        }
    }
    throw ConfigError("unknown method");
}

/// Score one method over settings.seeds consecutive seeds.
inline MethodSummary evaluate_method(const Dataset& train_raw, const Dataset& test_raw, Method method,
                                     Classifier classifier, const HarnessSettings& settings) {
    auto [train_norm, params] = min_max_normalize(train_raw);
    Dataset test_norm = apply_normalization(test_raw, params);
    int positive = minority_class(train_raw);

    MethodSummary summary;
    summary.method = method;
    summary.classifier = classifier;
    for (std::size_t s = 0; s < settings.seeds; ++s) {
        std::uint64_t seed = settings.base_seed + s;
        Dataset rebalanced = rebalance(train_norm, train_raw, method, seed, settings);
        ConfusionCounts confusion = classifier == Classifier::Dtw1nn
                                        ? knn_dtw_classify(rebalanced, test_norm, settings.workers)
                                        : knn_spectrum_classify(rebalanced, test_norm, settings.workers);
        SeedOutcome outcome;
        outcome.seed = seed;
        outcome.f1 = f1_score(confusion, positive);
        outcome.g_mean = g_mean(confusion);
        outcome.u = density_consistency(rebalanced, settings.density_k, settings.workers).u_value;
        summary.per_seed.push_back(outcome);
    }
    return summary;
}

/// Min-max normalization of mean U across the compared methods, as used in
/// the report emitter: 0 maps to the most density-consistent method. With a
/// single method (or all equal) every value maps to 0.
inline std::map<Method, double> normalize_u(const std::map<Method, double>& raw) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& [m, v] : raw) {
        if (first) {
            lo = hi = v;
            first = false;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::map<Method, double> out;
    for (const auto& [m, v] : raw) out[m] = hi > lo ? (v - lo) / (hi - lo) : 0.0;
    return out;
}

}  // namespace evotfs
