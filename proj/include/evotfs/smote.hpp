#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "evotfs/errors.hpp"
#include "evotfs/rng.hpp"
#include "evotfs/series.hpp"

namespace evotfs {

namespace detail {

inline double squared_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace detail

/// Classic SMOTE baseline: each synthetic sample interpolates between a
/// minority sample x and one of its k Euclidean-nearest same-class
/// neighbors, x + lambda * (neighbor - x) with lambda uniform in [0, 1].
/// Every non-majority class is brought up to the majority count. If a class
/// has <= k members, k shrinks to size-1 with a warning (a singleton class
/// falls back to duplication).
inline Dataset smote_oversample(const Dataset& d, std::size_t k, Rng& rng,
                                std::vector<std::string>* warnings = nullptr) {
    auto counts = d.class_counts();
    if (counts.size() < 2) throw NotImbalanceable("need at least two classes");
    std::size_t majority = 0;
    for (const auto& [cls, n] : counts) majority = std::max(majority, n);

    Dataset out = d;
    for (const auto& [cls, n] : counts) {
        if (n >= majority) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.series[i].label == cls) members.push_back(i);

        std::size_t use_k = k;
        if (use_k >= members.size()) {
            use_k = members.size() - 1;
            if (warnings)
                warnings->push_back("class " + d.label_name(cls) + " has " + std::to_string(members.size()) +
                                    " samples; reducing smote k to " + std::to_string(use_k));
        }

        // same-class k-NN lists, ties by smaller index
        std::vector<std::vector<std::size_t>> neighbors(members.size());
        for (std::size_t a = 0; a < members.size(); ++a) {
            std::vector<std::pair<double, std::size_t>> by_dist;
            for (std::size_t b = 0; b < members.size(); ++b) {
                if (b == a) continue;
                by_dist.emplace_back(
                    detail::squared_euclidean(d.series[members[a]].values, d.series[members[b]].values), b);
            }
            std::sort(by_dist.begin(), by_dist.end());
            for (std::size_t r = 0; r < use_k && r < by_dist.size(); ++r)
                neighbors[a].push_back(by_dist[r].second);
        }

        for (std::size_t made = 0; made < majority - n; ++made) {
            std::size_t a = rng.index(members.size());
            const auto& x = d.series[members[a]].values;
            LabeledSeries synth;
            synth.label = cls;
            if (neighbors[a].empty()) {
                synth.values = x;  // singleton class: duplicate
            } else {
                const auto& nb = d.series[members[neighbors[a][rng.index(neighbors[a].size())]]].values;
                double lambda = rng.uniform01();
                synth.values.resize(x.size());
                for (std::size_t t = 0; t < x.size(); ++t)
                    synth.values[t] = x[t] + lambda * (nb[t] - x[t]);
            }
            out.series.push_back(std::move(synth));
        }
    }
    return out;
}

/// Naive duplication baseline: repeat minority samples in dataset order
/// until every class matches the majority count. Deterministic.
inline Dataset duplicate_oversample(const Dataset& d) {
    auto counts = d.class_counts();
    if (counts.size() < 2) throw NotImbalanceable("need at least two classes");
    std::size_t majority = 0;
    for (const auto& [cls, n] : counts) majority = std::max(majority, n);

    Dataset out = d;
    for (const auto& [cls, n] : counts) {
        if (n >= majority) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.series[i].label == cls) members.push_back(i);
        for (std::size_t made = 0; made < majority - n; ++made)
            out.series.push_back(d.series[members[made % members.size()]]);
    }
    return out;
}

}  // namespace evotfs
