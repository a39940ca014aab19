#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "evotfs/errors.hpp"

namespace evotfs {

/// One univariate time series with a dense integer class label.
struct LabeledSeries {
    int label = 0;
    std::vector<double> values;
};

/// A fixed-length collection of labeled series. Labels are dense integers in
/// first-seen order; label_names keeps the original file tokens for emission
/// (may be empty for programmatically built datasets).
struct Dataset {
    std::vector<LabeledSeries> series;
    std::vector<std::string> label_names;
    std::size_t length = 0;

    std::map<int, std::size_t> class_counts() const {
        std::map<int, std::size_t> counts;
        for (const auto& s : series) ++counts[s.label];
        return counts;
    }

    std::string label_name(int id) const {
        if (id >= 0 && static_cast<std::size_t>(id) < label_names.size()) return label_names[id];
        return std::to_string(id);
    }

    bool empty() const { return series.empty(); }
    std::size_t size() const { return series.size(); }
};

/// Build a dataset from labeled series, checking that lengths agree.
inline Dataset make_dataset(std::vector<LabeledSeries> series, std::vector<std::string> label_names = {}) {
    Dataset d;
    d.series = std::move(series);
    d.label_names = std::move(label_names);
    if (!d.series.empty()) {
        d.length = d.series.front().values.size();
        for (std::size_t i = 1; i < d.series.size(); ++i) {
            if (d.series[i].values.size() != d.length)
                throw FormatError("series " + std::to_string(i + 1) + " has length " +
                                  std::to_string(d.series[i].values.size()) + ", expected " +
                                  std::to_string(d.length));
        }
    }
    return d;
}

/// Dataset-global min/max recorded by min_max_normalize for reuse on test data.
struct NormParams {
    double min = 0.0;
    double max = 1.0;
};

inline double normalize_value(double v, NormParams p) { return (v - p.min) / (p.max - p.min); }
inline double denormalize_value(double v, NormParams p) { return p.min + v * (p.max - p.min); }

namespace detail {

inline Dataset map_values(const Dataset& d, double (*fn)(double, NormParams), NormParams p) {
    Dataset out = d;
    for (auto& s : out.series)
        for (auto& v : s.values) v = fn(v, p);
    return out;
}

}  // namespace detail

/// Min-Max normalization with one global (min, max) over all values, so class
/// centers and DTW distances stay comparable across classes.
inline std::pair<Dataset, NormParams> min_max_normalize(const Dataset& d) {
    if (d.empty()) throw EmptyDataset("cannot normalize an empty dataset");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : d.series)
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(hi > lo)) throw DegenerateScale("all values equal (" + std::to_string(lo) + ")");
    NormParams p{lo, hi};
    return {detail::map_values(d, &normalize_value, p), p};
}

/// Normalize with previously fitted params (test data; never refit).
inline Dataset apply_normalization(const Dataset& d, NormParams p) {
    if (!(p.max > p.min)) throw DegenerateScale("invalid normalization params");
    return detail::map_values(d, &normalize_value, p);
}

inline Dataset denormalize(const Dataset& d, NormParams p) {
    return detail::map_values(d, &denormalize_value, p);
}

/// Majority count divided by minority count; >= 1 by construction.
inline double imbalance_ratio(const Dataset& d) {
    auto counts = d.class_counts();
    if (counts.size() < 2) throw NotImbalanceable("need at least two classes, got " + std::to_string(counts.size()));
    std::size_t lo = std::numeric_limits<std::size_t>::max(), hi = 0;
    for (const auto& [cls, n] : counts) {
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    return static_cast<double>(hi) / static_cast<double>(lo);
}

struct ClassCenter {
    int class_id = 0;
    std::vector<double> center;
};

/// Element-wise mean of all series in one class.
inline ClassCenter class_center(const Dataset& d, int class_id) {
    std::vector<double> sum(d.length, 0.0);
    std::size_t n = 0;
    for (const auto& s : d.series) {
        if (s.label != class_id) continue;
        ++n;
        for (std::size_t t = 0; t < d.length; ++t) sum[t] += s.values[t];
    }
    if (n == 0) throw UnknownClass("class " + std::to_string(class_id) + " not present");
    for (auto& v : sum) v /= static_cast<double>(n);
    return {class_id, std::move(sum)};
}

}  // namespace evotfs
