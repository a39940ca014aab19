#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "evotfs/errors.hpp"

namespace evotfs {

struct ClassCounts {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

/// Per-class confusion counts built from (actual, predicted) label pairs.
struct ConfusionCounts {
    std::map<int, ClassCounts> per_class;
    std::size_t total = 0;
};

inline ConfusionCounts make_confusion(const std::vector<int>& actual, const std::vector<int>& predicted) {
    if (actual.size() != predicted.size())
        throw LengthMismatch("actual and predicted label counts differ");
    ConfusionCounts c;
    c.total = actual.size();
    for (std::size_t i = 0; i < actual.size(); ++i) {
        c.per_class[actual[i]];
        c.per_class[predicted[i]];
    }
    for (auto& [cls, counts] : c.per_class) {
        for (std::size_t i = 0; i < actual.size(); ++i) {
            bool is_actual = actual[i] == cls;
            bool is_predicted = predicted[i] == cls;
            if (is_actual && is_predicted) ++counts.tp;
            else if (!is_actual && is_predicted) ++counts.fp;
            else if (is_actual && !is_predicted) ++counts.fn;
            else ++counts.tn;
        }
    }
    return c;
}

/// 2PR/(P+R) for one positive class; 0 whenever a denominator is 0.
inline double f1_score(const ConfusionCounts& c, int positive_class) {
    auto it = c.per_class.find(positive_class);
    if (it == c.per_class.end()) return 0.0;
    const ClassCounts& k = it->second;
    if (k.tp == 0) return 0.0;
    double precision = static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fp);
    double recall = static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fn);
    return 2.0 * precision * recall / (precision + recall);
}

/// Geometric mean of the per-class recalls over classes present in the test
/// set; for two classes this is sqrt(sensitivity * specificity). 0 as soon
/// as any recall is 0.
inline double g_mean(const ConfusionCounts& c) {
    double log_sum = 0.0;
    std::size_t classes = 0;
    for (const auto& [cls, k] : c.per_class) {
        if (k.tp + k.fn == 0) continue;  // class absent from the test set
        double recall = static_cast<double>(k.tp) / static_cast<double>(k.tp + k.fn);
        if (recall == 0.0) return 0.0;
        log_sum += std::log(recall);
        ++classes;
    }
    if (classes == 0) return 0.0;
    return std::exp(log_sum / static_cast<double>(classes));
}

}  // namespace evotfs
