#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "evotfs/dft.hpp"
#include "evotfs/dtw.hpp"
#include "evotfs/errors.hpp"
#include "evotfs/metrics.hpp"
#include "evotfs/parallel.hpp"
#include "evotfs/series.hpp"

namespace evotfs {

// Desk-scale stand-ins for the heavyweight time-domain and frequency-domain
// classifiers: a 1-NN under DTW and a 1-NN on DFT magnitude vectors. Both
// break distance ties by smaller training index, so predictions are
// deterministic.

namespace detail {

template <typename DistanceFn>
inline ConfusionCounts classify_1nn(const Dataset& train, const Dataset& test, std::size_t workers,
                                    DistanceFn&& distance) {
    if (train.empty()) throw EmptyDataset("training set is empty");
    if (train.length != test.length)
        throw LengthMismatch("train length " + std::to_string(train.length) + " != test length " +
                             std::to_string(test.length));
    std::vector<int> predicted(test.size());
    parallel_for(test.size(), workers, [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < train.size(); ++j) {
            double dist = distance(i, j);
            if (dist < best) {
                best = dist;
                best_j = j;
            }
        }
        predicted[i] = train.series[best_j].label;
    });
    std::vector<int> actual(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) actual[i] = test.series[i].label;
    return make_confusion(actual, predicted);
}

}  // namespace detail

/// 1-NN under DTW distance.
inline ConfusionCounts knn_dtw_classify(const Dataset& train, const Dataset& test, std::size_t workers = 1) {
    return detail::classify_1nn(train, test, workers, [&](std::size_t i, std::size_t j) {
        return dtw_distance(test.series[i].values, train.series[j].values);
    });
}

/// 1-NN on DFT magnitude vectors under Euclidean distance. Magnitudes are
/// invariant to circular shifts, so this captures frequency content only.
inline ConfusionCounts knn_spectrum_classify(const Dataset& train, const Dataset& test,
                                             std::size_t workers = 1) {
    if (train.empty()) throw EmptyDataset("training set is empty");
    if (train.length != test.length)
        throw LengthMismatch("train length " + std::to_string(train.length) + " != test length " +
                             std::to_string(test.length));
    DftPlan plan(train.length);
    auto magnitudes = [&](const Dataset& d) {
        std::vector<std::vector<double>> out(d.size());
        parallel_for(d.size(), workers, [&](std::size_t i) {
            auto spectrum = dft(d.series[i].values, plan);
            out[i].resize(spectrum.size());
            for (std::size_t k = 0; k < spectrum.size(); ++k) out[i][k] = std::abs(spectrum[k]);
        });
        return out;
    };
    auto train_mag = magnitudes(train);
    auto test_mag = magnitudes(test);
    return detail::classify_1nn(train, test, workers, [&](std::size_t i, std::size_t j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < train_mag[j].size(); ++k) {
            double diff = test_mag[i][k] - train_mag[j][k];
            sum += diff * diff;
        }
        return std::sqrt(sum);
    });
}

}  // namespace evotfs
