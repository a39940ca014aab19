#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "evotfs/dtw.hpp"
#include "evotfs/errors.hpp"
#include "evotfs/parallel.hpp"
#include "evotfs/series.hpp"

namespace evotfs {

/// Full pairwise DTW matrix; rows are distributed across workers.
inline std::vector<std::vector<double>> pairwise_dtw(const Dataset& d, std::size_t workers = 1) {
    const std::size_t n = d.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    parallel_for(n, workers, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            m[i][j] = dtw_distance(d.series[i].values, d.series[j].values);
        }
    });
    return m;
}

struct DensityReport {
    std::size_t k = 0;
    double u_value = 0.0;
    std::map<int, double> per_class_mean;  // mean k-NN DTW distance per class
    int majority_class = 0;
};

/// Density-consistency metric U: the absolute difference between the mean
/// k-NN DTW distance of the majority class and of the minority class, with
/// neighbors drawn from the whole dataset regardless of class. For more than
/// two classes, U is the maximum over the minority classes.
inline DensityReport density_consistency(const Dataset& d, std::size_t k, std::size_t workers = 1) {
    if (k < 1) throw KTooLarge("k must be >= 1");
    auto counts = d.class_counts();
    for (const auto& [cls, n] : counts)
        if (k >= n)
            throw KTooLarge("k=" + std::to_string(k) + " >= size of class " + d.label_name(cls) + " (" +
                            std::to_string(n) + ")");

    auto matrix = pairwise_dtw(d, workers);
    const std::size_t n = d.size();

    // sum of the k nearest-neighbor distances per sample (self excluded,
    // neighbors from any class, ties by smaller index)
    std::vector<double> knn_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> order;
        order.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) order.push_back(j);
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (matrix[i][a] != matrix[i][b]) return matrix[i][a] < matrix[i][b];
                              return a < b;
                          });
        double sum = 0.0;
        for (std::size_t r = 0; r < k; ++r) sum += matrix[i][order[r]];
        knn_sum[i] = sum;
    }

    DensityReport report;
    report.k = k;
    std::size_t majority_count = 0;
    for (const auto& [cls, cnt] : counts) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (d.series[i].label == cls) total += knn_sum[i];
        report.per_class_mean[cls] = total / (static_cast<double>(k) * static_cast<double>(cnt));
        if (cnt > majority_count) {
            majority_count = cnt;
            report.majority_class = cls;
        }
    }

    double maj_mean = report.per_class_mean[report.majority_class];
    double u = 0.0;
    for (const auto& [cls, mean] : report.per_class_mean) {
        if (cls == report.majority_class) continue;
        u = std::max(u, std::abs(maj_mean - mean));
    }
    report.u_value = u;
    return report;
}

}  // namespace evotfs
