#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "evotfs/errors.hpp"

namespace evotfs {

/// Dynamic time warping distance with |a_i - b_j| local cost and the
/// standard three-way recurrence over the full accumulated-cost matrix.
/// Not a metric: no triangle inequality. Symmetric and zero on identical
/// inputs. O(m*n) time, O(n) space.
inline double dtw_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw EmptySeries("dtw_distance requires nonempty series");
    const std::size_t m = a.size(), n = b.size();
    std::vector<double> prev(n), cur(n);
    prev[0] = std::abs(a[0] - b[0]);
    for (std::size_t j = 1; j < n; ++j) prev[j] = prev[j - 1] + std::abs(a[0] - b[j]);
    for (std::size_t i = 1; i < m; ++i) {
        cur[0] = prev[0] + std::abs(a[i] - b[0]);
        for (std::size_t j = 1; j < n; ++j) {
            double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = std::abs(a[i] - b[j]) + best;
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

inline double dtw_distance(const std::vector<double>& a, const std::vector<double>& b) {
    return dtw_distance(std::span<const double>(a), std::span<const double>(b));
}

}  // namespace evotfs
