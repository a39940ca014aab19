#pragma once

// Independent reference implementations used only by tests. These stay
// deliberately naive (no DP, no twiddle tables, no shared code with the
// library paths they check).

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracles {

// Minimum total cost over every monotone warping path from (0,0) to
// (m-1,n-1). Plain recursion, exponential: intended for lengths <= 6.
inline double dtw_path_cost(const std::vector<double>& a, const std::vector<double>& b, std::size_t i,
                            std::size_t j) {
    double cost = std::abs(a[i] - b[j]);
    if (i + 1 == a.size() && j + 1 == b.size()) return cost;
    double tail = std::numeric_limits<double>::infinity();
    if (i + 1 < a.size()) tail = std::min(tail, dtw_path_cost(a, b, i + 1, j));
    if (j + 1 < b.size()) tail = std::min(tail, dtw_path_cost(a, b, i, j + 1));
    if (i + 1 < a.size() && j + 1 < b.size()) tail = std::min(tail, dtw_path_cost(a, b, i + 1, j + 1));
    return cost + tail;
}

inline double brute_force_dtw(const std::vector<double>& a, const std::vector<double>& b) {
    return dtw_path_cost(a, b, 0, 0);
}

// Direct evaluation of X[k] = sum_n x(n) e^{-i 2 pi k n / T}, one sin/cos
// pair per term.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double angle = -2.0 * pi * static_cast<double>(k) * static_cast<double>(t) / static_cast<double>(n);
            re += x[t] * std::cos(angle);
            im += x[t] * std::sin(angle);
        }
        out[k] = {re, im};
    }
    return out;
}

// Compensated (Kahan) element-wise mean, the accumulation oracle for class
// centers.
inline std::vector<double> kahan_mean(const std::vector<std::vector<double>>& rows) {
    std::vector<double> sum(rows.front().size(), 0.0);
    std::vector<double> carry(rows.front().size(), 0.0);
    for (const auto& row : rows) {
        for (std::size_t t = 0; t < row.size(); ++t) {
            double y = row[t] - carry[t];
            double s = sum[t] + y;
            carry[t] = (s - sum[t]) - y;
            sum[t] = s;
        }
    }
    for (auto& v : sum) v /= static_cast<double>(rows.size());
    return sum;
}

}  // namespace oracles
