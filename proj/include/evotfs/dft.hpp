#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "evotfs/errors.hpp"

namespace evotfs {

/// Precomputed twiddle factors exp(-2*pi*i*m/n) for one transform length.
/// Reusing a plan across the thousands of candidate transforms in a GP run
/// avoids recomputing the table; the result is the plain O(n^2) sum.
struct DftPlan {
    std::size_t n = 0;
    std::vector<std::complex<double>> twiddle;

    DftPlan() = default;
    explicit DftPlan(std::size_t len) : n(len), twiddle(len) {
        for (std::size_t m = 0; m < len; ++m) {
            double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(len);
            twiddle[m] = {std::cos(angle), std::sin(angle)};
        }
    }
};

/// X[k] = sum_n x(n) * exp(-2*pi*i*k*n/T). Any length, not just powers of two.
inline std::vector<std::complex<double>> dft(std::span<const double> x, const DftPlan& plan) {
    if (plan.n != x.size())
        throw LengthMismatch("plan length " + std::to_string(plan.n) + " != input length " +
                             std::to_string(x.size()));
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const auto& w = plan.twiddle[(k * t) % n];
            re += x[t] * w.real();
            im += x[t] * w.imag();
        }
        out[k] = {re, im};
    }
    return out;
}

inline std::vector<std::complex<double>> dft(std::span<const double> x) {
    return dft(x, DftPlan(x.size()));
}

inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    return dft(std::span<const double>(x));
}

/// Phase of a bin, with arg(0) defined as 0 so zero-magnitude bins cannot
/// inject arbitrary phase differences.
inline double spectrum_arg(std::complex<double> v) {
    if (v.real() == 0.0 && v.imag() == 0.0) return 0.0;
    return std::atan2(v.imag(), v.real());
}

/// Wrap an angle difference to (-pi, pi].
inline double wrap_phase(double d) {
    double w = std::remainder(d, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

/// sqrt( sum_k (|X[k]|-|Y[k]|)^2 + sum_k wrap(arg X[k] - arg Y[k])^2 )
inline double fourier_distance_from_spectra(std::span<const std::complex<double>> x,
                                            std::span<const std::complex<double>> y) {
    if (x.size() != y.size())
        throw LengthMismatch("spectra have lengths " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double dm = std::abs(x[k]) - std::abs(y[k]);
        double dp = wrap_phase(spectrum_arg(x[k]) - spectrum_arg(y[k]));
        sum += dm * dm + dp * dp;
    }
    return std::sqrt(sum);
}

/// Frequency-domain distance over all T bins (magnitude and wrapped phase).
inline double fourier_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("series have lengths " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    DftPlan plan(x.size());
    auto sx = dft(x, plan);
    auto sy = dft(y, plan);
    return fourier_distance_from_spectra(sx, sy);
}

inline double fourier_distance(const std::vector<double>& x, const std::vector<double>& y) {
    return fourier_distance(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace evotfs
