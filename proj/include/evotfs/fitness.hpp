#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "evotfs/dft.hpp"
#include "evotfs/dtw.hpp"
#include "evotfs/errors.hpp"

namespace evotfs {

/// Gaussian squash Q(d) = exp(-d^2 / (2*sigma^2)): maps a distance into
/// (0, 1], strictly decreasing, Q(0) = 1.
inline double gaussian_q(double d, double sigma) {
    if (!(sigma > 0.0)) throw InvalidSigma("sigma must be > 0, got " + std::to_string(sigma));
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

/// The target sample plus its precomputed spectrum and the fitness weights.
/// Immutable and shareable across threads; one context per GP process.
struct FitnessContext {
    std::vector<double> target;
    std::vector<std::complex<double>> target_spectrum;
    double alpha = 0.5;
    double sigma_dtw = 10.0;
    double sigma_dft = 10.0;
    DftPlan plan;
};

/// The fitness weights alone, for callers that build contexts per target.
struct FitnessParams {
    double alpha = 0.5;
    double sigma_dtw = 10.0;
    double sigma_dft = 10.0;
};

inline FitnessContext make_fitness_context(std::vector<double> target, double alpha = 0.5,
                                           double sigma_dtw = 10.0, double sigma_dft = 10.0) {
    if (target.empty()) throw EmptySeries("fitness target must be nonempty");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    if (!(sigma_dtw > 0.0)) throw InvalidSigma("sigma_dtw must be > 0");
    if (!(sigma_dft > 0.0)) throw InvalidSigma("sigma_dft must be > 0");
    FitnessContext ctx;
    ctx.plan = DftPlan(target.size());
    ctx.target_spectrum = dft(target, ctx.plan);
    ctx.target = std::move(target);
    ctx.alpha = alpha;
    ctx.sigma_dtw = sigma_dtw;
    ctx.sigma_dft = sigma_dft;
    return ctx;
}

inline FitnessContext make_fitness_context(std::vector<double> target, const FitnessParams& p) {
    return make_fitness_context(std::move(target), p.alpha, p.sigma_dtw, p.sigma_dft);
}

/// alpha * Q(D_DTW) + (1-alpha) * Q(D_DFT); in (0, 1], equal to 1 iff the
/// candidate reproduces the target exactly.
inline double fitness(std::span<const double> candidate, const FitnessContext& ctx) {
    if (candidate.size() != ctx.target.size())
        throw LengthMismatch("candidate length " + std::to_string(candidate.size()) +
                             " != target length " + std::to_string(ctx.target.size()));
    double d_time = dtw_distance(std::span<const double>(ctx.target), candidate);
    auto spectrum = dft(candidate, ctx.plan);
    double d_freq = fourier_distance_from_spectra(ctx.target_spectrum, spectrum);
    return ctx.alpha * gaussian_q(d_time, ctx.sigma_dtw) +
           (1.0 - ctx.alpha) * gaussian_q(d_freq, ctx.sigma_dft);
}

inline double fitness(const std::vector<double>& candidate, const FitnessContext& ctx) {
    return fitness(std::span<const double>(candidate), ctx);
}

}  // namespace evotfs
