#pragma once

#include <cstddef>
#include <vector>

#include "evotfs/errors.hpp"
#include "evotfs/rng.hpp"
#include "evotfs/series.hpp"

namespace evotfs {

/// All length-L stride-1 windows from every training series, flattened in
/// (series index, start position) order, plus the random-constant range.
/// Immutable after construction; shared read-only by all GP processes.
struct TerminalPool {
    std::vector<std::vector<double>> subseries;
    std::size_t window_len = 0;
    std::size_t windows_per_series = 0;

    static constexpr double kConstMin = -1.0;
    static constexpr double kConstMax = 1.0;

    std::size_t size() const { return subseries.size(); }
    bool empty() const { return subseries.empty(); }
};

inline TerminalPool extract_windows(const Dataset& d, std::size_t window_len) {
    if (window_len < 1) throw InvalidWindow("window length must be >= 1");
    if (window_len > d.length)
        throw WindowTooLong("window length " + std::to_string(window_len) + " exceeds series length " +
                            std::to_string(d.length));
    TerminalPool pool;
    pool.window_len = window_len;
    pool.windows_per_series = d.length - window_len + 1;
    pool.subseries.reserve(d.size() * pool.windows_per_series);
    for (const auto& s : d.series)
        for (std::size_t start = 0; start + window_len <= s.values.size(); ++start)
            pool.subseries.emplace_back(s.values.begin() + start, s.values.begin() + start + window_len);
    return pool;
}

/// ceil(T/3): the smallest L such that the 3-ary Connect covers T (3L >= T).
inline std::size_t default_window_len(std::size_t series_len) {
    if (series_len < 3) throw SeriesTooShort("series length must be >= 3, got " + std::to_string(series_len));
    return (series_len + 2) / 3;
}

/// Uniform draw from [-1, 1].
inline double sample_constant(Rng& rng) {
    return rng.uniform(TerminalPool::kConstMin, TerminalPool::kConstMax);
}

}  // namespace evotfs
