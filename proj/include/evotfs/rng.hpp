#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace evotfs {

// splitmix64 finalizer; used to fan a master seed out into per-process
// streams so results never depend on scheduling or worker count.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stable hash(master, a, b). One (class, target) pair keys one GP process.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(master ^ mix64(a + 0x632BE59BD9B4E019ull) ^ mix64(b + 0xD6E8FEB86659FD93ull));
}

// mt19937_64 with hand-rolled draws. std::uniform_*_distribution output is
// implementation-defined; drawing directly from the engine keeps streams
// bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform in [0, n); n must be > 0
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    bool chance(double p) { return uniform01() < p; }

    // Box-Muller, two fresh draws per call (no cached spare).
    double normal(double mean, double stddev) {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace evotfs
