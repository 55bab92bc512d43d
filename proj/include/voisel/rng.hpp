#pragma once

#include <cstdint>
#include <random>

#include "voisel/math.hpp"

namespace voisel {

/// Deterministic random source. Normal draws go through the inverse CDF so
/// each one consumes exactly one engine step, independent of the standard
/// library's normal_distribution implementation. That fixed draw order is
/// what keeps paired runs (greedy vs rational at c_V -> 0) on identical
/// observation streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1), never exactly 0 or 1.
    double uniform() {
        return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal(double mean, double sd) {
        return mean + sd * norm_icdf(uniform());
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free would bias at astronomical n; all our n are tiny.
        return engine_() % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace voisel
