#pragma once

// Seeded randomness with a fully specified algorithm. std::mt19937_64's output
// sequence is fixed by the standard, but std::*_distribution is not, so the
// sampling transforms live here.

#include <cstdint>
#include <random>
#include <string_view>

namespace pyra {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound must be > 0.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi]; returns lo exactly when lo == hi.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal draw (Box-Muller, second variate cached).
    double normal();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Derives an independent seed for a named sub-stream (FNV-1a over key, mixed with seed).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

}  // namespace pyra
