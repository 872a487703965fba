#include "pyra/rng.hpp"

#include <cmath>
#include <numbers>

namespace pyra {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    // Rejection sampling on the top of the range to avoid modulo bias.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return x % bound;
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0)
        u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(theta);
    has_cached_ = true;
    return radius * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view key) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return splitmix64(seed ^ splitmix64(h));
}

}  // namespace pyra
