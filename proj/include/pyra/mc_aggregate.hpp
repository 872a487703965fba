#pragma once

// Summaries of K Monte-Carlo dropout samples of the same input: the per-pixel
// mean is the prediction, the per-pixel population std is its uncertainty.

#include <cstddef>
#include <span>

#include "pyra/types.hpp"

namespace pyra {

inline constexpr std::size_t default_mc_samples = 50;
inline constexpr double default_binarize_threshold = 0.5;

struct McSummary {
    ProbabilityMap mean;
    UncertaintyMap std;
};

/// Per pixel: mean = sum / K, std = sqrt(sum((v - mean)^2) / K). Samples are
/// accumulated in list order in double precision, so the result is bitwise
/// identical for any worker count.
McSummary aggregate(std::span<const ProbabilityMap> samples);

/// Pixel true iff value > threshold; threshold must lie in (0, 1).
BinaryMask binarize(const ProbabilityMap& map, double threshold = default_binarize_threshold);

}  // namespace pyra
