#pragma once

// Figure-style panels: grid overlay, gridded ground truth, mean prediction and
// colorized uncertainty, laid out left to right.

#include <cstddef>

#include "pyra/gridgen.hpp"
#include "pyra/gridify.hpp"
#include "pyra/types.hpp"

namespace pyra {

inline constexpr double default_overlay_alpha = 0.35;
inline constexpr std::size_t panel_separator = 2;

/// Per channel: round((1 - alpha) * image + alpha * grid), half-up. Output is RGB;
/// gray input is replicated and an alpha channel is dropped.
ImageRaster overlay_grid(const ImageRaster& image, const CheckerboardGrid& grid, double alpha);

/// Linear ramp from black (std 0, confident) to yellow (std 0.5, uncertain).
ImageRaster colorize_std(const UncertaintyMap& std_map);

/// Mean prediction as an RGB gray ramp.
ImageRaster grayscale_map(const ProbabilityMap& map);

/// [overlay | gridded GT | mean | colorized std] with white separators.
ImageRaster render_panel(const ImageRaster& image, const GriddedMask& gridded_gt,
                         const ProbabilityMap& mean, const UncertaintyMap& std_map,
                         const GridSpec& spec, double alpha = default_overlay_alpha);

}  // namespace pyra
