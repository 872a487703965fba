#pragma once

#include "pyra/gridify.hpp"
#include "pyra/types.hpp"

namespace pyra {

inline constexpr double default_cell_threshold = 0.5;

/// Snaps a prediction to the grid: each cell's pixels are averaged (window and
/// stride equal to the cell size) and the whole cell is set true iff that mean
/// exceeds cell_threshold. At n == image_size this is plain thresholding.
GriddedMask snap_to_grid(const ProbabilityMap& pred, const GridSpec& spec,
                         double cell_threshold = default_cell_threshold);

}  // namespace pyra
