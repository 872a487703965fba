#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pyra/types.hpp"

namespace pyra {

/// Pyramid levels used when none are given: 2x2 up to 256x256.
inline const std::vector<std::size_t> default_pyramid{2, 4, 8, 16, 32, 64, 128, 256};

/// Single-channel checkerboard of spec.n x spec.n cells. Pixel (r, c) is 255 when
/// (r / cell_size + c / cell_size) is even, else 0; the top-left cell is white.
class CheckerboardGrid {
public:
    explicit CheckerboardGrid(GridSpec spec);

    const GridSpec& spec() const noexcept { return spec_; }
    const ImageRaster& raster() const noexcept { return raster_; }

private:
    GridSpec spec_;
    ImageRaster raster_;
};

inline CheckerboardGrid make_grid(const GridSpec& spec) { return CheckerboardGrid(spec); }

/// Appends the grid as a fourth channel to an RGB image of the same size.
ImageRaster stack_input(const ImageRaster& image, const CheckerboardGrid& grid);

/// Validated specs for each n, sorted ascending. Rejects non-divisors and duplicates.
std::vector<GridSpec> pyramid_specs(std::size_t image_size, std::span<const std::size_t> grid_ns);

}  // namespace pyra
