#include "pyra/gridgen.hpp"

#include <algorithm>
#include <string>

#include "pyra/error.hpp"

namespace pyra {

namespace {

ImageRaster render_checkerboard(const GridSpec& spec) {
    const std::size_t size = spec.image_size();
    const std::size_t cell = spec.cell_size();
    std::vector<std::uint8_t> data(size * size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            data[r * size + c] = ((r / cell + c / cell) % 2 == 0) ? 255 : 0;
    return ImageRaster(size, size, 1, std::move(data));
}

}  // namespace

CheckerboardGrid::CheckerboardGrid(GridSpec spec)
    : spec_(spec), raster_(render_checkerboard(spec)) {}

ImageRaster stack_input(const ImageRaster& image, const CheckerboardGrid& grid) {
    if (image.channels() != 3)
        throw ValidationError("stack_input: image must have 3 channels, got " +
                              std::to_string(image.channels()));
    const auto& g = grid.raster();
    if (image.width() != g.width() || image.height() != g.height())
        throw ValidationError("stack_input: image is " + std::to_string(image.width()) + "x" +
                              std::to_string(image.height()) + " but grid is " +
                              std::to_string(g.width()) + "x" + std::to_string(g.height()));
    const std::size_t pixels = image.width() * image.height();
    const auto src = image.data();
    const auto grid_px = g.data();
    std::vector<std::uint8_t> out(pixels * 4);
    for (std::size_t i = 0; i < pixels; ++i) {
        out[4 * i + 0] = src[3 * i + 0];
        out[4 * i + 1] = src[3 * i + 1];
        out[4 * i + 2] = src[3 * i + 2];
        out[4 * i + 3] = grid_px[i];
    }
    return ImageRaster(image.width(), image.height(), 4, std::move(out));
}

std::vector<GridSpec> pyramid_specs(std::size_t image_size, std::span<const std::size_t> grid_ns) {
    std::vector<std::size_t> ns(grid_ns.begin(), grid_ns.end());
    std::sort(ns.begin(), ns.end());
    if (const auto dup = std::adjacent_find(ns.begin(), ns.end()); dup != ns.end())
        throw ValidationError("pyramid_specs: duplicate grid size " + std::to_string(*dup));
    std::vector<GridSpec> specs;
    specs.reserve(ns.size());
    for (std::size_t n : ns)
        specs.emplace_back(n, image_size);
    return specs;
}

}  // namespace pyra
