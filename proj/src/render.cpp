#include "pyra/render.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <vector>

#include "pyra/error.hpp"

namespace pyra {

namespace {

std::uint8_t round_byte(double v) {
    const double r = std::floor(v + 0.5);
    if (r <= 0.0)
        return 0;
    if (r >= 255.0)
        return 255;
    return static_cast<std::uint8_t>(r);
}

ImageRaster to_rgb(const ImageRaster& image) {
    if (image.channels() == 3)
        return image;
    const std::size_t pixels = image.width() * image.height();
    const std::size_t ch = image.channels();
    const auto src = image.data();
    std::vector<std::uint8_t> out(pixels * 3);
    for (std::size_t i = 0; i < pixels; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            out[3 * i + k] = ch == 1 ? src[i] : src[i * ch + k];
    return ImageRaster(image.width(), image.height(), 3, std::move(out));
}

void require_size(std::size_t w, std::size_t h, std::size_t ew, std::size_t eh,
                  const std::string& what) {
    if (w != ew || h != eh)
        throw ValidationError(what + " is " + std::to_string(w) + "x" + std::to_string(h) +
                              ", expected " + std::to_string(ew) + "x" + std::to_string(eh));
}

}  // namespace

ImageRaster overlay_grid(const ImageRaster& image, const CheckerboardGrid& grid, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("overlay_grid: alpha must lie in [0, 1]");
    const auto& g = grid.raster();
    require_size(image.width(), image.height(), g.width(), g.height(), "overlay_grid: image");
    const ImageRaster rgb = to_rgb(image);
    const auto src = rgb.data();
    const auto grid_px = g.data();
    std::vector<std::uint8_t> out(src.size());
    for (std::size_t i = 0; i < grid_px.size(); ++i)
        for (std::size_t k = 0; k < 3; ++k)
            out[3 * i + k] = round_byte((1.0 - alpha) * src[3 * i + k] + alpha * grid_px[i]);
    return ImageRaster(rgb.width(), rgb.height(), 3, std::move(out));
}

ImageRaster colorize_std(const UncertaintyMap& std_map) {
    const auto values = std_map.data();
    std::vector<std::uint8_t> out(values.size() * 3);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint8_t level = round_byte(values[i] / UncertaintyMap::upper_bound * 255.0);
        out[3 * i + 0] = level;
        out[3 * i + 1] = level;
        out[3 * i + 2] = 0;
    }
    return ImageRaster(std_map.width(), std_map.height(), 3, std::move(out));
}

ImageRaster grayscale_map(const ProbabilityMap& map) {
    const auto values = map.data();
    std::vector<std::uint8_t> out(values.size() * 3);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint8_t level = round_byte(values[i] * 255.0);
        out[3 * i + 0] = out[3 * i + 1] = out[3 * i + 2] = level;
    }
    return ImageRaster(map.width(), map.height(), 3, std::move(out));
}

ImageRaster render_panel(const ImageRaster& image, const GriddedMask& gridded_gt,
                         const ProbabilityMap& mean, const UncertaintyMap& std_map,
                         const GridSpec& spec, double alpha) {
    const std::size_t size = spec.image_size();
    require_size(image.width(), image.height(), size, size, "render_panel: image");
    require_size(gridded_gt.mask().width(), gridded_gt.mask().height(), size, size,
                 "render_panel: ground truth");
    require_size(mean.width(), mean.height(), size, size, "render_panel: mean map");
    require_size(std_map.width(), std_map.height(), size, size, "render_panel: std map");

    const ImageRaster tiles[] = {
        overlay_grid(image, make_grid(spec), alpha),
        to_rgb(gridded_gt.mask().to_raster()),
        grayscale_map(mean),
        colorize_std(std_map),
    };
    constexpr std::size_t tile_count = std::size(tiles);
    const std::size_t width = tile_count * size + (tile_count - 1) * panel_separator;
    std::vector<std::uint8_t> out(width * size * 3, 255);
    for (std::size_t t = 0; t < tile_count; ++t) {
        const std::size_t x0 = t * (size + panel_separator);
        const auto src = tiles[t].data();
        for (std::size_t r = 0; r < size; ++r)
            std::copy_n(src.data() + r * size * 3, size * 3, out.data() + (r * width + x0) * 3);
    }
    return ImageRaster(width, size, 3, std::move(out));
}

}  // namespace pyra
