#include "pyra/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pyra/error.hpp"

namespace pyra {

namespace {

std::uint8_t round_byte(double v) {
    const double r = std::floor(v + 0.5);
    return r <= 0.0 ? 0 : r >= 255.0 ? 255 : static_cast<std::uint8_t>(r);
}

struct SourcePoint {
    double x;
    double y;
};

SourcePoint map_point(const InverseAffine& t, std::size_t width, std::size_t height,
                      std::size_t col, std::size_t row) {
    const double cx = width / 2.0;
    const double cy = height / 2.0;
    const double dx = (col + 0.5) - cx - t.shift_x;
    const double dy = (row + 0.5) - cy - t.shift_y;
    return {cx + t.m00 * dx + t.m01 * dy, cy + t.m10 * dx + t.m11 * dy};
}

}  // namespace

InverseAffine InverseAffine::from_forward(double rotation_deg, double scale, double shift_x,
                                          double shift_y) {
    if (!(scale > 0.0))
        throw ValidationError("affine scale must be positive");
    const double theta = rotation_deg * std::numbers::pi / 180.0;
    const double c = std::cos(theta) / scale;
    const double s = std::sin(theta) / scale;
    return {c, s, -s, c, shift_x, shift_y};
}

ImageRaster warp_bilinear(const ImageRaster& image, const InverseAffine& transform) {
    const std::size_t w = image.width();
    const std::size_t h = image.height();
    const std::size_t ch = image.channels();
    const auto src = image.data();
    std::vector<std::uint8_t> out(src.size(), 0);
    auto sample = [&](long long x, long long y, std::size_t k) -> double {
        if (x < 0 || y < 0 || x >= static_cast<long long>(w) || y >= static_cast<long long>(h))
            return 0.0;
        return src[(static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)) * ch + k];
    };
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const auto p = map_point(transform, w, h, c, r);
            const double fx = p.x - 0.5;
            const double fy = p.y - 0.5;
            const double x0 = std::floor(fx);
            const double y0 = std::floor(fy);
            const double wx = fx - x0;
            const double wy = fy - y0;
            const auto xi = static_cast<long long>(x0);
            const auto yi = static_cast<long long>(y0);
            for (std::size_t k = 0; k < ch; ++k) {
                const double top = sample(xi, yi, k) * (1.0 - wx) + sample(xi + 1, yi, k) * wx;
                const double bottom =
                    sample(xi, yi + 1, k) * (1.0 - wx) + sample(xi + 1, yi + 1, k) * wx;
                out[(r * w + c) * ch + k] = round_byte(top * (1.0 - wy) + bottom * wy);
            }
        }
    }
    return ImageRaster(w, h, ch, std::move(out));
}

BinaryMask warp_nearest(const BinaryMask& mask, const InverseAffine& transform) {
    const std::size_t w = mask.width();
    const std::size_t h = mask.height();
    std::vector<std::uint8_t> out(w * h, 0);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const auto p = map_point(transform, w, h, c, r);
            const double x = std::floor(p.x);
            const double y = std::floor(p.y);
            if (x < 0.0 || y < 0.0 || x >= static_cast<double>(w) || y >= static_cast<double>(h))
                continue;
            out[r * w + c] = mask.at(static_cast<std::size_t>(y), static_cast<std::size_t>(x));
        }
    }
    return BinaryMask(w, h, std::move(out));
}

ImageRaster resize_bilinear(const ImageRaster& image, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0)
        throw ValidationError("resize: target size must be non-zero");
    if (width == image.width() && height == image.height())
        return image;
    const std::size_t sw = image.width();
    const std::size_t sh = image.height();
    const std::size_t ch = image.channels();
    const double sx = static_cast<double>(sw) / width;
    const double sy = static_cast<double>(sh) / height;
    std::vector<std::uint8_t> out(width * height * ch);
    for (std::size_t r = 0; r < height; ++r) {
        const double fy = std::clamp((r + 0.5) * sy - 0.5, 0.0, static_cast<double>(sh - 1));
        const auto y0 = static_cast<std::size_t>(fy);
        const std::size_t y1 = std::min(y0 + 1, sh - 1);
        const double wy = fy - y0;
        for (std::size_t c = 0; c < width; ++c) {
            const double fx = std::clamp((c + 0.5) * sx - 0.5, 0.0, static_cast<double>(sw - 1));
            const auto x0 = static_cast<std::size_t>(fx);
            const std::size_t x1 = std::min(x0 + 1, sw - 1);
            const double wx = fx - x0;
            for (std::size_t k = 0; k < ch; ++k) {
                const double top = image.at(y0, x0, k) * (1.0 - wx) + image.at(y0, x1, k) * wx;
                const double bottom =
                    image.at(y1, x0, k) * (1.0 - wx) + image.at(y1, x1, k) * wx;
                out[(r * width + c) * ch + k] = round_byte(top * (1.0 - wy) + bottom * wy);
            }
        }
    }
    return ImageRaster(width, height, ch, std::move(out));
}

ImageRaster resize_nearest(const ImageRaster& image, std::size_t width, std::size_t height) {
    if (width == 0 || height == 0)
        throw ValidationError("resize: target size must be non-zero");
    if (width == image.width() && height == image.height())
        return image;
    const std::size_t ch = image.channels();
    std::vector<std::uint8_t> out(width * height * ch);
    for (std::size_t r = 0; r < height; ++r) {
        const std::size_t sr = std::min((2 * r + 1) * image.height() / (2 * height), image.height() - 1);
        for (std::size_t c = 0; c < width; ++c) {
            const std::size_t sc = std::min((2 * c + 1) * image.width() / (2 * width), image.width() - 1);
            for (std::size_t k = 0; k < ch; ++k)
                out[(r * width + c) * ch + k] = image.at(sr, sc, k);
        }
    }
    return ImageRaster(width, height, ch, std::move(out));
}

ImageRaster ingest_image(const ImageRaster& image, std::size_t size) {
    return resize_bilinear(image, size, size);
}

BinaryMask ingest_mask(const ImageRaster& raster, std::size_t size, std::uint8_t threshold) {
    return mask_from_raster(resize_nearest(raster, size, size), threshold);
}

}  // namespace pyra
