#include "pyra/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pyra/error.hpp"

namespace pyra {

namespace {

std::string dims(std::size_t w, std::size_t h) {
    return std::to_string(w) + "x" + std::to_string(h);
}

}  // namespace

ImageRaster::ImageRaster(std::size_t width, std::size_t height, std::size_t channels,
                         std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (channels != 1 && channels != 3 && channels != 4)
        throw ValidationError("ImageRaster: channels must be 1, 3 or 4, got " +
                              std::to_string(channels));
    if (data_.size() != width * height * channels)
        throw ValidationError("ImageRaster: data length " + std::to_string(data_.size()) +
                              " does not match " + dims(width, height) + "x" +
                              std::to_string(channels));
}

ImageRaster ImageRaster::filled(std::size_t width, std::size_t height, std::size_t channels,
                                std::uint8_t value) {
    return ImageRaster(width, height, channels,
                       std::vector<std::uint8_t>(width * height * channels, value));
}

ImageRaster ImageRaster::channel(std::size_t index) const {
    if (index >= channels_)
        throw ValidationError("ImageRaster: channel index out of range");
    std::vector<std::uint8_t> out(width_ * height_);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = data_[i * channels_ + index];
    return ImageRaster(width_, height_, 1, std::move(out));
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != width * height)
        throw ValidationError("BinaryMask: data length " + std::to_string(data_.size()) +
                              " does not match " + dims(width, height));
    if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; }))
        throw ValidationError("BinaryMask: samples must be 0 or 1");
}

BinaryMask BinaryMask::filled(std::size_t width, std::size_t height, bool value) {
    return BinaryMask(width, height, std::vector<std::uint8_t>(width * height, value ? 1 : 0));
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

ImageRaster BinaryMask::to_raster() const {
    std::vector<std::uint8_t> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(),
                   [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
    return ImageRaster(width_, height_, 1, std::move(out));
}

GridSpec::GridSpec(std::size_t n, std::size_t image_size) : n_(n), image_size_(image_size) {
    if (n == 0 || image_size == 0)
        throw ValidationError("GridSpec: n and image_size must be >= 1");
    if (image_size % n != 0)
        throw ValidationError("GridSpec: image size " + std::to_string(image_size) +
                              " is not divisible by grid n " + std::to_string(n));
}

RealMap::RealMap(std::size_t width, std::size_t height, std::vector<double> data, double upper,
                 const char* type_name)
    : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != width * height)
        throw ValidationError(std::string(type_name) + ": data length " +
                              std::to_string(data_.size()) + " does not match " +
                              dims(width, height));
    for (double v : data_) {
        // Negated comparison also rejects NaN.
        if (!(v >= 0.0 && v <= upper))
            throw ValidationError(std::string(type_name) + ": value " + std::to_string(v) +
                                  " outside [0, " + std::to_string(upper) + "]");
    }
}

BinaryMask mask_from_raster(const ImageRaster& image, std::uint8_t threshold) {
    const std::size_t ch = image.channels();
    if (ch == 4)
        throw ValidationError("mask_from_raster: 4-channel rasters are not masks");
    const auto src = image.data();
    std::vector<std::uint8_t> out(image.width() * image.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::uint8_t v = src[i * ch];
        if (ch == 3 && (src[i * ch + 1] != v || src[i * ch + 2] != v))
            throw ValidationError("mask_from_raster: 3-channel mask is not gray at pixel " +
                                  std::to_string(i));
        out[i] = v > threshold ? 1 : 0;
    }
    return BinaryMask(image.width(), image.height(), std::move(out));
}

}  // namespace pyra
