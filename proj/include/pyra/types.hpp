#pragma once

// Shared data model. Every type validates its invariants on construction and
// is immutable afterwards, so instances can be shared freely across threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pyra {

/// Row-major interleaved 8-bit raster with 1, 3 or 4 channels.
class ImageRaster {
public:
    ImageRaster(std::size_t width, std::size_t height, std::size_t channels,
                std::vector<std::uint8_t> data);

    static ImageRaster filled(std::size_t width, std::size_t height,
                              std::size_t channels, std::uint8_t value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t channels() const noexcept { return channels_; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

    std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel = 0) const {
        return data_[(row * width_ + col) * channels_ + channel];
    }

    /// Extracts one channel as a single-channel raster.
    ImageRaster channel(std::size_t index) const;

    friend bool operator==(const ImageRaster&, const ImageRaster&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::size_t channels_;
    std::vector<std::uint8_t> data_;
};

/// Row-major boolean mask; stored as one byte per pixel holding 0 or 1.
class BinaryMask {
public:
    BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> data);

    static BinaryMask filled(std::size_t width, std::size_t height, bool value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::span<const std::uint8_t> data() const noexcept { return data_; }

    bool at(std::size_t row, std::size_t col) const { return data_[row * width_ + col] != 0; }

    /// Number of true pixels.
    std::size_t count() const noexcept;

    /// 0/255 single-channel raster, the on-disk form of a mask.
    ImageRaster to_raster() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> data_;
};

/// An n x n grid laid over a square image of side image_size; image_size % n == 0.
class GridSpec {
public:
    GridSpec(std::size_t n, std::size_t image_size);

    std::size_t n() const noexcept { return n_; }
    std::size_t image_size() const noexcept { return image_size_; }
    std::size_t cell_size() const noexcept { return image_size_ / n_; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    std::size_t n_;
    std::size_t image_size_;
};

/// Row-major real-valued map whose samples lie in [0, upper_bound()].
class RealMap {
public:
    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::span<const double> data() const noexcept { return data_; }
    double at(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

    friend bool operator==(const RealMap&, const RealMap&) = default;

protected:
    RealMap(std::size_t width, std::size_t height, std::vector<double> data, double upper,
            const char* type_name);

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

/// Per-pixel foreground probability, values in [0, 1].
class ProbabilityMap : public RealMap {
public:
    static constexpr double upper_bound = 1.0;

    ProbabilityMap(std::size_t width, std::size_t height, std::vector<double> data)
        : RealMap(width, height, std::move(data), upper_bound, "ProbabilityMap") {}
};

/// Per-pixel population standard deviation of probabilities, values in [0, 0.5].
class UncertaintyMap : public RealMap {
public:
    static constexpr double upper_bound = 0.5;

    UncertaintyMap(std::size_t width, std::size_t height, std::vector<double> data)
        : RealMap(width, height, std::move(data), upper_bound, "UncertaintyMap") {}
};

inline constexpr std::uint8_t default_mask_threshold = 127;

/// Binarizes a 1- or 3-channel raster: pixel true iff sample > threshold.
/// Three-channel input must be gray (all channels equal); the first channel is used.
BinaryMask mask_from_raster(const ImageRaster& image,
                            std::uint8_t threshold = default_mask_threshold);

}  // namespace pyra
