#pragma once

// Resampling helpers shared by ingestion and augmentation. Pixel (x, y) has its
// center at continuous coordinates (x + 0.5, y + 0.5).

#include <cstddef>
#include <cstdint>

#include "pyra/types.hpp"

namespace pyra {

/// Maps an output pixel center to a source location:
/// src = center + linear * (dst - center - shift).
struct InverseAffine {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;
    double shift_x = 0.0, shift_y = 0.0;

    /// Inverse of "rotate by degrees, scale, then translate" about the image center.
    static InverseAffine from_forward(double rotation_deg, double scale, double shift_x,
                                      double shift_y);
};

/// Bilinear warp; samples outside the source read as 0.
ImageRaster warp_bilinear(const ImageRaster& image, const InverseAffine& transform);
/// Nearest-neighbour warp; samples outside the source read as false.
BinaryMask warp_nearest(const BinaryMask& mask, const InverseAffine& transform);

/// Bilinear resize with edge clamping (half-pixel alignment). Same size returns a copy.
ImageRaster resize_bilinear(const ImageRaster& image, std::size_t width, std::size_t height);
ImageRaster resize_nearest(const ImageRaster& image, std::size_t width, std::size_t height);

/// Square-resizes an ingested photo (bilinear) when it is not already size x size.
ImageRaster ingest_image(const ImageRaster& image, std::size_t size);
/// Square-resizes a mask raster (nearest) and binarizes it.
BinaryMask ingest_mask(const ImageRaster& raster, std::size_t size,
                       std::uint8_t threshold = default_mask_threshold);

}  // namespace pyra
