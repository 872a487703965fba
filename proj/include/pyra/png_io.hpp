#pragma once

// PNG encode/decode for the toolkit's on-disk formats:
//   - 8-bit rasters with 1, 3 or 4 channels (images, grids, masks as 0/255)
//   - 16-bit grayscale maps, stored value u <-> real value u / 65535
// Decoding never applies color or gamma transformations.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pyra/types.hpp"

namespace pyra {

std::vector<std::uint8_t> encode_png(const ImageRaster& image);
ImageRaster decode_png(std::span<const std::uint8_t> bytes);

ImageRaster load_image(const std::filesystem::path& path);
void save_image(const ImageRaster& image, const std::filesystem::path& path);

/// Reads a gray PNG mask and binarizes it (> threshold).
BinaryMask load_mask(const std::filesystem::path& path,
                     std::uint8_t threshold = default_mask_threshold);
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Real value in [0,1] to its 16-bit code, rounding half-up.
std::uint16_t encode_unit(double value);
inline double decode_unit(std::uint16_t code) { return code / 65535.0; }

std::vector<std::uint8_t> encode_map_png(const RealMap& map);
void save_map(const RealMap& map, const std::filesystem::path& path);

/// Loads a single-channel map. 16-bit files decode as u/65535, 8-bit files as u/255.
ProbabilityMap load_probability_map(const std::filesystem::path& path);
UncertaintyMap load_uncertainty_map(const std::filesystem::path& path);

/// Bit depth (8 or 16) of a supported PNG file, read from its header.
int png_bit_depth(const std::filesystem::path& path);

/// Writes bytes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace pyra
