#pragma once

// Dataset-level augmentation: the seeded train/test split, the grid-pyramid
// expansion (one training record per source record and grid size), and the
// classic affine / coarse-dropout / Gaussian-noise baseline.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "pyra/manifest.hpp"
#include "pyra/types.hpp"

namespace pyra {

struct Range {
    double lo;
    double hi;
};

struct ClassicAugmentParams {
    Range rotation_deg{-15.0, 15.0};
    Range scale{0.9, 1.1};
    Range translate_frac{-0.05, 0.05};  // fraction of width (x) and height (y)
    std::size_t dropout_holes = 4;
    double dropout_size_frac = 0.1;  // hole side as a fraction of the image side
    double noise_sigma = 10.0;       // in 8-bit sample units

    /// Throws ValidationError for empty ranges, non-positive scale,
    /// dropout_size_frac outside (0, 1) or negative sigma.
    void validate() const;
};

struct AugmentedSample {
    ImageRaster image;
    BinaryMask mask;
};

/// One affine draw applied to image (bilinear) and mask (nearest) alike, then
/// coarse dropout and additive Gaussian noise on the image only. Pure function
/// of its arguments.
AugmentedSample classic_augment(const ImageRaster& image, const BinaryMask& mask,
                                const ClassicAugmentParams& params, std::uint64_t seed);

/// Labels exactly n_train records as train and the rest as test. The partition
/// depends only on the seed and the set of ids; record order is preserved.
DatasetManifest split_dataset(const DatasetManifest& manifest, std::uint64_t seed,
                              std::size_t n_train);

/// Id of the record generated from `id` at grid size n: "id@gN".
std::string derived_id(std::string_view id, std::size_t n);
/// Id of the k-th classic-augmented copy of `id`: "id~aK".
std::string augmented_copy_id(std::string_view id, std::size_t k);

/// Plans the pyramid expansion without touching the filesystem. Every train
/// record yields one record per grid size (id "id@gN") pointing at
/// images/<id>.png, masks/<id>.png, gridded/<id>@gN.png and grids/gN.png; test
/// records pass through with grid_n = image_size. Output is ordered by
/// (source id, n).
DatasetManifest expand_dataset(const DatasetManifest& manifest,
                               std::span<const std::size_t> grid_ns);

struct ExpansionOptions {
    std::filesystem::path source_root;  // resolves the input manifest's relative paths
    std::filesystem::path out_dir;
    std::size_t classic_copies = 0;     // extra augmented copies per train record
    ClassicAugmentParams classic_params;
    std::uint64_t seed = 42;
};

/// Adds `copies` classic-augmented copies ("id~aK") after each train record.
DatasetManifest add_classic_copies(const DatasetManifest& manifest, std::size_t copies);

/// Runs the expansion and writes every artifact plus out_dir/manifest.jsonl.
/// Records are processed in parallel; bytes are independent of the worker count.
DatasetManifest materialize_expansion(const DatasetManifest& manifest,
                                      std::span<const std::size_t> grid_ns,
                                      const ExpansionOptions& options);

}  // namespace pyra
