#pragma once

// Grid-based ground truth: a mask is divided into the cells of a GridSpec and
// every cell containing at least one true pixel becomes entirely true.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pyra/types.hpp"

namespace pyra {

/// Row-major n x n table of true-pixel counts per cell.
class CellCounts {
public:
    CellCounts(std::size_t n, std::vector<std::uint32_t> counts);

    std::size_t n() const noexcept { return n_; }
    std::uint32_t at(std::size_t cell_row, std::size_t cell_col) const {
        return counts_[cell_row * n_ + cell_col];
    }
    const std::vector<std::uint32_t>& values() const noexcept { return counts_; }

    friend bool operator==(const CellCounts&, const CellCounts&) = default;

private:
    std::size_t n_;
    std::vector<std::uint32_t> counts_;
};

/// Full-resolution mask that is constant within every cell of its spec.
class GriddedMask {
public:
    GriddedMask(GridSpec spec, BinaryMask mask);

    const GridSpec& spec() const noexcept { return spec_; }
    const BinaryMask& mask() const noexcept { return mask_; }

private:
    GridSpec spec_;
    BinaryMask mask_;
};

CellCounts cell_counts(const BinaryMask& mask, const GridSpec& spec);

/// Cell (i, j) becomes entirely true iff it holds at least one true pixel.
GriddedMask gridify_mask(const BinaryMask& mask, const GridSpec& spec);

/// Expands an n x n cell table to a full-resolution mask.
BinaryMask expand_cells(const std::vector<std::uint8_t>& cell_values, const GridSpec& spec);

}  // namespace pyra
