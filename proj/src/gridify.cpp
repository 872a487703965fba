#include "pyra/gridify.hpp"

#include <string>

#include "pyra/error.hpp"
#include "pyra/parallel.hpp"

namespace pyra {

namespace {

void check_square(std::size_t width, std::size_t height, const GridSpec& spec, const char* op) {
    if (width != spec.image_size() || height != spec.image_size())
        throw ValidationError(std::string(op) + ": mask is " + std::to_string(width) + "x" +
                              std::to_string(height) + " but grid expects " +
                              std::to_string(spec.image_size()) + "x" +
                              std::to_string(spec.image_size()));
}

}  // namespace

CellCounts::CellCounts(std::size_t n, std::vector<std::uint32_t> counts)
    : n_(n), counts_(std::move(counts)) {
    if (counts_.size() != n * n)
        throw ValidationError("CellCounts: expected " + std::to_string(n * n) + " entries");
}

GriddedMask::GriddedMask(GridSpec spec, BinaryMask mask) : spec_(spec), mask_(std::move(mask)) {
    check_square(mask_.width(), mask_.height(), spec_, "GriddedMask");
    const std::size_t size = spec_.image_size();
    const std::size_t cell = spec_.cell_size();
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            if (mask_.at(r, c) != mask_.at(r - r % cell, c - c % cell))
                throw ValidationError("GriddedMask: mask is not constant within cell (" +
                                      std::to_string(r / cell) + ", " +
                                      std::to_string(c / cell) + ")");
}

CellCounts cell_counts(const BinaryMask& mask, const GridSpec& spec) {
    check_square(mask.width(), mask.height(), spec, "cell_counts");
    const std::size_t n = spec.n();
    const std::size_t cell = spec.cell_size();
    const std::size_t size = spec.image_size();
    const auto px = mask.data();
    std::vector<std::uint32_t> counts(n * n, 0);
    // One task per cell row; each writes only its own n entries.
    parallel_for(n, [&](std::size_t cell_row) {
        std::uint32_t* row_counts = counts.data() + cell_row * n;
        for (std::size_t r = cell_row * cell; r < (cell_row + 1) * cell; ++r) {
            const std::uint8_t* line = px.data() + r * size;
            for (std::size_t c = 0; c < size; ++c)
                row_counts[c / cell] += line[c];
        }
    });
    return CellCounts(n, std::move(counts));
}

BinaryMask expand_cells(const std::vector<std::uint8_t>& cell_values, const GridSpec& spec) {
    const std::size_t n = spec.n();
    if (cell_values.size() != n * n)
        throw ValidationError("expand_cells: expected " + std::to_string(n * n) + " cells");
    const std::size_t cell = spec.cell_size();
    const std::size_t size = spec.image_size();
    std::vector<std::uint8_t> out(size * size);
    parallel_for(size, [&](std::size_t r) {
        const std::uint8_t* cells = cell_values.data() + (r / cell) * n;
        std::uint8_t* line = out.data() + r * size;
        for (std::size_t c = 0; c < size; ++c)
            line[c] = cells[c / cell] ? 1 : 0;
    });
    return BinaryMask(size, size, std::move(out));
}

GriddedMask gridify_mask(const BinaryMask& mask, const GridSpec& spec) {
    const CellCounts counts = cell_counts(mask, spec);
    std::vector<std::uint8_t> cells(counts.values().size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i] = counts.values()[i] > 0 ? 1 : 0;
    return GriddedMask(spec, expand_cells(cells, spec));
}

}  // namespace pyra
