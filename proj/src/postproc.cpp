#include "pyra/postproc.hpp"

#include <string>
#include <vector>

#include "pyra/error.hpp"
#include "pyra/parallel.hpp"

namespace pyra {

GriddedMask snap_to_grid(const ProbabilityMap& pred, const GridSpec& spec, double cell_threshold) {
    if (pred.width() != spec.image_size() || pred.height() != spec.image_size())
        throw ValidationError("snap_to_grid: prediction is " + std::to_string(pred.width()) +
                              "x" + std::to_string(pred.height()) + " but grid expects " +
                              std::to_string(spec.image_size()) + "x" +
                              std::to_string(spec.image_size()));
    if (!(cell_threshold >= 0.0 && cell_threshold <= 1.0))
        throw ValidationError("snap_to_grid: cell threshold must lie in [0, 1]");

    const std::size_t n = spec.n();
    const std::size_t cell = spec.cell_size();
    const std::size_t size = spec.image_size();
    const double area = static_cast<double>(cell * cell);
    const auto px = pred.data();
    std::vector<std::uint8_t> cells(n * n);
    parallel_for(n, [&](std::size_t cell_row) {
        std::vector<double> sums(n, 0.0);
        for (std::size_t r = cell_row * cell; r < (cell_row + 1) * cell; ++r)
            for (std::size_t c = 0; c < size; ++c)
                sums[c / cell] += px[r * size + c];
        for (std::size_t j = 0; j < n; ++j)
            cells[cell_row * n + j] = sums[j] / area > cell_threshold ? 1 : 0;
    });
    return GriddedMask(spec, expand_cells(cells, spec));
}

}  // namespace pyra
