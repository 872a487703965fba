#include <doctest.h>

#include <random>

#include "pyra/error.hpp"
#include "pyra/gridgen.hpp"
#include "test_support.hpp"

using namespace pyra;

TEST_CASE("make_grid examples") {
    SUBCASE("single cell is all white") {
        const auto g = make_grid(GridSpec(1, 4));
        CHECK(g.raster() == ImageRaster::filled(4, 4, 1, 255));
    }
    SUBCASE("2x2 at 2 pixels") {
        CHECK(make_grid(GridSpec(2, 2)).raster() == ImageRaster(2, 2, 1, {255, 0, 0, 255}));
    }
    SUBCASE("256 cells at 256 pixels alternate every pixel") {
        const auto g = make_grid(GridSpec(256, 256));
        for (std::size_t r = 0; r < 256; ++r)
            for (std::size_t c = 0; c < 256; ++c)
                REQUIRE(g.raster().at(r, c) == (((r + c) % 2 == 0) ? 255 : 0));
    }
}

TEST_CASE("grid cells are constant, neighbours alternate, one sample per cell is the unit board") {
    for (std::size_t size : {16u, 64u, 256u}) {
        for (std::size_t n = 2; n <= size; n *= 2) {
            const GridSpec spec(n, size);
            const auto grid = make_grid(spec);
            const auto& px = grid.raster();
            const std::size_t cell = spec.cell_size();
            for (std::size_t r = 0; r < size; ++r)
                for (std::size_t c = 0; c < size; ++c)
                    REQUIRE(px.at(r, c) == px.at(r - r % cell, c - c % cell));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const auto v = px.at(i * cell, j * cell);
                    REQUIRE(v == (((i + j) % 2 == 0) ? 255 : 0));
                    if (j + 1 < n)
                        REQUIRE(v != px.at(i * cell, (j + 1) * cell));
                    if (i + 1 < n)
                        REQUIRE(v != px.at((i + 1) * cell, j * cell));
                }
            }
        }
    }
}

TEST_CASE("stack_input appends the grid as channel 3 and leaves RGB untouched") {
    std::mt19937_64 rng(5);
    const auto image = pyra::testing::random_image(rng, 256, 256, 3);
    const auto grid = make_grid(GridSpec(8, 256));
    const auto stacked = stack_input(image, grid);
    CHECK(stacked.channels() == 4);
    CHECK(stacked.width() == 256);
    CHECK(stacked.height() == 256);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(stacked.channel(k) == image.channel(k));
    CHECK(stacked.channel(3) == grid.raster());

    CHECK_THROWS_AS(stack_input(pyra::testing::random_image(rng, 128, 128, 3), make_grid(GridSpec(8, 256))),
                    ValidationError);
    CHECK_THROWS_AS(stack_input(pyra::testing::random_image(rng, 256, 256, 1), grid), ValidationError);
}

TEST_CASE("pyramid_specs") {
    const auto specs = pyramid_specs(256, default_pyramid);
    REQUIRE(specs.size() == 8);
    CHECK(specs.front().cell_size() == 128);
    CHECK(specs.back().cell_size() == 1);

    const std::vector<std::size_t> unsorted{64, 2, 16};
    const auto sorted = pyramid_specs(64, unsorted);
    CHECK(sorted[0].n() == 2);
    CHECK(sorted[2].n() == 64);

    const std::vector<std::size_t> only64{64};
    CHECK(pyramid_specs(64, only64).front().cell_size() == 1);

    const std::vector<std::size_t> three{3};
    CHECK_THROWS_AS(pyramid_specs(256, three), ValidationError);
    const std::vector<std::size_t> dup{4, 8, 4};
    CHECK_THROWS_AS(pyramid_specs(256, dup), ValidationError);
}
