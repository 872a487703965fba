#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pyra/error.hpp"
#include "pyra/gridify.hpp"
#include "pyra/parallel.hpp"
#include "test_support.hpp"

using namespace pyra;

namespace {

BinaryMask single_pixel(std::size_t size, std::size_t r, std::size_t c) {
    std::vector<std::uint8_t> d(size * size, 0);
    d[r * size + c] = 1;
    return BinaryMask(size, size, std::move(d));
}

bool subset(const BinaryMask& a, const BinaryMask& b) {
    for (std::size_t i = 0; i < a.data().size(); ++i)
        if (a.data()[i] && !b.data()[i])
            return false;
    return true;
}

}  // namespace

TEST_CASE("cell_counts examples") {
    const GridSpec spec(2, 4);
    CHECK(cell_counts(BinaryMask::filled(4, 4, false), spec).values() ==
          std::vector<std::uint32_t>{0, 0, 0, 0});
    CHECK(cell_counts(BinaryMask::filled(4, 4, true), spec).values() ==
          std::vector<std::uint32_t>{4, 4, 4, 4});
    CHECK(cell_counts(single_pixel(4, 3, 3), spec).values() ==
          std::vector<std::uint32_t>{0, 0, 0, 1});
    CHECK_THROWS_AS(cell_counts(BinaryMask::filled(4, 2, false), spec), ValidationError);
}

TEST_CASE("gridify_mask examples") {
    SUBCASE("top-left pixel fills the top-left cell") {
        const auto g = gridify_mask(single_pixel(4, 0, 0), GridSpec(2, 4));
        CHECK(g.mask() == BinaryMask(4, 4, {1, 1, 0, 0,  //
                                            1, 1, 0, 0,  //
                                            0, 0, 0, 0,  //
                                            0, 0, 0, 0}));
        CHECK(g.mask().count() == 4);
    }
    SUBCASE("empty stays empty") {
        for (std::size_t n : {1u, 2u, 4u, 8u})
            CHECK(gridify_mask(BinaryMask::filled(8, 8, false), GridSpec(n, 8)).mask().count() == 0);
    }
    SUBCASE("n equal to the image size is the identity") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 20; ++i) {
            const auto m = pyra::testing::random_mask(rng, 32, 32);
            CHECK(gridify_mask(m, GridSpec(32, 32)).mask() == m);
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(gridify_mask(BinaryMask::filled(8, 8, false), GridSpec(2, 16)),
                        ValidationError);
    }
}

TEST_CASE("GriddedMask rejects masks that vary inside a cell") {
    CHECK_THROWS_AS(GriddedMask(GridSpec(2, 4), single_pixel(4, 0, 0)), ValidationError);
    CHECK_NOTHROW(GriddedMask(GridSpec(4, 4), single_pixel(4, 0, 0)));
}

TEST_CASE("gridify properties on random masks") {
    std::mt19937_64 rng(2024);
    const std::vector<std::size_t> levels{1, 2, 4, 8, 16};
    for (int trial = 0; trial < 300; ++trial) {
        const auto m = pyra::testing::random_mask(rng, 16, 16);
        std::vector<BinaryMask> by_level;
        for (std::size_t n : levels) {
            const GridSpec spec(n, 16);
            const auto g = gridify_mask(m, spec);
            REQUIRE(g.mask().data().size() == 256);
            // oracle equivalence
            REQUIRE(std::vector<std::uint8_t>(g.mask().data().begin(), g.mask().data().end()) ==
                    oracle::gridify(m, n));
            REQUIRE(cell_counts(m, spec).values() == oracle::cell_counts(m, n));
            // containment and idempotence
            REQUIRE(subset(m, g.mask()));
            REQUIRE(gridify_mask(g.mask(), spec).mask() == g.mask());
            by_level.push_back(g.mask());
        }
        // finer levels nest inside coarser ones
        for (std::size_t i = 0; i + 1 < by_level.size(); ++i)
            REQUIRE(subset(by_level[i + 1], by_level[i]));
    }
}

TEST_CASE("gridify is independent of the number of workers") {
    std::mt19937_64 rng(9);
    const auto m = pyra::testing::random_mask(rng, 256, 256);
    const GridSpec spec(16, 256);
    Executor one(1), four(4);
    const auto a = one.run([&] { return gridify_mask(m, spec).mask(); });
    const auto b = four.run([&] { return gridify_mask(m, spec).mask(); });
    CHECK(a == b);
}
