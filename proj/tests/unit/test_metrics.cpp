#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pyra/error.hpp"
#include "pyra/gridify.hpp"
#include "pyra/metrics.hpp"
#include "test_support.hpp"

using namespace pyra;

namespace {

// 1x4 masks: A = {0,1}, B = {1,2}; overlap 1, union 3.
const BinaryMask A(4, 1, {1, 1, 0, 0});
const BinaryMask B(4, 1, {0, 1, 1, 0});
const BinaryMask Empty = BinaryMask::filled(4, 1, false);

}  // namespace

TEST_CASE("iou examples") {
    CHECK(iou(A, A) == 1.0);
    CHECK(iou(A, BinaryMask(4, 1, {0, 0, 1, 1})) == 0.0);
    CHECK(iou(A, B) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(iou(Empty, Empty) == 1.0);
    CHECK(iou(Empty, A) == 0.0);
    CHECK_THROWS_AS(iou(A, BinaryMask::filled(2, 2, false)), ValidationError);
}

TEST_CASE("dice examples") {
    CHECK(dice(A, A) == 1.0);
    CHECK(dice(A, B) == 0.5);
    CHECK(dice(Empty, A) == 0.0);
    CHECK(dice(A, Empty) == 0.0);
    CHECK(dice(Empty, Empty) == 1.0);
}

TEST_CASE("metrics agree with the bitset oracle, are symmetric, and satisfy the dice/iou identity") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = pyra::testing::random_mask(rng, 32, 32);
        const auto b = pyra::testing::random_mask(rng, 32, 32);
        const auto expected = oracle::set_scores(a, b);
        const double i = iou(a, b);
        const double d = dice(a, b);
        REQUIRE(i == expected.iou);
        REQUIRE(d == expected.dice);
        REQUIRE(iou(b, a) == i);
        REQUIRE(dice(b, a) == d);
        REQUIRE(std::abs(d - 2.0 * i / (1.0 + i)) <= 1e-9);
    }
}

TEST_CASE("a gridified mask scores perfectly against itself at every level") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto gt = pyra::testing::random_mask(rng, 64, 64);
        for (std::size_t n = 1; n <= 64; n *= 2) {
            const auto g = gridify_mask(gt, GridSpec(n, 64)).mask();
            REQUIRE(dice(g, g) == 1.0);
        }
    }
}

TEST_CASE("evaluate aggregates by unweighted mean in id order") {
    SUBCASE("single identical pair") {
        const std::vector<EvalPair> pairs{{"x", A, A}};
        const auto r = evaluate(pairs);
        CHECK(r.miou == 1.0);
        CHECK(r.mean_dice == 1.0);
        CHECK(r.count == 1);
    }
    SUBCASE("iou {1/3, 1} averages to 2/3") {
        const std::vector<EvalPair> pairs{{"b", A, A}, {"a", A, B}};
        const auto r = evaluate(pairs);
        CHECK(r.miou == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(r.mean_dice == doctest::Approx(0.75).epsilon(1e-15));
        REQUIRE(r.per_image.size() == 2);
        CHECK(r.per_image[0].id == "a");
        CHECK(r.per_image[1].id == "b");
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(evaluate(std::vector<EvalPair>{}), ValidationError);
        const std::vector<EvalPair> dup{{"a", A, A}, {"a", A, B}};
        CHECK_THROWS_AS(evaluate(dup), ValidationError);
    }
}

TEST_CASE("report JSON uses six decimals and fixed key order") {
    const std::vector<EvalPair> pairs{{"a", A, B}};
    const auto json = report_to_json(evaluate(pairs));
    CHECK(json.find("\"miou\": 0.333333") != std::string::npos);
    CHECK(json.find("\"mean_dice\": 0.500000") != std::string::npos);
    CHECK(json.find("\"count\": 1") != std::string::npos);
    CHECK(json.find("{\"id\": \"a\", \"iou\": 0.333333, \"dice\": 0.500000}") != std::string::npos);
    CHECK(json.find("miou") < json.find("mean_dice"));
    CHECK(json.find("mean_dice") < json.find("per_image"));
}
