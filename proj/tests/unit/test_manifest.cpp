#include <doctest.h>

#include <string>

#include "pyra/error.hpp"
#include "pyra/manifest.hpp"
#include "test_support.hpp"

using namespace pyra;

namespace {

std::string error_of(const std::string& text) {
    try {
        (void)parse_manifest(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

const std::string canonical =
    "{\"grid_sizes\":[2,4,256],\"image_size\":256}\n"
    "{\"id\":\"a\",\"image_path\":\"img/a.png\",\"mask_path\":\"msk/a.png\",\"split\":\"train\"}\n"
    "{\"grid_image_path\":\"grids/g8.png\",\"grid_n\":8,\"gridded_mask_path\":\"gridded/b@g8.png\","
    "\"id\":\"b@g8\",\"image_path\":\"images/b.png\",\"mask_path\":\"masks/b.png\",\"split\":\"test\"}\n"
    "{\"id\":\"c\",\"image_path\":\"img/c.png\",\"mask_path\":\"msk/c.png\"}\n";

}  // namespace

TEST_CASE("canonical manifests round-trip byte for byte") {
    const auto m = parse_manifest(canonical);
    CHECK(m.image_size() == 256);
    CHECK(m.records().size() == 3);
    CHECK(m.records()[1].grid_n == 8u);
    CHECK(m.records()[1].split == Split::test);
    CHECK_FALSE(m.records()[2].split.has_value());
    CHECK(format_manifest(m) == canonical);
    CHECK(parse_manifest(format_manifest(m)) == m);
}

TEST_CASE("non-canonical input is accepted and canonicalized") {
    const std::string loose =
        "{\"image_size\": 64, \"grid_sizes\": [64, 2]}\n"
        "\n"
        "{ \"mask_path\": \"m.png\", \"id\": \"x\", \"image_path\": \"i.png\" }\n";
    const auto m = parse_manifest(loose);
    CHECK(format_manifest(m) ==
          "{\"grid_sizes\":[64,2],\"image_size\":64}\n"
          "{\"id\":\"x\",\"image_path\":\"i.png\",\"mask_path\":\"m.png\"}\n");
}

TEST_CASE("file round trip") {
    pyra::testing::TempDir dir("manifest");
    const auto m = parse_manifest(canonical);
    write_manifest(m, dir / "m.jsonl");
    CHECK(read_manifest(dir / "m.jsonl") == m);
    CHECK_THROWS_AS(read_manifest(dir / "nope.jsonl"), IoError);
}

TEST_CASE("manifest validation errors") {
    SUBCASE("duplicate id names the id") {
        const auto msg = error_of(
            "{\"image_size\":4,\"grid_sizes\":[2]}\n"
            "{\"id\":\"a\",\"image_path\":\"x\",\"mask_path\":\"y\"}\n"
            "{\"id\":\"a\",\"image_path\":\"x2\",\"mask_path\":\"y2\"}\n");
        CHECK(msg.find("duplicate") != std::string::npos);
        CHECK(msg.find("\"a\"") != std::string::npos);
    }
    SUBCASE("grid size must divide image size") {
        const auto msg = error_of("{\"image_size\":256,\"grid_sizes\":[3]}\n");
        CHECK(msg.find("does not divide") != std::string::npos);
    }
    SUBCASE("record grid_n must divide image size") {
        const auto msg = error_of(
            "{\"image_size\":256,\"grid_sizes\":[]}\n"
            "{\"grid_n\":3,\"id\":\"a\",\"image_path\":\"x\",\"mask_path\":\"y\"}\n");
        CHECK(msg.find("grid_n 3") != std::string::npos);
    }
    SUBCASE("malformed JSON reports its line number") {
        const auto msg = error_of(
            "{\"image_size\":4,\"grid_sizes\":[2]}\n"
            "{\"id\":\"a\",\"image_path\":\"x\",\"mask_path\":\"y\"}\n"
            "{\"id\":\"b\",\n");
        CHECK(msg.find("line 3") != std::string::npos);
    }
    SUBCASE("unknown keys and split values") {
        CHECK_FALSE(error_of("{\"image_size\":4,\"grid_sizes\":[2],\"extra\":1}\n").empty());
        CHECK_FALSE(error_of("{\"image_size\":4,\"grid_sizes\":[2]}\n"
                             "{\"id\":\"a\",\"image_path\":\"x\",\"mask_path\":\"y\",\"split\":\"val\"}\n")
                        .empty());
    }
    SUBCASE("missing header") {
        CHECK_FALSE(error_of("").empty());
        CHECK_FALSE(error_of("{\"id\":\"a\",\"image_path\":\"x\",\"mask_path\":\"y\"}\n").empty());
    }
}
