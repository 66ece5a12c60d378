#include <doctest.h>

#include "alonginv/json_io.hpp"
#include "alonginv/random.hpp"

using namespace alonginv;

TEST_CASE("complex matrix JSON round-trips at full precision") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        rng gen(seed * 239);
        const std::size_t r = 1 + seed % 4, c = 1 + (seed / 2) % 4;
        const cmatrix m = random_matrix(gen, r, c);
        const cmatrix back = cmatrix_from_json(json::parse(to_json(m).dump()));
        CHECK(back == m); // bit-exact through the serializer
    }
}

TEST_CASE("zn matrix JSON round-trips and normalizes negative entries") {
    const zn_matrix m(2, 3, 7, {0, 1, 2, 3, 4, 6});
    CHECK(zn_matrix_from_json(json::parse(to_json(m).dump())) == m);
    const json j{{"modulus", 7}, {"rows", 1}, {"cols", 2}, {"data", {-1, 8}}};
    const zn_matrix n = zn_matrix_from_json(j);
    CHECK(n(0, 0) == 6);
    CHECK(n(0, 1) == 1);
}

TEST_CASE("parse errors name the offending field") {
    const auto expect_message = [](const json& j, const char* needle) {
        try {
            (void)cmatrix_from_json(j, "input");
            FAIL("expected a parse error");
        } catch (const error& e) {
            CHECK(e.code() == errc::parse_error);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_message(json{{"cols", 2}, {"data", json::array()}}, "rows");
    expect_message(json{{"rows", 2}, {"data", json::array()}}, "cols");
    expect_message(json{{"rows", 1}, {"cols", 1}}, "data");
    expect_message(json{{"rows", 1}, {"cols", 1}, {"data", {"x"}}}, "data");

    try {
        (void)zn_matrix_from_json(json{{"rows", 1}, {"cols", 1}, {"data", {0}}}, "input");
        FAIL("expected a parse error");
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("modulus") != std::string::npos);
    }
}

TEST_CASE("plain real data arrays are accepted for complex matrices") {
    const json j{{"rows", 2}, {"cols", 1}, {"data", {1.5, -2.0}}};
    const cmatrix m = cmatrix_from_json(j);
    CHECK(m(0, 0) == cx(1.5, 0.0));
    CHECK(m(1, 0) == cx(-2.0, 0.0));
}

TEST_CASE("non-finite entries are rejected on construction") {
    const json j{{"rows", 1},
                 {"cols", 1},
                 {"data", {json::array({std::numeric_limits<double>::infinity(), 0.0})}}};
    CHECK_THROWS_AS((void)cmatrix_from_json(j), const error&);
}

TEST_CASE("verdict JSONL carries id, holds, residuals and seed") {
    verdict_report rep;
    rep.theorem_id = "inverse-bound";
    rep.holds = true;
    rep.residuals["actual"] = 0.5;
    rep.seed = 17;
    const json j = json::parse(to_jsonl(rep));
    CHECK(j.at("theorem_id") == "inverse-bound");
    CHECK(j.at("holds") == true);
    CHECK(j.at("residuals").at("actual") == 0.5);
    CHECK(j.at("seed") == 17);
}
