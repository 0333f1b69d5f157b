#include "doctest.h"

#include <string>

#include "lyutab/json_io.hpp"

using namespace lyutab;

#ifndef LYUTAB_DATA_DIR
#define LYUTAB_DATA_DIR "data"
#endif

namespace {
std::string data_file(const std::string& name) {
    return std::string(LYUTAB_DATA_DIR) + "/" + name;
}
} // namespace

TEST_CASE("the shipped ideal files parse to the expected specs") {
    auto rp2 = load_ideal_file(data_file("rp2.json"));
    CHECK(rp2.ideal.n == 6);
    CHECK(rp2.ideal.num_gens() == 10);
    CHECK(rp2.p == 2);
    CHECK(rp2.include_p);

    auto c5 = load_ideal_file(data_file("cycle5.json"));
    CHECK(c5.ideal.n == 5);
    CHECK(c5.ideal.num_gens() == 5);
    CHECK(c5.include_p);

    auto ci = load_ideal_file(data_file("ci_2_in_5vars.json"));
    CHECK(ci.ideal ==
          ideal_from_supports(5, {{1, 2}, {3, 4}}));
    CHECK(!ci.include_p);

    auto m3 = load_ideal_file(data_file("maximal_3vars.json"));
    CHECK(m3.ideal == ideal_from_supports(3, {{1}, {2}, {3}}));
}

TEST_CASE("generators parse as strings or exponent vectors") {
    auto a = parse_ideal_json(R"({"vars": 3, "gens": ["x1*x2", [0, 1, 1]]})");
    CHECK(a.ideal == ideal_from_supports(3, {{1, 2}, {2, 3}}));
    CHECK(a.p == 2);
    CHECK(!a.include_p);

    auto zero = parse_ideal_json(R"({"vars": 2, "gens": []})");
    CHECK(zero.ideal.n == 2);
    CHECK(zero.ideal.num_gens() == 0);

    auto full = parse_ideal_json(R"({"vars": 2, "gens": ["x1*x2"], "p": 7, "include_p": true})");
    CHECK(full.p == 7);
    CHECK(full.include_p);
}

TEST_CASE("malformed inputs are rejected with typed errors") {
    CHECK_THROWS_AS(parse_ideal_json("not json"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"gens": []})"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 0, "gens": []})"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 26, "gens": []})"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 3, "gens": [[0, 0, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 3, "gens": [[0, 1]]})"), ParseError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 3, "gens": [[0, 2, 0]]})"),
                    NotSquareFreeError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 3, "gens": ["x1^2"]})"),
                    NotSquareFreeError);
    CHECK_THROWS_AS(parse_ideal_json(R"({"vars": 3, "gens": [], "p": 6})"), Error);
    CHECK_THROWS_AS(load_ideal_file("/nonexistent/nowhere.json"), ParseError);
}

TEST_CASE("ideal serialization round-trips") {
    auto rp2 = load_ideal_file(data_file("rp2.json"));
    auto back = parse_ideal_json(ideal_to_json(rp2));
    CHECK(back.ideal == rp2.ideal);
    CHECK(back.p == rp2.p);
    CHECK(back.include_p == rp2.include_p);
}

TEST_CASE("table serialization round-trips with provenance") {
    auto input = load_ideal_file(data_file("cycle5.json"));

    auto eq = equal_char_table(input.ideal, input.p);
    auto eq2 = table_from_json(table_to_json(eq));
    CHECK(eq2 == eq);

    auto mx = mixed_table(input.ideal, input.p, true);
    auto mx2 = table_from_json(table_to_json(mx));
    CHECK(mx2 == mx);
    CHECK(mx2.provenance.certified_level == mx.provenance.certified_level);

    CHECK_THROWS_AS(table_from_json("{\"mode\": \"weird\"}"), ParseError);
}

TEST_CASE("text rendering mentions the mode and the grid") {
    auto input = load_ideal_file(data_file("rp2.json"));
    auto mx = mixed_table(input.ideal, input.p, true);
    auto text = render_table_text(mx);
    CHECK(text.find("mixed") != std::string::npos);
    CHECK(text.find("p=2") != std::string::npos);
    CHECK(text.find("(p in the ideal)") != std::string::npos);
    CHECK(text.find("i\\j") != std::string::npos);

    auto eq = equal_char_table(input.ideal, input.p);
    auto text2 = render_table_text(eq);
    CHECK(text2.find("equal") != std::string::npos);
}
