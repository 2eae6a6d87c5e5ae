#include <doctest.h>

#include <string>

#include <json.hpp>

#include "lclc/lclc.h"

using nlohmann::json;

namespace {

const char* kTwoColoring = R"({
    "alphabet": ["1", "2"],
    "edge_constraint": [["1","1"], ["2","2"]],
    "node_constraint": [["1","2"], ["2","1"]]
})";

std::string take(char* s) {
    std::string out = s;
    lclc_string_free(s);
    return out;
}

} // namespace

TEST_CASE("c api: parse, classify, oracle, dot") {
    lclc_problem* p = nullptr;
    REQUIRE(lclc_problem_parse(kTwoColoring, &p) == LCLC_OK);

    char* report = nullptr;
    REQUIRE(lclc_classify(p, 0, &report) == LCLC_OK);
    auto doc = json::parse(take(report));
    CHECK(doc["type"] == "H");

    char* lens = nullptr;
    REQUIRE(lclc_oracle_lengths(p, "cycle", 10, &lens) == LCLC_OK);
    auto bits = json::parse(take(lens));
    CHECK(bits["solvable"][0] == 0);  // length 1
    CHECK(bits["solvable"][1] == 1);  // length 2
    CHECK(bits["summary"]["first_unsolvable"] == 1);

    char* dot = nullptr;
    REQUIRE(lclc_export_dot(p, &dot) == LCLC_OK);
    CHECK(take(dot).find("digraph") == 0);

    lclc_problem_free(p);
}

TEST_CASE("c api: solve returns labeling plus trace, unsolvable maps to code 3") {
    lclc_problem* p = nullptr;
    REQUIRE(lclc_problem_parse(kTwoColoring, &p) == LCLC_OK);

    char* out = nullptr;
    auto ok = lclc_solve(p, R"({"topology":"cycle","n":8,"directed":true,"seed":1})", &out);
    REQUIRE(ok == LCLC_OK);
    auto doc = json::parse(take(out));
    CHECK(doc.contains("labeling"));
    CHECK(doc["trace"].contains("max_radius"));

    char* out2 = nullptr;
    auto bad = lclc_solve(p, R"({"topology":"cycle","n":7,"directed":true,"seed":1})", &out2);
    CHECK(bad == LCLC_ERR_UNSOLVABLE);
    CHECK(std::string(lclc_last_error()).size() > 0);

    lclc_problem_free(p);
}

TEST_CASE("c api: verify emits machine-readable violations") {
    lclc_problem* p = nullptr;
    REQUIRE(lclc_problem_parse(kTwoColoring, &p) == LCLC_OK);
    const char* inst = R"({"topology":"cycle","n":3,"directed":true,"seed":0})";
    const char* lab = R"({"edges": [["1","1"],["1","1"],["1","1"]]})";
    char* out = nullptr;
    REQUIRE(lclc_verify(p, inst, lab, &out) == LCLC_OK);
    auto violations = json::parse(take(out));
    CHECK(violations.size() == 3);
    CHECK(violations[0]["constraint"] == "node");
    lclc_problem_free(p);
}

TEST_CASE("c api: normalize standard-form documents") {
    const char* std_doc = R"({
        "radius": 1,
        "alphabet": ["a"],
        "allowed_views": ["aaaa", "aa__", "__aa"]
    })";
    char* out = nullptr;
    REQUIRE(lclc_normalize(std_doc, 0, &out) == LCLC_OK);
    auto doc = json::parse(take(out));
    CHECK(doc["alphabet"].size() >= 2);
    CHECK(doc["meta"]["min_valid_cycle"] == 4);

    lclc_problem* p = nullptr;
    REQUIRE(lclc_problem_parse(doc.dump().c_str(), &p) == LCLC_OK);
    lclc_problem_free(p);
}

TEST_CASE("c api: input errors carry messages") {
    lclc_problem* p = nullptr;
    CHECK(lclc_problem_parse("{", &p) == LCLC_ERR_INPUT);
    CHECK(std::string(lclc_last_error()).find("problem document") != std::string::npos);
}
