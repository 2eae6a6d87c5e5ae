#include <doctest.h>

#include "catalog.hpp"
#include "core/error.hpp"
#include "core/problem.hpp"

using namespace lclc;
using namespace lclc::testing;

TEST_CASE("parse round-trips a consistent-orientation document") {
    const char* doc = R"({
        "alphabet": ["H", "T"],
        "edge_constraint": [["H","T"], ["T","H"]],
        "node_constraint": [["T","H"], ["H","T"]],
        "start": ["H","T"],
        "end": ["H","T"]
    })";
    auto p = parse_problem(doc);
    CHECK(p.alphabet_size() == 2);
    CHECK(p.edge_allows(*p.find_label("H"), *p.find_label("T")));
    CHECK(p.symmetric());

    auto q = parse_problem(serialize_problem(p));
    CHECK(q.edge_pairs() == p.edge_pairs());
    CHECK(q.node_pairs() == p.node_pairs());
    CHECK(q.start_labels() == p.start_labels());
    CHECK(q.alphabet() == p.alphabet());
}

TEST_CASE("undeclared labels are rejected with a locus") {
    const char* doc = R"({
        "alphabet": ["H", "T"],
        "edge_constraint": [["H","T"]],
        "node_constraint": [["T","X"]]
    })";
    CHECK_THROWS_WITH_AS(parse_problem(doc),
                         doctest::Contains("node_constraint[0]"), Error);
}

TEST_CASE("empty edge constraint parses; empty alphabet does not") {
    auto p = parse_problem(R"({"alphabet": ["a"], "edge_constraint": []})");
    CHECK(p.edge_pairs().empty());
    CHECK_THROWS_AS(parse_problem(R"({"alphabet": []})"), Error);
}

TEST_CASE("omitted endpoint sets default to the alphabet, explicit empty means empty") {
    auto full = parse_problem(R"({"alphabet": ["a","b"], "edge_constraint": [["a","b"]]})");
    CHECK(full.start_labels().size() == 2);
    auto cycles_only = parse_problem(
        R"({"alphabet": ["a","b"], "edge_constraint": [["a","b"]], "start": [], "end": []})");
    CHECK(cycles_only.start_labels().empty());
}

TEST_CASE("symmetry per the definition") {
    CHECK(consistent_orientation().symmetric());
    CHECK_FALSE(positive_orientation().symmetric());
    CHECK(edge_coloring(2).symmetric());
    // C_start != C_end breaks symmetry even with symmetric relations.
    auto p = make_problem({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {}, {"a"}, {"b"});
    CHECK_FALSE(p.symmetric());
}

TEST_CASE("symmetry is invariant under label renaming") {
    auto renamed = make_problem({"x", "y"}, {{"x", "y"}, {"y", "x"}}, {{"y", "x"}, {"x", "y"}},
                                {"x", "y"}, {"x", "y"});
    CHECK(renamed.symmetric() == consistent_orientation().symmetric());
}

TEST_CASE("duplicate constraint entries are deduplicated") {
    auto p = make_problem({"a"}, {{"a", "a"}, {"a", "a"}}, {}, {"a"}, {"a"});
    CHECK(p.edge_pairs().size() == 1);
}

TEST_CASE("problem product conjoins constraints componentwise") {
    auto prod = problem_product(edge_coloring(2), consistent_orientation());
    CHECK(prod.alphabet_size() == 4);
    // (1.H, 1.T) allowed: edge pair (1,1) x (H,T).
    auto a = prod.find_label("1.H");
    auto b = prod.find_label("1.T");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(prod.edge_allows(*a, *b));
    auto c = prod.find_label("2.T");
    CHECK_FALSE(prod.edge_allows(*a, *c));
}
