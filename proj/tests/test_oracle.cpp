#include <doctest.h>

#include "catalog.hpp"
#include "core/error.hpp"
#include "core/oracle.hpp"
#include "core/properties.hpp"
#include "core/verifier.hpp"

using namespace lclc;
using namespace lclc::testing;

TEST_CASE("solvable cycle lengths for the running examples") {
    auto two = solvable_lengths(edge_coloring(2), Topology::Cycle, 10);
    for (int n = 1; n <= 10; ++n) CHECK(two.test(n) == (n % 2 == 0));

    auto orient = solvable_lengths(consistent_orientation(), Topology::Cycle, 10);
    for (int n = 1; n <= 10; ++n) CHECK(orient.test(n));

    auto three = solvable_lengths(edge_coloring(3), Topology::Path, 12);
    for (int m = 1; m <= 12; ++m) CHECK(three.test(m));
}

TEST_CASE("solve_exact matches the length oracle and passes the verifier") {
    auto p2 = edge_coloring(2);
    CHECK_FALSE(solve_exact(p2, Instance::cycle(7, true, 1)));
    auto even = solve_exact(p2, Instance::cycle(8, true, 1));
    REQUIRE(even);
    CHECK(verify(p2, Instance::cycle(8, true, 1), *even).empty());

    auto orient = consistent_orientation();
    auto inst = Instance::cycle(5, false, 2);
    auto sol = solve_exact(orient, inst);
    REQUIRE(sol);
    CHECK(verify(orient, inst, *sol).empty());
    // Loop-state fill: lexicographically least state everywhere.
    for (const auto& ports : sol->ports) CHECK(ports == sol->ports.front());
}

TEST_CASE("solve_exact rejects asymmetric problems on undirected instances") {
    CHECK_THROWS_AS(solve_exact(positive_orientation(), Instance::cycle(6, false, 3)), Error);
}

TEST_CASE("oracle agrees with exhaustive labeling search on small instances") {
    for (const auto& entry : catalog()) {
        const int top = entry.problem.alphabet_size() > 2 ? 5 : 7;
        if (entry.problem.alphabet_size() > 3) continue;  // keep the search tiny
        for (int n = 3; n <= top; ++n) {
            auto inst = Instance::cycle(n, true, 11);
            auto sols = enumerate_solutions(entry.problem, inst);
            auto lens = solvable_lengths(entry.problem, Topology::Cycle, n);
            CHECK(lens.test(n) == !sols.empty());
            if (entry.problem.symmetric()) {
                // Undirected solvability coincides for symmetric problems.
                auto undir = Instance::cycle(n, false, 11);
                auto usols = enumerate_solutions(entry.problem, undir);
                CHECK(lens.test(n) == !usols.empty());
            }
        }
        for (int n = 2; n <= top; ++n) {
            auto inst = Instance::path(n, true, 11);
            auto sols = enumerate_solutions(entry.problem, inst);
            auto lens = solvable_lengths(entry.problem, Topology::Path, n - 1);
            CHECK(lens.test(n - 1) == !sols.empty());
        }
    }
}

TEST_CASE("brute-force flexibility matches the gcd method on the catalog") {
    for (const auto& entry : catalog()) {
        auto a = build_automaton(entry.problem);
        int bound = flexibility_scan_bound(a.size());
        for (StateId q = 0; q < a.size(); ++q) {
            auto gcd_way = is_flexible(a, q);
            auto brute = brute_force_flexibility(a, q, bound);
            CHECK(gcd_way.has_value() == brute.has_value());
            if (gcd_way && brute) CHECK(*gcd_way == *brute);
        }
    }
}

TEST_CASE("brute-force flexibility rejects undersized bounds") {
    auto a = build_automaton(edge_coloring(3));
    CHECK_THROWS_AS(brute_force_flexibility(a, 0, 3), Error);
}

TEST_CASE("unsolvable cycle witnesses for edge 2-coloring are the odd lengths") {
    auto a = build_automaton(edge_coloring(2));
    auto w = unsolvable_cycle_witnesses(a, 15);
    std::vector<int> odds;
    for (int n = 1; n <= 15; n += 2) odds.push_back(n);
    CHECK(w == odds);
}

TEST_CASE("unsolvable cycle witnesses include the product family") {
    // Two disjoint cycles with per-state gcds 2 and 3: every 6k+1 (odd,
    // non-multiple-of-3) cycle is unsolvable.
    auto p = make_problem({"a", "b", "x", "y", "z"},
                          {{"a", "b"}, {"b", "a"}, {"x", "y"}, {"y", "z"}, {"z", "x"}},
                          {{"a", "a"}, {"b", "b"}, {"x", "x"}, {"y", "y"}, {"z", "z"}},
                          {}, {});
    auto a = build_automaton(p);
    auto w = unsolvable_cycle_witnesses(a, 40);
    for (int x : {7, 13, 19, 25, 31, 37})
        CHECK(std::find(w.begin(), w.end(), x) != w.end());
}

TEST_CASE("witness extraction refuses flexible automata") {
    auto a = build_automaton(edge_coloring(3));
    CHECK_THROWS_AS(unsolvable_cycle_witnesses(a, 20), Error);
}

TEST_CASE("exhaustive search refuses oversized spaces") {
    auto p = node_coloring(4);
    CHECK_THROWS_AS(enumerate_solutions(p, Instance::cycle(40, true, 1), 1000), Error);
}
