#include <doctest.h>

#include <random>

#include "core/nfa.hpp"

using namespace lclc;

namespace {

UnaryNfa all_accepting() {
    UnaryNfa nfa;
    nfa.num_states = 1;
    nfa.adj = {{0}};
    nfa.accept = Bits(1);
    nfa.accept.set(0);
    return nfa;
}

// Accepts every length except 1.
UnaryNfa reject_one() {
    UnaryNfa nfa;
    nfa.num_states = 3;
    nfa.start = 0;
    nfa.adj = {{1}, {2}, {2}};
    nfa.accept = Bits(3);
    nfa.accept.set(0);
    nfa.accept.set(2);
    return nfa;
}

UnaryNfa parity() {
    UnaryNfa nfa;
    nfa.num_states = 2;
    nfa.adj = {{1}, {0}};
    nfa.accept = Bits(2);
    nfa.accept.set(0);
    return nfa;
}

} // namespace

TEST_CASE("chrobak-bound promise test") {
    CHECK(chrobak_test(all_accepting()));
    CHECK_FALSE(chrobak_test(reject_one()));
    CHECK_FALSE(chrobak_test(parity()));
}

TEST_CASE("eventual periodicity on the hand examples") {
    auto p = eventual_periodicity(parity(), 1 << 10);
    REQUIRE(p);
    CHECK(p->period == 2);
    for (long long m = 0; m < 20; ++m) CHECK(p->accepts(m) == (m % 2 == 0));

    auto all = eventual_periodicity(all_accepting(), 1 << 10);
    REQUIRE(all);
    CHECK(all->period == 1);
    CHECK(all->accepts(12345));

    auto r1 = eventual_periodicity(reject_one(), 1 << 10);
    REQUIRE(r1);
    for (long long m = 0; m < 30; ++m) CHECK(r1->accepts(m) == (m != 1));
}

TEST_CASE("budget exhaustion reports undetermined") {
    std::mt19937_64 rng(5);
    UnaryNfa nfa;
    nfa.num_states = 30;
    nfa.adj.assign(30, {});
    nfa.accept = Bits(30);
    for (int q = 0; q < 30; ++q) {
        for (int r = 0; r < 30; ++r)
            if (rng() % 4 == 0) nfa.adj[static_cast<size_t>(q)].push_back(r);
        if (rng() % 2) nfa.accept.set(static_cast<size_t>(q));
    }
    // With a budget of 2 subsets this must give up immediately.
    CHECK_FALSE(eventual_periodicity(nfa, 2));
}

TEST_CASE("periodicity matches direct acceptance DP on random NFAs") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        UnaryNfa nfa;
        nfa.num_states = n;
        nfa.start = static_cast<int>(rng() % n);
        nfa.adj.assign(static_cast<size_t>(n), {});
        nfa.accept = Bits(static_cast<size_t>(n));
        for (int q = 0; q < n; ++q) {
            for (int r = 0; r < n; ++r)
                if (rng() % 3 == 0) nfa.adj[static_cast<size_t>(q)].push_back(r);
            if (rng() % 2) nfa.accept.set(static_cast<size_t>(q));
        }
        auto p = eventual_periodicity(nfa, 1 << 20);
        REQUIRE(p);
        int horizon = static_cast<int>(p->preperiod + 2 * p->period + n * n + 4);
        auto direct = nfa_accepted_lengths(nfa, horizon);
        for (int m = 0; m <= horizon; ++m)
            CHECK(p->accepts(m) == static_cast<bool>(direct[static_cast<size_t>(m)]));
    }
}
