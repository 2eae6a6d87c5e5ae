// nfa.hpp -- standard unary NFAs (single start, accept set) and the two
// universality routes: the Chrobak-bound promise test and the exact subset
// periodicity analysis.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/bits.hpp"

namespace lclc {

struct UnaryNfa {
    int num_states = 0;
    int start = 0;
    std::vector<std::vector<int>> adj;
    Bits accept;

    bool empty() const { return num_states == 0; }
};

// accepts[m] for m in 0..max_len.
std::vector<char> nfa_accepted_lengths(const UnaryNfa& nfa, int max_len);

// Promise test (lengths min_len..|Q|^2): true  = every tested length accepted,
// false = a rejection was found. Under the promise "finitely many rejections",
// false is exact; with infinitely many rejections either answer may come out.
bool chrobak_test(const UnaryNfa& nfa, int min_len = 0);

// Exact eventually-periodic description of the accepted length set:
// accept(m) = m < preperiod ? prefix[m] : cycle[(m - preperiod) % period].
struct Periodicity {
    long long preperiod = 0;
    long long period = 1;
    std::vector<char> prefix;  // size preperiod, indexed from length 0
    std::vector<char> cycle;   // size period

    bool accepts(long long m) const {
        if (m < preperiod) return prefix[static_cast<size_t>(m)];
        return cycle[static_cast<size_t>((m - preperiod) % period)];
    }
};

// Subset construction along the unary chain until a repeated subset closes
// the loop; nullopt when the number of distinct subsets exceeds the budget.
std::optional<Periodicity> eventual_periodicity(const UnaryNfa& nfa, uint64_t subset_budget);

} // namespace lclc
