// oracle.hpp -- brute-force ground truth for solvability and state properties.
//
// Everything here is computed by plain reachability DP or exhaustive
// enumeration, independent of the classifier's shortcuts, so tests can pit
// one against the other.
#pragma once

#include <optional>
#include <vector>

#include "core/automaton.hpp"
#include "core/instance.hpp"
#include "core/problem.hpp"

namespace lclc {

struct LengthSet {
    Topology topology = Topology::Path;
    int max_n = 0;
    // solvable[m] for m in 1..max_n; paths indexed by edge count, cycles by
    // node count. Index 0 unused.
    std::vector<char> solvable;

    bool test(int m) const { return m >= 1 && m <= max_n && solvable[static_cast<size_t>(m)]; }
};

LengthSet solvable_lengths(const LclProblem& p, Topology topology, int max_n);
LengthSet solvable_lengths(const Automaton& a, Topology topology, int max_n);

// Deterministic exact solver (lexicographically least state sequence).
// Undirected instances require a symmetric problem; the traversal direction
// is fixed internally to the layout order.
std::optional<Labeling> solve_exact(const LclProblem& p, const Instance& inst);

// Closed-walk-length scan with no gcd shortcut. `bound` must be at least the
// flexibility scan bound for |Q|.
std::optional<int> brute_force_flexibility(const Automaton& a, StateId q, int bound);

// All unsolvable cycle lengths up to max_n for an automaton with repeatable
// but no flexible states; verifies that the kb+1 family is included.
std::vector<int> unsolvable_cycle_witnesses(const Automaton& a, int max_n);

// Exhaustive search over all |Gamma|^(2 edges) port labelings, filtered by
// the verifier. Refuses above the cap. Returns every accepted labeling.
std::vector<Labeling> enumerate_solutions(const LclProblem& p, const Instance& inst,
                                          long long cap = 100000000LL);

} // namespace lclc
