// classifier.hpp -- maps property reports to problem types A..K and emits
// solvability/complexity verdicts for all four quadrants.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/automaton.hpp"
#include "core/nfa.hpp"
#include "core/problem.hpp"
#include "core/properties.hpp"

namespace lclc {

enum class ProblemType { A, B, C, D, E, F, G, H, I, J, K, Degenerate };

enum class CountClass { Zero, Finite, Infinite, Undetermined };

enum class Complexity { Constant, LogStar, Linear, NotApplicable };

struct QuadrantVerdict {
    CountClass cls = CountClass::Zero;
    // Finite: the exact member list plus a threshold with no members beyond it.
    std::vector<long long> members;
    long long threshold = 0;
    // Infinite: every window of `lambda` consecutive lengths starting at or
    // beyond `offset` contains a member.
    long long lambda = 0;
    long long offset = 0;
    std::string producer;  // which machinery decided this cell
};

struct ComplexityVerdict {
    Complexity directed_cycles = Complexity::Constant;
    Complexity directed_paths = Complexity::Constant;
    Complexity undirected_cycles = Complexity::Constant;
    Complexity undirected_paths = Complexity::Constant;
};

struct Classification {
    ProblemType type = ProblemType::Degenerate;
    bool symmetric = false;

    QuadrantVerdict solvable_cycles, solvable_paths;
    QuadrantVerdict unsolvable_cycles, unsolvable_paths;
    ComplexityVerdict complexity;

    PropertyReport cycle_props, path_props;
    // Witnesses, in terms of the respective automata below.
    int flexible_witness = -1;          // state in cycle automaton
    int flexibility = 0;                // its K
    int path_flexible_witness = -1;     // state in pruned automaton
    int path_threshold = 0;             // h + K for that state
    std::vector<std::string> notes;

    Automaton cycle_automaton;  // closed-walk restriction
    Automaton path_automaton;   // pruned
};

const char* type_name(ProblemType t);
const char* count_class_name(CountClass c);
const char* complexity_name(Complexity c);

struct ClassifyOptions {
    uint64_t subset_budget = uint64_t{1} << 20;
};

Classification classify(const LclProblem& p, const ClassifyOptions& opts = {});

// Fresh start state fanned out to the old start set; language over m >= 1
// equals the set of solvable path lengths (in edges).
UnaryNfa to_standard_nfa(const Automaton& pruned);

// Test generator: node-edge-checkable problem whose solvable path lengths
// equal the NFA's accepted lengths.
LclProblem nfa_to_lcl(const UnaryNfa& nfa);

QuadrantVerdict path_unsolvability_class(const Automaton& pruned, uint64_t subset_budget);

std::string classification_to_json(const LclProblem& p, const Classification& c);

} // namespace lclc
