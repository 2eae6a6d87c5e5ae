// automaton.hpp -- the unary NFA whose states are the allowed edge pairs.
//
// The unary alphabet is never materialized: a string is represented by its
// length, and every language question becomes a question about walk lengths.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/bits.hpp"
#include "core/problem.hpp"

namespace lclc {

using StateId = int;

enum class Topology { Path, Cycle, Tree };

class Automaton {
public:
    // States carry their (tail, head) label pair; transitions follow the node
    // constraint of the source problem.
    std::vector<LabelPair> states;
    std::vector<std::vector<StateId>> adj;   // sorted ascending
    std::vector<std::vector<StateId>> radj;  // sorted ascending
    Bits start_states;
    Bits accept_states;
    std::vector<StateId> mirror;  // index of (b,a) for state (a,b); -1 if absent
    std::vector<int> scc_id;      // stable discovery-order component ids
    int scc_count = 0;
    std::vector<std::string> alphabet;  // tokens, for reports and DOT export

    int size() const { return static_cast<int>(states.size()); }
    bool empty() const { return states.empty(); }

    std::string state_name(StateId q) const;
    std::optional<StateId> find_state(LabelId tail, LabelId head) const;

    // Mirror of q, or an input error for asymmetric problems where (b,a) is
    // not a state.
    StateId mirror_state(StateId q) const;

    // Set of states reachable from `from` by walks of each length 0..bound.
    // layers[t] = frontier after exactly t transitions.
    std::vector<Bits> forward_layers(const Bits& from, int bound) const;

    Bits reachable_from(const Bits& seed) const;    // closure, any length >= 0
    Bits coreachable_to(const Bits& seed) const;

    // closed_walk_lengths(q, bound)[t] == true iff a walk q ~> q of exactly t
    // transitions exists (t in 1..bound; index 0 unused, always false).
    std::vector<char> closed_walk_lengths(StateId q, int bound) const;
    std::vector<char> walk_lengths(StateId from, StateId to, int bound) const;

    // Deterministic exact-length walk: lexicographically least state sequence
    // (by state index) with `len` transitions, or nullopt.
    std::optional<std::vector<StateId>> exact_length_walk(StateId from, StateId to, int len) const;

    bool has_transition(StateId a, StateId b) const;
};

Automaton build_automaton(const LclProblem& p);

// Path-mode preprocessing: keep states reachable from a start state and
// co-reachable to an accept state. Idempotent; may return the empty automaton.
Automaton prune(const Automaton& a);

// Cycle-mode restriction: keep states lying on a closed walk.
Automaton cycle_core(const Automaton& a);

// True iff seq is generated per the path/cycle definition.
bool generates(const Automaton& a, const std::vector<StateId>& seq, Topology topology);

std::string to_dot(const Automaton& a);

} // namespace lclc
