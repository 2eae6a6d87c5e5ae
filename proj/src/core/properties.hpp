// properties.hpp -- repeatable/flexible/loop/mirror-flexible state analysis.
#pragma once

#include <optional>
#include <vector>

#include "core/automaton.hpp"

namespace lclc {

struct WalkLengthProfile {
    StateId state = -1;
    std::vector<int> short_lengths;  // closed-walk lengths <= 2|Q|-1
    long long gcd = 0;               // 0 when no closed walk exists
};

struct StateProperties {
    bool repeatable = false;
    bool loop = false;
    std::optional<int> flexibility;         // K, minimal
    std::optional<int> mirror_flexibility;  // K_m, minimal
    bool mirror_flexible_loop = false;
};

struct PropertyReport {
    std::vector<WalkLengthProfile> profiles;
    std::vector<StateProperties> per_state;
    bool has_repeatable = false;
    bool has_loop = false;
    bool has_flexible = false;
    bool has_mirror_flexible = false;
    bool has_mirror_flexible_loop = false;
    bool has_d3_directing_word = false;
    // Preferred witnesses: lowest-index state with the strongest property.
    StateId witness_loop = -1;
    StateId witness_flexible = -1;
    StateId witness_mirror_flexible = -1;
    StateId witness_mirror_flexible_loop = -1;
};

// Scan bound for the minimal flexibility number: no gap can survive past
// (2|Q|-1)^2, so scanning a little beyond certifies minimality.
int flexibility_scan_bound(int num_states);
int mirror_flexibility_scan_bound(int num_states);

WalkLengthProfile walk_length_profile(const Automaton& a, StateId q);

// K such that every k >= K has a closed walk q ~> q, or nullopt when
// gcd(L_q) != 1 (including the no-closed-walk case).
std::optional<int> is_flexible(const Automaton& a, StateId q);

// Defined for symmetric problems only (mirror map total on the automaton);
// throws an input error otherwise.
std::optional<int> is_mirror_flexible(const Automaton& a, StateId q);

bool has_d3_directing_word(const Automaton& a);

// Full per-state sweep. `symmetric` enables the mirror analyses.
PropertyReport analyze_properties(const Automaton& a, bool symmetric);

} // namespace lclc
