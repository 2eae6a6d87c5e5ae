// normalizer.hpp -- radius-r standard-form LCLs and their conversion to the
// node-edge-checkable formalism.
//
// A view is a string of 4r half-edge labels read along the path through the
// center node: first the side pointing away from the owning port's edge
// (approaching the center), then across the edge and onward. Missing sides
// are bot-padded: an even prefix for the near side, an even suffix for the
// far side. The port's own edge always contributes, so the far-side block is
// nonempty in every usable view.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/problem.hpp"

namespace lclc {

constexpr LabelId kBot = -1;

using View = std::vector<LabelId>;  // length 4r, kBot for padding

struct StandardLcl {
    int radius = 1;
    std::vector<std::string> alphabet;  // half-edge labels
    std::vector<View> allowed_views;    // sorted, deduplicated

    int view_length() const { return 4 * radius; }

    // Invariant checks: shape of every view, reversal closure.
    void validate() const;

    static StandardLcl from_json(const std::string& text);
    std::string to_json() const;

    std::string view_token(const View& v) const;  // ","-joined, "_" for bot
};

struct GeneralLcl {
    int radius = 1;
    std::vector<std::string> edge_alphabet;  // may be empty
    std::vector<std::string> node_alphabet;  // may be empty
    bool wants_orientation = false;
    // Views over the product alphabet; empty means "no further restriction".
    std::vector<View> allowed_views;
};

struct NormalizeOptions {
    int max_radius = 2;
    long long view_cap = 50000;       // cap on |Gamma'|
    long long pair_cap = 10000000;    // cap on candidate constraint pairs
};

// Product-alphabet encoding with the equality/orientation consistency
// constraints conjoined into the allowed views.
StandardLcl generalize_labels(const GeneralLcl& g);

// The node-edge-checkable equivalent. Solvability transfers exactly on paths
// and on cycles of length >= 2r+2 (recorded in min_valid_cycle).
LclProblem normalize(const StandardLcl& s, const NormalizeOptions& opts = {});

// Per-port view strings of a legal labeling; rejects illegal inputs.
Labeling lift_labeling(const StandardLcl& s, const Instance& inst, const Labeling& lab,
                       const NormalizeOptions& opts = {});

// Reads original labels back out of the view strings; verifies that
// overlapping views agree everywhere.
Labeling project_labeling(const StandardLcl& s, const Instance& inst, const Labeling& lifted,
                          const NormalizeOptions& opts = {});

// Conjoins a companion problem that is unsolvable on cycles shorter than
// 2r+2 and solvable everywhere else.
LclProblem guard_short_cycles(const LclProblem& normalized, int radius);

// Enumerates every well-formed view accepted by `pred`; the predicate sees
// the padded label sequence. Used by the generators and tests.
std::vector<View> enumerate_views(int radius, int alphabet_size,
                                  const std::function<bool(const View&)>& pred);

} // namespace lclc
