// runtime.hpp -- deterministic LOCAL-model simulator and algorithm synthesis.
//
// Execution model: every node's output is a pure function of its radius-T
// view (ids, ports, boundary markers). The context object records the
// farthest offset a node actually touched; that maximum is the radius the
// run consumed, so the locality tests hold by construction.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/automaton.hpp"
#include "core/classifier.hpp"
#include "core/instance.hpp"
#include "core/problem.hpp"

namespace lclc {

enum class Strategy {
    LoopFill,          // directed, loop state everywhere
    MirrorLoopOrient,  // undirected, mirror-flexible loop via distance-K orientation
    FlexAnchor,        // directed, anchoring + exact-length fills
    MirrorFlexAnchor,  // undirected, anchors labeled q or its mirror
    GatherDP,          // full gather + exact solve
    FiniteBrute,       // no repeatable state: constant-size instances only
    TreeOneSided,      // rooted trees / one-sided paths
};

const char* strategy_name(Strategy s);

// Inner variants for TreeOneSided.
enum class TreePlanKind { LoopFill, FlexShift, DepthSequence, FiniteBrute };

struct AlgorithmPlan {
    Strategy strategy = Strategy::GatherDP;
    Topology topology = Topology::Cycle;
    bool directed = true;

    LclProblem problem;
    Automaton automaton;   // cycle core for cycles, pruned for paths/trees

    StateId state = -1;    // chosen loop/flexible state
    int flex_k = 1;        // its (mirror-)flexibility number
    int anchor_k = 1;      // anchoring distance parameter
    int orient_span = 0;   // MirrorLoopOrient: even orientation distance
    int d_start = 0;       // shortest start ~> state (transitions)
    int d_end = 0;         // shortest state ~> accept
    int zone_left = 0;     // path end-zone lengths (edges)
    int zone_right = 0;
    int small_threshold = 0;  // n at or below which the runner gathers

    bool one_sided = false;
    int one_sided_shift = 0;
    TreePlanKind tree_kind = TreePlanKind::DepthSequence;

    std::vector<std::string> notes;
};

struct SimTrace {
    long long rounds = 0;
    long long max_radius = 0;
    long long messages_total = 0;
    std::vector<std::string> notes;
    std::string to_json() const;
};

// Plan selection per the classification; topology/direction pick the mode.
// Throws an input error for asymmetric problems on undirected instances.
AlgorithmPlan synthesize(const LclProblem& p, const Classification& c,
                         Topology topology, bool directed);

// Runs the plan; output always passes the verifier. Unsolvable instances
// raise Error::unsolvable before any labeling is produced.
std::pair<Labeling, SimTrace> run_local(const Instance& inst, const AlgorithmPlan& plan);

// Edge-checkable rooted-tree solver: converts to the directed-path problem,
// synthesizes, runs the one-sided variant along every root-to-leaf chain.
std::pair<Labeling, SimTrace> solve_rooted_tree(const LclProblem& tree_problem,
                                                const Instance& inst);

// The directed-path problem equivalent to an edge-checkable tree problem.
LclProblem tree_problem_to_path(const LclProblem& tree_problem);

// One-sided transform of a directed-path plan (ancestor-only dependence).
// GatherDP is accepted but flagged: its window is the whole ancestor chain.
AlgorithmPlan make_one_sided(const AlgorithmPlan& plan, int shift);

// ---- canonical subproblems (also exposed through the CLI / tests) ----

// Maximal anchor set with consecutive anchors k..2k-1 edges apart
// (fragments k-1..2k-2). Requires n > 2k+2.
std::vector<int> distance_k_anchoring(const Instance& inst, int k);

// Orientation whose consistently oriented fragments have >= k edges;
// returns per edge 0 = layout direction, 1 = reversed. Requires n > 4k.
std::vector<int> distance_k_orientation(const Instance& inst, int k);

// Intermediate states of a transition chain of exactly gap_len+1 steps.
std::vector<StateId> fill_gap(const Automaton& a, StateId left, StateId right, int gap_len);

// Completes a path labeling whose end segments are unset (-1 ports); the
// interior must be a valid partial chain.
Labeling fix_ends(const Automaton& a, const Instance& inst, const Labeling& partial);

// Tree anchoring per the two structural conditions: every split subtree has
// height >= k-1, and internal leaves sit exactly at their subtree's height.
// Returns tree edge indices. Requires height >= k.
std::vector<int> tree_distance_k_anchoring(const Instance& tree, int k);

} // namespace lclc
