// instance.hpp -- concrete path/cycle/rooted-tree instances and labelings.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/automaton.hpp"
#include "core/problem.hpp"

namespace lclc {

// Nodes are laid out 0..n-1: paths left to right, cycles around, trees in
// parent-before-child order. Edges are canonical:
//   path:  edge i joins nodes i and i+1            (m = n-1 edges)
//   cycle: edge i joins nodes i and (i+1) mod n    (m = n edges)
//   tree:  one edge per non-root node v, joining parent[v] and v
// For directed cyclepaths the layout order is the positive direction.
struct Instance {
    Topology topology = Topology::Path;
    bool directed = true;
    int n = 0;
    std::vector<int64_t> ids;
    std::vector<int> parent;  // trees only; -1 at the root

    int num_edges() const;
    // Endpoints of edge e in layout order (tail, head for directed).
    std::array<int, 2> edge_nodes(int e) const;

    static Instance path(int n, bool directed, uint64_t seed = 0);
    static Instance cycle(int n, bool directed, uint64_t seed = 0);
    static Instance tree(std::vector<int> parents, uint64_t seed = 0);
    static Instance random_tree(int n, uint64_t seed);

    static Instance from_json(const std::string& text);
    std::string to_json() const;

    void validate() const;  // unique ids, size minimums, parent shape
};

// Port labels for cyclepaths: ports[e] = {label at edge_nodes(e)[0], label at
// edge_nodes(e)[1]}. Trees carry one label per node instead.
struct Labeling {
    std::vector<std::array<LabelId, 2>> ports;
    std::vector<LabelId> node_labels;

    static Labeling from_json(const LclProblem& p, const Instance& inst, const std::string& text);
    std::string to_json(const LclProblem& p, const Instance& inst) const;
};

// Assigns distinct ids from 1..n^2 by a seeded pseudorandom draw.
std::vector<int64_t> assign_ids(int n, uint64_t seed);

} // namespace lclc
