// verifier.hpp -- ground-truth acceptance of labelings on concrete instances.
#pragma once

#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/problem.hpp"

namespace lclc {

struct Violation {
    enum class Kind { Edge, Node, Endpoint } kind;
    int index;        // edge index or node index
    LabelId a, b;     // observed pair (b = -1 for endpoint violations)
    std::string constraint;  // "edge", "node", "start", "end"
};

// Empty result means the labeling is a solution. Undirected instances require
// a symmetric problem; missing/short labelings are input errors.
std::vector<Violation> verify(const LclProblem& p, const Instance& inst, const Labeling& lab);

// Rooted-tree variant: `p` is edge-checkable over node labels, constraint
// checked on every (parent, child) pair.
std::vector<Violation> verify_tree(const LclProblem& p, const Instance& inst, const Labeling& lab);

std::string violations_to_json(const LclProblem& p, const std::vector<Violation>& v);

} // namespace lclc
