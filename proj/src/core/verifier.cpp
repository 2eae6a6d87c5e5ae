#include "core/verifier.hpp"

#include <json.hpp>

#include "core/error.hpp"

namespace lclc {

using nlohmann::json;

std::vector<Violation> verify(const LclProblem& p, const Instance& inst, const Labeling& lab) {
    if (inst.topology == Topology::Tree) return verify_tree(p, inst, lab);
    if (!inst.directed && !p.symmetric())
        throw Error::input("solutions to asymmetric problems on undirected cyclepaths are ill-defined");
    const int m = inst.num_edges();
    if (static_cast<int>(lab.ports.size()) != m)
        throw Error::input("labeling does not cover every port");

    std::vector<Violation> out;
    // Edge pairs, read in layout order. For symmetric problems the order is
    // immaterial; for directed instances layout order is tail->head.
    for (int e = 0; e < m; ++e) {
        auto [a, b] = lab.ports[static_cast<size_t>(e)];
        if (!p.edge_allows(a, b))
            out.push_back({Violation::Kind::Edge, e, a, b, "edge"});
    }
    // Degree-2 nodes: (label of incoming port, label of outgoing port).
    const int first_internal = inst.topology == Topology::Cycle ? 0 : 1;
    const int last_internal = inst.topology == Topology::Cycle ? inst.n - 1 : inst.n - 2;
    for (int v = first_internal; v <= last_internal; ++v) {
        int e_in, e_out;
        if (inst.topology == Topology::Cycle) {
            e_in = (v + inst.n - 1) % inst.n;
            e_out = v;
        } else {
            e_in = v - 1;
            e_out = v;
        }
        LabelId a = lab.ports[static_cast<size_t>(e_in)][1];
        LabelId b = lab.ports[static_cast<size_t>(e_out)][0];
        if (!p.node_allows(a, b))
            out.push_back({Violation::Kind::Node, v, a, b, "node"});
    }
    if (inst.topology == Topology::Path) {
        LabelId first = lab.ports.front()[0];
        LabelId last = lab.ports.back()[1];
        if (!p.is_start(first))
            out.push_back({Violation::Kind::Endpoint, 0, first, -1, "start"});
        if (!p.is_end(last))
            out.push_back({Violation::Kind::Endpoint, inst.n - 1, last, -1, "end"});
    }
    return out;
}

std::vector<Violation> verify_tree(const LclProblem& p, const Instance& inst, const Labeling& lab) {
    if (static_cast<int>(lab.node_labels.size()) != inst.n)
        throw Error::input("tree labeling does not cover every node");
    std::vector<Violation> out;
    for (int v = 0; v < inst.n; ++v) {
        int u = inst.parent[static_cast<size_t>(v)];
        if (u < 0) continue;
        LabelId a = lab.node_labels[static_cast<size_t>(u)];
        LabelId b = lab.node_labels[static_cast<size_t>(v)];
        if (!p.edge_allows(a, b))
            out.push_back({Violation::Kind::Edge, v, a, b, "edge"});
    }
    return out;
}

std::string violations_to_json(const LclProblem& p, const std::vector<Violation>& v) {
    json arr = json::array();
    for (const auto& viol : v) {
        json j;
        j["kind"] = viol.kind == Violation::Kind::Edge ? "edge"
                  : viol.kind == Violation::Kind::Node ? "node" : "endpoint";
        j["index"] = viol.index;
        j["constraint"] = viol.constraint;
        j["observed"] = viol.b >= 0
            ? json::array({p.token(viol.a), p.token(viol.b)})
            : json::array({p.token(viol.a)});
        arr.push_back(j);
    }
    return arr.dump();
}

} // namespace lclc
