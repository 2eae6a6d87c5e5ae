#include "core/instance.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include <json.hpp>

#include "core/error.hpp"

namespace lclc {

using nlohmann::json;

int Instance::num_edges() const {
    switch (topology) {
        case Topology::Path: return n - 1;
        case Topology::Cycle: return n;
        case Topology::Tree: return n - 1;
    }
    return 0;
}

std::array<int, 2> Instance::edge_nodes(int e) const {
    switch (topology) {
        case Topology::Path: return {e, e + 1};
        case Topology::Cycle: return {e, (e + 1) % n};
        case Topology::Tree: {
            // Edge indices skip the root: edge e belongs to the (e+1)-th node
            // in layout order when the root is node 0; in general we map by
            // counting non-root nodes.
            int seen = -1;
            for (int v = 0; v < n; ++v) {
                if (parent[static_cast<size_t>(v)] < 0) continue;
                if (++seen == e) return {parent[static_cast<size_t>(v)], v};
            }
            throw Error::input("edge index out of range");
        }
    }
    return {0, 0};
}

std::vector<int64_t> assign_ids(int n, uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    const int64_t hi = std::max<int64_t>(static_cast<int64_t>(n) * n, n);
    std::uniform_int_distribution<int64_t> dist(1, hi);
    std::unordered_set<int64_t> used;
    std::vector<int64_t> ids;
    ids.reserve(static_cast<size_t>(n));
    while (static_cast<int>(ids.size()) < n) {
        int64_t v = dist(rng);
        if (used.insert(v).second) ids.push_back(v);
    }
    return ids;
}

Instance Instance::path(int n, bool directed, uint64_t seed) {
    Instance i;
    i.topology = Topology::Path;
    i.directed = directed;
    i.n = n;
    i.ids = assign_ids(n, seed);
    i.validate();
    return i;
}

Instance Instance::cycle(int n, bool directed, uint64_t seed) {
    Instance i;
    i.topology = Topology::Cycle;
    i.directed = directed;
    i.n = n;
    i.ids = assign_ids(n, seed);
    i.validate();
    return i;
}

Instance Instance::tree(std::vector<int> parents, uint64_t seed) {
    Instance i;
    i.topology = Topology::Tree;
    i.directed = true;
    i.n = static_cast<int>(parents.size());
    i.parent = std::move(parents);
    i.ids = assign_ids(i.n, seed);
    i.validate();
    return i;
}

Instance Instance::random_tree(int n, uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xabcdef1234567ull);
    std::vector<int> parents(static_cast<size_t>(n), -1);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> dist(0, v - 1);
        parents[static_cast<size_t>(v)] = dist(rng);
    }
    return tree(std::move(parents), seed);
}

void Instance::validate() const {
    if (topology == Topology::Cycle && n < 3) throw Error::input("cycle instances need n >= 3");
    if (topology == Topology::Path && n < 2) throw Error::input("path instances need n >= 2");
    if (topology == Topology::Tree) {
        if (n < 1) throw Error::input("tree instances need n >= 1");
        if (static_cast<int>(parent.size()) != n) throw Error::input("parents array must have n entries");
        int roots = 0;
        for (int v = 0; v < n; ++v) {
            int p = parent[static_cast<size_t>(v)];
            if (p < 0) { ++roots; continue; }
            if (p >= n) throw Error::input("parent index out of range");
            if (p >= v) throw Error::input("parents must precede children in layout order");
        }
        if (roots != 1) throw Error::input("tree instances need exactly one root");
    }
    if (static_cast<int>(ids.size()) != n) throw Error::input("ids array must have n entries");
    std::unordered_set<int64_t> seen;
    for (auto id : ids) {
        if (id < 1) throw Error::input("node ids must be positive");
        if (!seen.insert(id).second) throw Error::input("node ids must be unique");
    }
}

Instance Instance::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error::input(std::string("instance document: ") + e.what());
    }
    if (!doc.is_object()) throw Error::input("instance document: expected a JSON object");
    Instance inst;
    std::string topo = doc.value("topology", "path");
    if (topo == "path") inst.topology = Topology::Path;
    else if (topo == "cycle") inst.topology = Topology::Cycle;
    else if (topo == "tree" || topo == "rooted-tree") inst.topology = Topology::Tree;
    else throw Error::input("topology: expected 'path', 'cycle' or 'tree'");
    inst.directed = doc.value("directed", inst.topology == Topology::Tree);
    if (inst.topology == Topology::Tree) inst.directed = true;

    if (doc.contains("parents")) {
        inst.parent = doc["parents"].get<std::vector<int>>();
        inst.n = static_cast<int>(inst.parent.size());
    }
    if (doc.contains("n")) inst.n = doc["n"].get<int>();
    if (inst.topology == Topology::Tree && inst.parent.empty())
        throw Error::input("tree instances need a 'parents' array");
    if (inst.n <= 0) throw Error::input("instance document: missing or invalid 'n'");

    if (doc.contains("ids")) inst.ids = doc["ids"].get<std::vector<int64_t>>();
    else inst.ids = assign_ids(inst.n, doc.value("seed", uint64_t{0}));
    inst.validate();
    return inst;
}

std::string Instance::to_json() const {
    json doc;
    doc["topology"] = topology == Topology::Path ? "path" : topology == Topology::Cycle ? "cycle" : "tree";
    doc["directed"] = directed;
    doc["n"] = n;
    doc["ids"] = ids;
    if (topology == Topology::Tree) doc["parents"] = parent;
    return doc.dump(2);
}

Labeling Labeling::from_json(const LclProblem& p, const Instance& inst, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error::input(std::string("labeling document: ") + e.what());
    }
    Labeling lab;
    auto resolve = [&](const json& j, const std::string& locus) {
        if (!j.is_string()) throw Error::input(locus + ": expected a label string");
        auto id = p.find_label(j.get<std::string>());
        if (!id) throw Error::input(locus + ": unknown label '" + j.get<std::string>() + "'");
        return *id;
    };
    if (inst.topology == Topology::Tree) {
        if (!doc.contains("nodes")) throw Error::input("tree labeling: missing 'nodes'");
        const json& nodes = doc["nodes"];
        if (static_cast<int>(nodes.size()) != inst.n)
            throw Error::input("tree labeling: expected one label per node");
        for (size_t i = 0; i < nodes.size(); ++i)
            lab.node_labels.push_back(resolve(nodes[i], "nodes[" + std::to_string(i) + "]"));
        return lab;
    }
    if (!doc.contains("edges")) throw Error::input("labeling: missing 'edges'");
    const json& edges = doc["edges"];
    if (static_cast<int>(edges.size()) != inst.num_edges())
        throw Error::input("labeling: expected one port pair per edge");
    for (size_t e = 0; e < edges.size(); ++e) {
        const json& pr = edges[e];
        const std::string locus = "edges[" + std::to_string(e) + "]";
        if (!pr.is_array() || pr.size() != 2) throw Error::input(locus + ": expected a pair");
        lab.ports.push_back({resolve(pr[0], locus), resolve(pr[1], locus)});
    }
    return lab;
}

std::string Labeling::to_json(const LclProblem& p, const Instance& inst) const {
    json doc;
    if (inst.topology == Topology::Tree) {
        json nodes = json::array();
        for (auto l : node_labels) nodes.push_back(p.token(l));
        doc["nodes"] = nodes;
    } else {
        json edges = json::array();
        for (const auto& pr : ports) edges.push_back({p.token(pr[0]), p.token(pr[1])});
        doc["edges"] = edges;
    }
    return doc.dump(2);
}

} // namespace lclc
