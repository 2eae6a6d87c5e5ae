#include "core/automaton.hpp"

#include <algorithm>
#include <sstream>

#include "core/error.hpp"

namespace lclc {

std::string Automaton::state_name(StateId q) const {
    const auto& [a, b] = states[static_cast<size_t>(q)];
    return alphabet[static_cast<size_t>(a)] + alphabet[static_cast<size_t>(b)];
}

std::optional<StateId> Automaton::find_state(LabelId tail, LabelId head) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i].first == tail && states[i].second == head)
            return static_cast<StateId>(i);
    return std::nullopt;
}

StateId Automaton::mirror_state(StateId q) const {
    StateId m = mirror[static_cast<size_t>(q)];
    if (m < 0)
        throw Error::input("state " + state_name(q) + " has no mirror state");
    return m;
}

std::vector<Bits> Automaton::forward_layers(const Bits& from, int bound) const {
    std::vector<Bits> layers;
    layers.reserve(static_cast<size_t>(bound) + 1);
    layers.push_back(from);
    for (int t = 1; t <= bound; ++t) {
        Bits next(states.size());
        layers.back().for_each([&](size_t q) {
            for (StateId r : adj[q]) next.set(static_cast<size_t>(r));
        });
        layers.push_back(std::move(next));
    }
    return layers;
}

namespace {

Bits closure(const std::vector<std::vector<StateId>>& g, const Bits& seed) {
    Bits seen = seed;
    std::vector<StateId> stack;
    seed.for_each([&](size_t q) { stack.push_back(static_cast<StateId>(q)); });
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId r : g[static_cast<size_t>(q)]) {
            if (!seen.test(static_cast<size_t>(r))) {
                seen.set(static_cast<size_t>(r));
                stack.push_back(r);
            }
        }
    }
    return seen;
}

} // namespace

Bits Automaton::reachable_from(const Bits& seed) const { return closure(adj, seed); }
Bits Automaton::coreachable_to(const Bits& seed) const { return closure(radj, seed); }

std::vector<char> Automaton::closed_walk_lengths(StateId q, int bound) const {
    return walk_lengths(q, q, bound);
}

std::vector<char> Automaton::walk_lengths(StateId from, StateId to, int bound) const {
    std::vector<char> out(static_cast<size_t>(bound) + 1, 0);
    Bits frontier(states.size());
    frontier.set(static_cast<size_t>(from));
    for (int t = 1; t <= bound; ++t) {
        Bits next(states.size());
        frontier.for_each([&](size_t q) {
            for (StateId r : adj[q]) next.set(static_cast<size_t>(r));
        });
        frontier = std::move(next);
        if (frontier.none()) break;
        if (frontier.test(static_cast<size_t>(to))) out[static_cast<size_t>(t)] = 1;
    }
    return out;
}

std::optional<std::vector<StateId>> Automaton::exact_length_walk(StateId from, StateId to, int len) const {
    if (len < 0) return std::nullopt;
    if (len == 0) {
        if (from == to) return std::vector<StateId>{from};
        return std::nullopt;
    }
    // back[t] = states with a walk of exactly t transitions into `to`.
    std::vector<Bits> back(static_cast<size_t>(len) + 1, Bits(states.size()));
    back[0].set(static_cast<size_t>(to));
    for (int t = 1; t <= len; ++t) {
        back[static_cast<size_t>(t)] = Bits(states.size());
        back[static_cast<size_t>(t - 1)].for_each([&](size_t q) {
            for (StateId r : radj[q]) back[static_cast<size_t>(t)].set(static_cast<size_t>(r));
        });
    }
    if (!back[static_cast<size_t>(len)].test(static_cast<size_t>(from))) return std::nullopt;
    std::vector<StateId> walk;
    walk.reserve(static_cast<size_t>(len) + 1);
    walk.push_back(from);
    StateId cur = from;
    for (int rem = len; rem > 0; --rem) {
        for (StateId r : adj[static_cast<size_t>(cur)]) {
            if (back[static_cast<size_t>(rem - 1)].test(static_cast<size_t>(r))) {
                walk.push_back(r);
                cur = r;
                break;
            }
        }
    }
    return walk;
}

bool Automaton::has_transition(StateId a, StateId b) const {
    const auto& v = adj[static_cast<size_t>(a)];
    return std::binary_search(v.begin(), v.end(), b);
}

namespace {

// Iterative Tarjan; component ids renumbered in discovery order of their
// first state so reports are reproducible.
void compute_sccs(Automaton& a) {
    const int n = a.size();
    a.scc_id.assign(static_cast<size_t>(n), -1);
    a.scc_count = 0;
    if (n == 0) return;

    std::vector<int> low(static_cast<size_t>(n), -1), num(static_cast<size_t>(n), -1);
    std::vector<char> on_stack(static_cast<size_t>(n), 0);
    std::vector<StateId> stack;
    int counter = 0;
    std::vector<int> raw_id(static_cast<size_t>(n), -1);
    int raw_count = 0;

    struct Frame { StateId v; size_t i; };
    for (StateId s = 0; s < n; ++s) {
        if (num[static_cast<size_t>(s)] != -1) continue;
        std::vector<Frame> frames{{s, 0}};
        num[static_cast<size_t>(s)] = low[static_cast<size_t>(s)] = counter++;
        stack.push_back(s);
        on_stack[static_cast<size_t>(s)] = 1;
        while (!frames.empty()) {
            auto& [v, i] = frames.back();
            if (i < a.adj[static_cast<size_t>(v)].size()) {
                StateId w = a.adj[static_cast<size_t>(v)][i++];
                if (num[static_cast<size_t>(w)] == -1) {
                    num[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(v)] =
                        std::min(low[static_cast<size_t>(v)], num[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(v)] == num[static_cast<size_t>(v)]) {
                    while (true) {
                        StateId w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = 0;
                        raw_id[static_cast<size_t>(w)] = raw_count;
                        if (w == v) break;
                    }
                    ++raw_count;
                }
                StateId done = v;
                frames.pop_back();
                if (!frames.empty()) {
                    StateId parent = frames.back().v;
                    low[static_cast<size_t>(parent)] =
                        std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(done)]);
                }
            }
        }
    }

    std::vector<int> remap(static_cast<size_t>(raw_count), -1);
    int next = 0;
    for (StateId q = 0; q < n; ++q) {
        int r = raw_id[static_cast<size_t>(q)];
        if (remap[static_cast<size_t>(r)] == -1) remap[static_cast<size_t>(r)] = next++;
        a.scc_id[static_cast<size_t>(q)] = remap[static_cast<size_t>(r)];
    }
    a.scc_count = next;
}

void finish_build(Automaton& a) {
    const size_t n = a.states.size();
    a.radj.assign(n, {});
    for (size_t q = 0; q < n; ++q) {
        std::sort(a.adj[q].begin(), a.adj[q].end());
        for (StateId r : a.adj[q]) a.radj[static_cast<size_t>(r)].push_back(static_cast<StateId>(q));
    }
    for (auto& v : a.radj) std::sort(v.begin(), v.end());

    a.mirror.assign(n, -1);
    for (size_t q = 0; q < n; ++q) {
        auto m = a.find_state(a.states[q].second, a.states[q].first);
        a.mirror[q] = m ? *m : -1;
    }
    compute_sccs(a);
}

Automaton restrict_states(const Automaton& a, const Bits& keep) {
    Automaton out;
    out.alphabet = a.alphabet;
    std::vector<StateId> remap(a.states.size(), -1);
    for (size_t q = 0; q < a.states.size(); ++q) {
        if (keep.test(q)) {
            remap[q] = static_cast<StateId>(out.states.size());
            out.states.push_back(a.states[q]);
        }
    }
    out.adj.assign(out.states.size(), {});
    out.start_states = Bits(out.states.size());
    out.accept_states = Bits(out.states.size());
    for (size_t q = 0; q < a.states.size(); ++q) {
        if (remap[q] < 0) continue;
        for (StateId r : a.adj[q])
            if (remap[static_cast<size_t>(r)] >= 0)
                out.adj[static_cast<size_t>(remap[q])].push_back(remap[static_cast<size_t>(r)]);
        if (a.start_states.test(q)) out.start_states.set(static_cast<size_t>(remap[q]));
        if (a.accept_states.test(q)) out.accept_states.set(static_cast<size_t>(remap[q]));
    }
    finish_build(out);
    return out;
}

} // namespace

Automaton build_automaton(const LclProblem& p) {
    Automaton a;
    a.alphabet = p.alphabet();
    a.states = p.edge_pairs();
    const size_t n = a.states.size();
    a.adj.assign(n, {});
    a.start_states = Bits(n);
    a.accept_states = Bits(n);
    for (size_t q = 0; q < n; ++q) {
        for (size_t r = 0; r < n; ++r)
            if (p.node_allows(a.states[q].second, a.states[r].first))
                a.adj[q].push_back(static_cast<StateId>(r));
        if (p.is_start(a.states[q].first)) a.start_states.set(q);
        if (p.is_end(a.states[q].second)) a.accept_states.set(q);
    }
    finish_build(a);
    return a;
}

Automaton prune(const Automaton& a) {
    Bits fwd = a.reachable_from(a.start_states);
    Bits keep = a.coreachable_to(a.accept_states);
    keep &= fwd;
    return restrict_states(a, keep);
}

Automaton cycle_core(const Automaton& a) {
    // A state lies on a closed walk iff its SCC has an internal edge.
    std::vector<char> cyclic(static_cast<size_t>(a.scc_count), 0);
    for (size_t q = 0; q < a.states.size(); ++q)
        for (StateId r : a.adj[q])
            if (a.scc_id[q] == a.scc_id[static_cast<size_t>(r)])
                cyclic[static_cast<size_t>(a.scc_id[q])] = 1;
    Bits keep(a.states.size());
    for (size_t q = 0; q < a.states.size(); ++q)
        if (cyclic[static_cast<size_t>(a.scc_id[q])]) keep.set(q);
    return restrict_states(a, keep);
}

bool generates(const Automaton& a, const std::vector<StateId>& seq, Topology topology) {
    if (seq.empty()) return false;
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        if (!a.has_transition(seq[i], seq[i + 1])) return false;
    if (topology == Topology::Cycle)
        return a.has_transition(seq.back(), seq.front());
    return a.start_states.test(static_cast<size_t>(seq.front())) &&
           a.accept_states.test(static_cast<size_t>(seq.back()));
}

std::string to_dot(const Automaton& a) {
    std::ostringstream os;
    os << "digraph M {\n  rankdir=LR;\n";
    for (StateId q = 0; q < a.size(); ++q) {
        os << "  q" << q << " [label=\"" << a.state_name(q) << "\"";
        bool s = a.start_states.test(static_cast<size_t>(q));
        bool t = a.accept_states.test(static_cast<size_t>(q));
        if (s && t) os << ", shape=doubleoctagon";
        else if (t) os << ", shape=doublecircle";
        else if (s) os << ", shape=octagon";
        else os << ", shape=circle";
        os << "];\n";
    }
    for (size_t q = 0; q < a.states.size(); ++q)
        for (StateId r : a.adj[q]) os << "  q" << q << " -> q" << r << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace lclc
