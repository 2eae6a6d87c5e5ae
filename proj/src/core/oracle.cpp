#include "core/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "core/error.hpp"
#include "core/properties.hpp"
#include "core/verifier.hpp"

namespace lclc {

LengthSet solvable_lengths(const LclProblem& p, Topology topology, int max_n) {
    return solvable_lengths(build_automaton(p), topology, max_n);
}

LengthSet solvable_lengths(const Automaton& a, Topology topology, int max_n) {
    if (max_n < 1) throw Error::input("max_n must be >= 1");
    LengthSet out;
    out.topology = topology;
    out.max_n = max_n;
    out.solvable.assign(static_cast<size_t>(max_n) + 1, 0);
    const size_t n = a.states.size();
    if (n == 0) return out;

    if (topology == Topology::Path) {
        // Path with m edges <=> m states start -> accept (m-1 transitions).
        Bits frontier = a.start_states;
        for (int m = 1; m <= max_n; ++m) {
            if (m > 1) {
                Bits next(n);
                frontier.for_each([&](size_t q) {
                    for (StateId r : a.adj[q]) next.set(static_cast<size_t>(r));
                });
                frontier = std::move(next);
                if (frontier.none()) break;
            }
            if (frontier.intersects(a.accept_states)) out.solvable[static_cast<size_t>(m)] = 1;
        }
        return out;
    }

    // Cycle with n nodes <=> closed walk of n transitions: track the diagonal
    // of the boolean transition powers.
    std::vector<Bits> rows(n, Bits(n));
    for (size_t q = 0; q < n; ++q)
        for (StateId r : a.adj[q]) rows[q].set(static_cast<size_t>(r));
    std::vector<Bits> pow = rows;
    for (int len = 1; len <= max_n; ++len) {
        if (len > 1) {
            std::vector<Bits> next(n, Bits(n));
            for (size_t q = 0; q < n; ++q)
                pow[q].for_each([&](size_t r) { next[q] |= rows[r]; });
            pow = std::move(next);
        }
        for (size_t q = 0; q < n; ++q)
            if (pow[q].test(q)) { out.solvable[static_cast<size_t>(len)] = 1; break; }
    }
    return out;
}

namespace {

Labeling labeling_from_states(const Automaton& a, const std::vector<StateId>& seq) {
    Labeling lab;
    lab.ports.reserve(seq.size());
    for (StateId q : seq) lab.ports.push_back({a.states[static_cast<size_t>(q)].first,
                                               a.states[static_cast<size_t>(q)].second});
    return lab;
}

std::optional<Labeling> solve_tree(const LclProblem& p, const Instance& inst) {
    const int n = inst.n;
    const int k = p.alphabet_size();
    // feasible[v] = labels that admit a completion of v's subtree.
    std::vector<Bits> feasible(static_cast<size_t>(n), Bits(static_cast<size_t>(k)));
    std::vector<std::vector<int>> children(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        if (inst.parent[static_cast<size_t>(v)] >= 0)
            children[static_cast<size_t>(inst.parent[static_cast<size_t>(v)])].push_back(v);
    for (int v = n - 1; v >= 0; --v) {
        for (LabelId c = 0; c < k; ++c) {
            bool ok = true;
            for (int w : children[static_cast<size_t>(v)]) {
                bool has = false;
                feasible[static_cast<size_t>(w)].for_each([&](size_t d) {
                    if (!has && p.edge_allows(c, static_cast<LabelId>(d))) has = true;
                });
                if (!has) { ok = false; break; }
            }
            if (ok) feasible[static_cast<size_t>(v)].set(static_cast<size_t>(c));
        }
    }
    Labeling lab;
    lab.node_labels.assign(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        int u = inst.parent[static_cast<size_t>(v)];
        LabelId chosen = -1;
        for (LabelId c = 0; c < k && chosen < 0; ++c) {
            if (!feasible[static_cast<size_t>(v)].test(static_cast<size_t>(c))) continue;
            if (u >= 0 && !p.edge_allows(lab.node_labels[static_cast<size_t>(u)], c)) continue;
            chosen = c;
        }
        if (chosen < 0) return std::nullopt;
        lab.node_labels[static_cast<size_t>(v)] = chosen;
    }
    return lab;
}

} // namespace

std::optional<Labeling> solve_exact(const LclProblem& p, const Instance& inst) {
    if (inst.n > 200000)
        throw Error::budget("exact solver capped at 200000 nodes");
    if (inst.topology == Topology::Tree) return solve_tree(p, inst);
    if (!inst.directed && !p.symmetric())
        throw Error::input("solve_exact on undirected instances requires a symmetric problem");

    Automaton a = build_automaton(p);
    const size_t n = a.states.size();
    if (n == 0) return std::nullopt;
    const int m = inst.num_edges();

    if (inst.topology == Topology::Path) {
        // back[t] = states that can finish the last t+1 edges (t transitions
        // remaining) ending in an accept state.
        std::vector<Bits> back(static_cast<size_t>(m), Bits(n));
        back[0] = a.accept_states;
        for (int t = 1; t < m; ++t) {
            back[static_cast<size_t>(t)] = Bits(n);
            back[static_cast<size_t>(t - 1)].for_each([&](size_t q) {
                for (StateId r : a.radj[q]) back[static_cast<size_t>(t)].set(static_cast<size_t>(r));
            });
        }
        StateId cur = -1;
        for (StateId q = 0; q < static_cast<StateId>(n); ++q) {
            if (a.start_states.test(static_cast<size_t>(q)) &&
                back[static_cast<size_t>(m - 1)].test(static_cast<size_t>(q))) { cur = q; break; }
        }
        if (cur < 0) return std::nullopt;
        std::vector<StateId> seq{cur};
        for (int t = m - 2; t >= 0; --t) {
            for (StateId r : a.adj[static_cast<size_t>(cur)]) {
                if (back[static_cast<size_t>(t)].test(static_cast<size_t>(r))) {
                    seq.push_back(r);
                    cur = r;
                    break;
                }
            }
        }
        return labeling_from_states(a, seq);
    }

    // Cycle: pick the least state that closes at length n, then complete
    // greedily against the backward table.
    const int len = inst.n;
    for (StateId q0 = 0; q0 < static_cast<StateId>(n); ++q0) {
        // back[t] = states with a walk of exactly t transitions into q0.
        std::vector<Bits> back(static_cast<size_t>(len) + 1, Bits(n));
        back[0].set(static_cast<size_t>(q0));
        for (int t = 1; t <= len; ++t) {
            back[static_cast<size_t>(t - 1)].for_each([&](size_t q) {
                for (StateId r : a.radj[q]) back[static_cast<size_t>(t)].set(static_cast<size_t>(r));
            });
        }
        if (!back[static_cast<size_t>(len)].test(static_cast<size_t>(q0))) continue;
        std::vector<StateId> seq{q0};
        StateId cur = q0;
        for (int t = len - 1; t >= 1; --t) {
            for (StateId r : a.adj[static_cast<size_t>(cur)]) {
                if (back[static_cast<size_t>(t)].test(static_cast<size_t>(r))) {
                    seq.push_back(r);
                    cur = r;
                    break;
                }
            }
        }
        return labeling_from_states(a, seq);
    }
    return std::nullopt;
}

std::optional<int> brute_force_flexibility(const Automaton& a, StateId q, int bound) {
    if (bound < flexibility_scan_bound(a.size()))
        throw Error::input("brute_force_flexibility bound below the certified scan bound");
    auto lens = a.closed_walk_lengths(q, bound);
    int gap = 0;
    for (int t = bound; t >= 1; --t)
        if (!lens[static_cast<size_t>(t)]) { gap = t; break; }
    if (gap == 0) return 1;
    if (gap > bound - 2 * a.size()) return std::nullopt;  // tail not clean: not flexible
    return gap + 1;
}

std::vector<int> unsolvable_cycle_witnesses(const Automaton& a, int max_n) {
    bool any_repeatable = false;
    long long b = 1;
    bool saturated = false;  // product exceeded max_n: no kb+1 member fits
    for (StateId q = 0; q < a.size(); ++q) {
        if (is_flexible(a, q))
            throw Error::input("unsolvable_cycle_witnesses requires an automaton without flexible states");
        auto prof = walk_length_profile(a, q);
        if (prof.gcd > 0) {
            any_repeatable = true;
            if (!saturated) {
                b *= prof.gcd;
                if (b > max_n) saturated = true;
            }
        }
    }
    if (!any_repeatable)
        throw Error::input("unsolvable_cycle_witnesses requires a repeatable state");

    auto lens = solvable_lengths(a, Topology::Cycle, max_n);
    std::vector<int> out;
    for (int n = 1; n <= max_n; ++n)
        if (!lens.test(n)) out.push_back(n);
    // The kb+1 family must all be present in the complement.
    if (!saturated) {
        for (long long x = b + 1; x <= max_n; x += b) {
            if (lens.test(static_cast<int>(x)))
                throw Error::internal("kb+1 witness family member reported solvable");
        }
    }
    return out;
}

std::vector<Labeling> enumerate_solutions(const LclProblem& p, const Instance& inst, long long cap) {
    if (inst.topology == Topology::Tree)
        throw Error::input("enumerate_solutions covers cyclepaths only");
    const int m = inst.num_edges();
    const int k = p.alphabet_size();
    long long total = 1;
    for (int i = 0; i < 2 * m; ++i) {
        total *= k;
        if (total > cap) throw Error::budget("exhaustive labeling space exceeds the cap");
    }
    std::vector<Labeling> out;
    Labeling lab;
    lab.ports.assign(static_cast<size_t>(m), {0, 0});
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int e = 0; e < m; ++e) {
            lab.ports[static_cast<size_t>(e)][0] = static_cast<LabelId>(c % k);
            c /= k;
            lab.ports[static_cast<size_t>(e)][1] = static_cast<LabelId>(c % k);
            c /= k;
        }
        if (verify(p, inst, lab).empty()) out.push_back(lab);
    }
    return out;
}

} // namespace lclc
