#include "core/classifier.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

#include "core/error.hpp"
#include "core/oracle.hpp"

namespace lclc {

using nlohmann::json;

const char* type_name(ProblemType t) {
    switch (t) {
        case ProblemType::A: return "A";
        case ProblemType::B: return "B";
        case ProblemType::C: return "C";
        case ProblemType::D: return "D";
        case ProblemType::E: return "E";
        case ProblemType::F: return "F";
        case ProblemType::G: return "G";
        case ProblemType::H: return "H";
        case ProblemType::I: return "I";
        case ProblemType::J: return "J";
        case ProblemType::K: return "K";
        case ProblemType::Degenerate: return "DEGENERATE";
    }
    return "?";
}

const char* count_class_name(CountClass c) {
    switch (c) {
        case CountClass::Zero: return "zero";
        case CountClass::Finite: return "finite";
        case CountClass::Infinite: return "infinite";
        case CountClass::Undetermined: return "undetermined";
    }
    return "?";
}

const char* complexity_name(Complexity c) {
    switch (c) {
        case Complexity::Constant: return "O(1)";
        case Complexity::LogStar: return "Theta(log* n)";
        case Complexity::Linear: return "Theta(n)";
        case Complexity::NotApplicable: return "not-applicable";
    }
    return "?";
}

UnaryNfa to_standard_nfa(const Automaton& pruned) {
    UnaryNfa nfa;
    nfa.num_states = pruned.size() + 1;
    nfa.start = 0;
    nfa.adj.assign(static_cast<size_t>(nfa.num_states), {});
    nfa.accept = Bits(static_cast<size_t>(nfa.num_states));
    pruned.start_states.for_each([&](size_t q) {
        nfa.adj[0].push_back(static_cast<int>(q) + 1);
    });
    for (StateId q = 0; q < pruned.size(); ++q) {
        for (StateId r : pruned.adj[static_cast<size_t>(q)])
            nfa.adj[static_cast<size_t>(q) + 1].push_back(r + 1);
        if (pruned.accept_states.test(static_cast<size_t>(q)))
            nfa.accept.set(static_cast<size_t>(q) + 1);
    }
    return nfa;
}

LclProblem nfa_to_lcl(const UnaryNfa& nfa) {
    std::vector<std::string> alphabet;
    for (int q = 0; q < nfa.num_states; ++q) alphabet.push_back("s" + std::to_string(q));
    std::vector<LabelPair> edge, node;
    for (int q = 0; q < nfa.num_states; ++q)
        for (int r : nfa.adj[static_cast<size_t>(q)]) edge.emplace_back(q, r);
    for (int q = 0; q < nfa.num_states; ++q) node.emplace_back(q, q);
    std::vector<LabelId> start{nfa.start};
    std::vector<LabelId> end;
    nfa.accept.for_each([&](size_t q) { end.push_back(static_cast<LabelId>(q)); });
    return LclProblem(std::move(alphabet), std::move(edge), std::move(node),
                      std::move(start), std::move(end));
}

namespace {

QuadrantVerdict zero_verdict(std::string producer) {
    QuadrantVerdict v;
    v.cls = CountClass::Zero;
    v.producer = std::move(producer);
    return v;
}

QuadrantVerdict finite_verdict(std::vector<long long> members, long long threshold,
                               std::string producer) {
    QuadrantVerdict v;
    if (members.empty()) {
        v.cls = CountClass::Zero;
    } else {
        v.cls = CountClass::Finite;
        v.members = std::move(members);
        v.threshold = threshold;
    }
    v.producer = std::move(producer);
    return v;
}

QuadrantVerdict infinite_verdict(long long lambda, long long offset, std::string producer) {
    QuadrantVerdict v;
    v.cls = CountClass::Infinite;
    v.lambda = lambda;
    v.offset = offset;
    v.producer = std::move(producer);
    return v;
}

// Shortest walk lengths (in transitions) from every start state / to every
// accept state; -1 when unreachable.
std::vector<int> bfs_distances(const Automaton& a, const Bits& seeds,
                               const std::vector<std::vector<StateId>>& graph) {
    std::vector<int> dist(a.states.size(), -1);
    std::vector<StateId> queue;
    seeds.for_each([&](size_t q) {
        dist[q] = 0;
        queue.push_back(static_cast<StateId>(q));
    });
    for (size_t head = 0; head < queue.size(); ++head) {
        StateId q = queue[head];
        for (StateId r : graph[static_cast<size_t>(q)]) {
            if (dist[static_cast<size_t>(r)] < 0) {
                dist[static_cast<size_t>(r)] = dist[static_cast<size_t>(q)] + 1;
                queue.push_back(r);
            }
        }
    }
    return dist;
}

ProblemType ladder(const PropertyReport& r, bool symmetric) {
    if (!r.has_repeatable) return symmetric ? ProblemType::J : ProblemType::K;
    if (!r.has_flexible) return symmetric ? ProblemType::H : ProblemType::I;
    if (!r.has_loop) {
        if (r.has_mirror_flexible) return ProblemType::E;
        return symmetric ? ProblemType::F : ProblemType::G;
    }
    if (r.has_mirror_flexible_loop) return ProblemType::A;
    if (r.has_mirror_flexible) return ProblemType::B;
    return symmetric ? ProblemType::C : ProblemType::D;
}

ComplexityVerdict table_row(ProblemType t, bool symmetric) {
    ComplexityVerdict v;
    auto na = Complexity::NotApplicable;
    switch (t) {
        case ProblemType::A:
            v = {Complexity::Constant, Complexity::Constant, Complexity::Constant, Complexity::Constant};
            break;
        case ProblemType::B:
            v = {Complexity::Constant, Complexity::Constant, Complexity::LogStar, Complexity::LogStar};
            break;
        case ProblemType::C:
        case ProblemType::D:
            v = {Complexity::Constant, Complexity::Constant, Complexity::Linear, Complexity::Linear};
            break;
        case ProblemType::E:
            v = {Complexity::LogStar, Complexity::LogStar, Complexity::LogStar, Complexity::LogStar};
            break;
        case ProblemType::F:
        case ProblemType::G:
            v = {Complexity::LogStar, Complexity::LogStar, Complexity::Linear, Complexity::Linear};
            break;
        case ProblemType::H:
        case ProblemType::I:
            v = {Complexity::Linear, Complexity::Linear, Complexity::Linear, Complexity::Linear};
            break;
        case ProblemType::J:
        case ProblemType::K:
        case ProblemType::Degenerate:
            // Constant with the meaning "solvable instances are tiny or absent
            // and detection is constant-time".
            v = {Complexity::Constant, Complexity::Constant, Complexity::Constant, Complexity::Constant};
            break;
    }
    if (!symmetric) {
        v.undirected_cycles = na;
        v.undirected_paths = na;
    }
    return v;
}

} // namespace

QuadrantVerdict path_unsolvability_class(const Automaton& pruned, uint64_t subset_budget) {
    if (pruned.empty())
        return infinite_verdict(1, 1, "degenerate");
    UnaryNfa nfa = to_standard_nfa(pruned);
    auto period = eventual_periodicity(nfa, subset_budget);
    if (!period) {
        QuadrantVerdict v;
        v.cls = CountClass::Undetermined;
        v.producer = chrobak_test(nfa, 1)
                       ? "subset-budget-exhausted; chrobak: no rejection up to |Q|^2"
                       : "subset-budget-exhausted; chrobak: rejection found";
        return v;
    }
    bool tail_all = true;
    for (char c : period->cycle)
        if (!c) { tail_all = false; break; }
    if (tail_all) {
        std::vector<long long> rejected;
        for (long long m = 1; m < period->preperiod; ++m)
            if (!period->prefix[static_cast<size_t>(m)]) rejected.push_back(m);
        return finite_verdict(std::move(rejected), period->preperiod, "periodicity");
    }
    return infinite_verdict(period->period, std::max<long long>(period->preperiod, 1), "periodicity");
}

Classification classify(const LclProblem& p, const ClassifyOptions& opts) {
    Classification c;
    c.symmetric = p.symmetric();
    Automaton full = build_automaton(p);
    c.cycle_automaton = cycle_core(full);
    c.path_automaton = prune(full);
    c.cycle_props = analyze_properties(c.cycle_automaton, c.symmetric);
    c.path_props = analyze_properties(c.path_automaton, c.symmetric);

    const auto& cy = c.cycle_automaton;
    const auto& pa = c.path_automaton;
    const auto& cyp = c.cycle_props;
    const auto& pap = c.path_props;

    // Headline type: the closed-walk structure decides A..I; a nonempty
    // pruned automaton with no closed walk through it is J/K.
    if (!cy.empty()) c.type = ladder(cyp, c.symmetric);
    else if (!pa.empty()) c.type = c.symmetric ? ProblemType::J : ProblemType::K;
    else c.type = ProblemType::Degenerate;

    // ---- cycle quadrants ----
    if (cy.empty()) {
        c.solvable_cycles = zero_verdict("cycle-core-empty");
        c.unsolvable_cycles = infinite_verdict(1, 1, "cycle-core-empty");
    } else {
        int min_closed = std::numeric_limits<int>::max();
        for (const auto& prof : cyp.profiles)
            if (!prof.short_lengths.empty())
                min_closed = std::min(min_closed, prof.short_lengths.front());
        c.solvable_cycles = infinite_verdict(min_closed, 1, "classifier");

        if (cyp.has_loop) {
            c.unsolvable_cycles = zero_verdict("classifier");
        } else if (cyp.has_flexible) {
            int best_k = std::numeric_limits<int>::max();
            int best_q = -1;
            for (StateId q = 0; q < cy.size(); ++q) {
                auto k = cyp.per_state[static_cast<size_t>(q)].flexibility;
                if (k && *k < best_k) { best_k = *k; best_q = q; }
            }
            c.flexible_witness = best_q;
            c.flexibility = best_k;
            auto lens = solvable_lengths(cy, Topology::Cycle, std::max(best_k - 1, 1));
            std::vector<long long> rejected;
            for (int n = 1; n < best_k; ++n)
                if (!lens.test(n)) rejected.push_back(n);
            c.unsolvable_cycles = finite_verdict(std::move(rejected), best_k, "classifier");
        } else {
            long long b = 1;
            bool saturated = false;
            for (const auto& prof : cyp.profiles) {
                if (prof.gcd > 1 && !saturated) {
                    b *= prof.gcd;
                    if (b > (1LL << 40)) saturated = true;
                }
            }
            c.unsolvable_cycles = infinite_verdict(saturated ? (1LL << 40) : b,
                                                   saturated ? (1LL << 40) : b + 1, "classifier");
        }
    }

    // ---- path quadrants ----
    if (pa.empty()) {
        c.solvable_paths = zero_verdict("pruned-empty");
        c.unsolvable_paths = infinite_verdict(1, 1, "pruned-empty");
        if (!cy.empty()) c.notes.push_back("path quadrants degenerate: no start-to-accept walk exists");
    } else if (!pap.has_repeatable) {
        auto lens = solvable_lengths(pa, Topology::Path, pa.size());
        std::vector<long long> solvable;
        for (int m = 1; m <= pa.size(); ++m)
            if (lens.test(m)) solvable.push_back(m);
        c.solvable_paths = finite_verdict(std::move(solvable), pa.size() + 1, "classifier");
        c.unsolvable_paths = infinite_verdict(pa.size() + 1, 1, "classifier");
    } else {
        auto dist_from_start = bfs_distances(pa, pa.start_states, pa.adj);
        auto dist_to_accept = bfs_distances(pa, pa.accept_states, pa.radj);

        if (pap.has_flexible) {
            long long best_threshold = std::numeric_limits<long long>::max();
            int best_q = -1;
            for (StateId q = 0; q < pa.size(); ++q) {
                auto k = pap.per_state[static_cast<size_t>(q)].flexibility;
                if (!k) continue;
                long long h = 1LL + dist_from_start[static_cast<size_t>(q)] +
                              dist_to_accept[static_cast<size_t>(q)];
                best_threshold = std::min(best_threshold, h + *k);
                if (best_threshold == h + *k) best_q = q;
            }
            c.path_flexible_witness = best_q;
            c.path_threshold = static_cast<int>(best_threshold);
            auto lens = solvable_lengths(pa, Topology::Path,
                                         static_cast<int>(std::max(best_threshold - 1, 1LL)));
            std::vector<long long> rejected;
            for (long long m = 1; m < best_threshold; ++m)
                if (!lens.test(static_cast<int>(m))) rejected.push_back(m);
            c.unsolvable_paths = finite_verdict(std::move(rejected), best_threshold, "classifier");
            c.solvable_paths = infinite_verdict(1, best_threshold, "classifier");
        } else {
            // Solvable side: h + k*l family through the repeatable state with
            // the cheapest start~>q~>accept detour.
            long long best_h = std::numeric_limits<long long>::max();
            long long best_l = 1;
            for (StateId q = 0; q < pa.size(); ++q) {
                const auto& prof = pap.profiles[static_cast<size_t>(q)];
                if (prof.gcd == 0) continue;
                long long h = 1LL + dist_from_start[static_cast<size_t>(q)] +
                              dist_to_accept[static_cast<size_t>(q)];
                long long l = prof.short_lengths.front();
                if (h < best_h || (h == best_h && l < best_l)) {
                    best_h = h;
                    best_l = l;
                }
            }
            c.solvable_paths = infinite_verdict(best_l, best_h, "classifier");
            c.unsolvable_paths = path_unsolvability_class(pa, opts.subset_budget);
        }
    }

    c.complexity = table_row(c.type, c.symmetric);
    if (c.type == ProblemType::J || c.type == ProblemType::K || c.type == ProblemType::Degenerate)
        c.notes.push_back("O(1) entries mean: solvable instances are constant-size and "
                          "solvability is detectable in constant time");
    if (p.min_valid_cycle > 0)
        c.notes.push_back("normalized problem: cycle verdicts apply to lengths >= " +
                          std::to_string(p.min_valid_cycle));
    if (cyp.has_mirror_flexible || pap.has_mirror_flexible)
        c.notes.push_back("mirror-flexibility numbers are exact but certified through an "
                          "implementation-defined scan bound");
    return c;
}

namespace {

json verdict_to_json(const QuadrantVerdict& v) {
    json j;
    j["class"] = count_class_name(v.cls);
    j["producer"] = v.producer;
    if (v.cls == CountClass::Finite) {
        j["members"] = v.members;
        j["threshold"] = v.threshold;
    }
    if (v.cls == CountClass::Infinite) {
        j["window"] = v.lambda;
        j["offset"] = v.offset;
    }
    return j;
}

json props_to_json(const Automaton& a, const PropertyReport& r) {
    json j;
    j["states"] = a.size();
    json per = json::array();
    for (StateId q = 0; q < a.size(); ++q) {
        const auto& sp = r.per_state[static_cast<size_t>(q)];
        json s;
        s["state"] = a.state_name(q);
        s["repeatable"] = sp.repeatable;
        s["loop"] = sp.loop;
        if (sp.flexibility) s["flexibility"] = *sp.flexibility;
        if (sp.mirror_flexibility) s["mirror_flexibility"] = *sp.mirror_flexibility;
        s["mirror_flexible_loop"] = sp.mirror_flexible_loop;
        s["short_walk_lengths"] = r.profiles[static_cast<size_t>(q)].short_lengths;
        s["gcd"] = r.profiles[static_cast<size_t>(q)].gcd;
        per.push_back(s);
    }
    j["per_state"] = per;
    j["has_repeatable"] = r.has_repeatable;
    j["has_loop"] = r.has_loop;
    j["has_flexible"] = r.has_flexible;
    j["has_mirror_flexible"] = r.has_mirror_flexible;
    j["has_mirror_flexible_loop"] = r.has_mirror_flexible_loop;
    j["has_d3_directing_word"] = r.has_d3_directing_word;
    return j;
}

} // namespace

std::string classification_to_json(const LclProblem& p, const Classification& c) {
    json j;
    j["type"] = type_name(c.type);
    j["symmetric"] = c.symmetric;
    j["solvability"] = {
        {"solvable_cycles", verdict_to_json(c.solvable_cycles)},
        {"solvable_paths", verdict_to_json(c.solvable_paths)},
        {"unsolvable_cycles", verdict_to_json(c.unsolvable_cycles)},
        {"unsolvable_paths", verdict_to_json(c.unsolvable_paths)},
    };
    j["complexity"] = {
        {"directed_cycles", complexity_name(c.complexity.directed_cycles)},
        {"directed_paths", complexity_name(c.complexity.directed_paths)},
        {"undirected_cycles", complexity_name(c.complexity.undirected_cycles)},
        {"undirected_paths", complexity_name(c.complexity.undirected_paths)},
    };
    j["properties"] = {
        {"cycle_mode", props_to_json(c.cycle_automaton, c.cycle_props)},
        {"path_mode", props_to_json(c.path_automaton, c.path_props)},
    };
    json stats;
    stats["alphabet"] = p.alphabet_size();
    stats["edge_pairs"] = p.edge_pairs().size();
    stats["cycle_states"] = c.cycle_automaton.size();
    stats["path_states"] = c.path_automaton.size();
    stats["cycle_sccs"] = c.cycle_automaton.scc_count;
    j["automaton_stats"] = stats;
    json wit;
    if (c.flexible_witness >= 0) {
        wit["cycle_flexible_state"] = c.cycle_automaton.state_name(c.flexible_witness);
        wit["flexibility"] = c.flexibility;
    }
    if (c.path_flexible_witness >= 0) {
        wit["path_flexible_state"] = c.path_automaton.state_name(c.path_flexible_witness);
        wit["path_threshold"] = c.path_threshold;
    }
    j["witnesses"] = wit;
    j["notes"] = c.notes;
    return j.dump(2);
}

} // namespace lclc
