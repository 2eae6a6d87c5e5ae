#include "core/properties.hpp"

#include <numeric>

#include "core/error.hpp"

namespace lclc {

int flexibility_scan_bound(int num_states) {
    const long long m = 2LL * num_states - 1;
    return static_cast<int>(m * m + 2LL * num_states);
}

int mirror_flexibility_scan_bound(int num_states) {
    const long long m = 2LL * num_states - 1;
    return static_cast<int>(2 * m * m + 4LL * num_states);
}

WalkLengthProfile walk_length_profile(const Automaton& a, StateId q) {
    WalkLengthProfile p;
    p.state = q;
    const int bound = 2 * a.size() - 1;
    auto lens = a.closed_walk_lengths(q, bound);
    for (int t = 1; t <= bound; ++t)
        if (lens[static_cast<size_t>(t)]) p.short_lengths.push_back(t);
    long long g = 0;
    for (int l : p.short_lengths) g = std::gcd(g, static_cast<long long>(l));
    p.gcd = g;
    return p;
}

namespace {

// Largest missing length in [1, bound], or 0 when none are missing.
int max_missing(const std::vector<char>& present, int bound) {
    for (int t = bound; t >= 1; --t)
        if (!present[static_cast<size_t>(t)]) return t;
    return 0;
}

} // namespace

std::optional<int> is_flexible(const Automaton& a, StateId q) {
    auto profile = walk_length_profile(a, q);
    if (profile.gcd != 1) return std::nullopt;
    const int bound = flexibility_scan_bound(a.size());
    auto lens = a.closed_walk_lengths(q, bound);
    int gap = max_missing(lens, bound);
    // gcd 1 guarantees all lengths >= (2|Q|-1)^2 are representable.
    if (gap >= bound - 2 * a.size())
        throw Error::internal("flexibility scan found a gap beyond the certified bound");
    return gap + 1;
}

std::optional<int> is_mirror_flexible(const Automaton& a, StateId q) {
    StateId m = a.mirror[static_cast<size_t>(q)];
    if (m < 0)
        throw Error::input("mirror-flexibility requires a symmetric problem");
    if (!is_flexible(a, q)) return std::nullopt;
    if (q != m) {
        Bits from_q(a.states.size());
        from_q.set(static_cast<size_t>(q));
        if (!a.reachable_from(from_q).test(static_cast<size_t>(m))) return std::nullopt;
        Bits from_m(a.states.size());
        from_m.set(static_cast<size_t>(m));
        if (!a.reachable_from(from_m).test(static_cast<size_t>(q))) return std::nullopt;
    }
    const int bound = mirror_flexibility_scan_bound(a.size());
    auto qq = a.walk_lengths(q, q, bound);
    auto qm = a.walk_lengths(q, m, bound);
    auto mq = a.walk_lengths(m, q, bound);
    auto mm = a.walk_lengths(m, m, bound);
    std::vector<char> all(static_cast<size_t>(bound) + 1, 0);
    for (int t = 1; t <= bound; ++t) {
        auto i = static_cast<size_t>(t);
        all[i] = qq[i] && qm[i] && mq[i] && mm[i];
    }
    int gap = max_missing(all, bound);
    if (gap >= bound - 2 * a.size())
        throw Error::internal("mirror-flexibility scan found a gap beyond the certified bound");
    return gap + 1;
}

bool has_d3_directing_word(const Automaton& a) {
    if (a.empty()) return false;
    // Flexibility is uniform within an SCC, so one flexible probe per
    // component suffices.
    std::vector<int> probe(static_cast<size_t>(a.scc_count), -1);
    for (StateId q = 0; q < a.size(); ++q) {
        int c = a.scc_id[static_cast<size_t>(q)];
        if (probe[static_cast<size_t>(c)] < 0) probe[static_cast<size_t>(c)] = q;
    }
    for (int c = 0; c < a.scc_count; ++c) {
        StateId q = probe[static_cast<size_t>(c)];
        if (!is_flexible(a, q)) continue;
        Bits seed(a.states.size());
        seed.set(static_cast<size_t>(q));
        Bits co = a.coreachable_to(seed);
        bool all = true;
        for (StateId x = 0; x < a.size() && all; ++x)
            if (!co.test(static_cast<size_t>(x))) all = false;
        if (all) return true;
    }
    return false;
}

PropertyReport analyze_properties(const Automaton& a, bool symmetric) {
    PropertyReport r;
    r.per_state.resize(a.states.size());
    r.profiles.reserve(a.states.size());
    for (StateId q = 0; q < a.size(); ++q) {
        auto& sp = r.per_state[static_cast<size_t>(q)];
        auto prof = walk_length_profile(a, q);
        sp.repeatable = prof.gcd != 0;
        sp.loop = a.has_transition(q, q);
        sp.flexibility = is_flexible(a, q);
        if (symmetric && a.mirror[static_cast<size_t>(q)] >= 0) {
            sp.mirror_flexibility = is_mirror_flexible(a, q);
            sp.mirror_flexible_loop = sp.loop && sp.mirror_flexibility.has_value();
        }
        r.profiles.push_back(std::move(prof));

        if (sp.repeatable) r.has_repeatable = true;
        if (sp.loop) {
            r.has_loop = true;
            if (r.witness_loop < 0) r.witness_loop = q;
        }
        if (sp.flexibility) {
            r.has_flexible = true;
            if (r.witness_flexible < 0) r.witness_flexible = q;
        }
        if (sp.mirror_flexibility) {
            r.has_mirror_flexible = true;
            if (r.witness_mirror_flexible < 0) r.witness_mirror_flexible = q;
        }
        if (sp.mirror_flexible_loop) {
            r.has_mirror_flexible_loop = true;
            if (r.witness_mirror_flexible_loop < 0) r.witness_mirror_flexible_loop = q;
        }
    }
    r.has_d3_directing_word = has_d3_directing_word(a);
    return r;
}

} // namespace lclc
