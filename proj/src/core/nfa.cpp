#include "core/nfa.hpp"

#include <unordered_map>

namespace lclc {

std::vector<char> nfa_accepted_lengths(const UnaryNfa& nfa, int max_len) {
    std::vector<char> out(static_cast<size_t>(max_len) + 1, 0);
    if (nfa.empty()) return out;
    Bits frontier(static_cast<size_t>(nfa.num_states));
    frontier.set(static_cast<size_t>(nfa.start));
    out[0] = frontier.intersects(nfa.accept);
    for (int m = 1; m <= max_len; ++m) {
        Bits next(static_cast<size_t>(nfa.num_states));
        frontier.for_each([&](size_t q) {
            for (int r : nfa.adj[q]) next.set(static_cast<size_t>(r));
        });
        frontier = std::move(next);
        out[static_cast<size_t>(m)] = frontier.intersects(nfa.accept);
        if (frontier.none()) break;
    }
    return out;
}

bool chrobak_test(const UnaryNfa& nfa, int min_len) {
    const long long bound = static_cast<long long>(nfa.num_states) * nfa.num_states;
    auto acc = nfa_accepted_lengths(nfa, static_cast<int>(bound));
    for (long long m = min_len; m <= bound; ++m)
        if (!acc[static_cast<size_t>(m)]) return false;
    return true;
}

std::optional<Periodicity> eventual_periodicity(const UnaryNfa& nfa, uint64_t subset_budget) {
    struct BitsHash {
        size_t operator()(const Bits& b) const { return b.hash(); }
    };
    std::unordered_map<Bits, long long, BitsHash> seen;
    std::vector<char> acc;

    Bits frontier(static_cast<size_t>(nfa.num_states));
    if (!nfa.empty()) frontier.set(static_cast<size_t>(nfa.start));
    long long t = 0;
    while (true) {
        auto it = seen.find(frontier);
        if (it != seen.end()) {
            Periodicity p;
            p.preperiod = it->second;
            p.period = t - it->second;
            p.prefix.assign(acc.begin(), acc.begin() + p.preperiod);
            p.cycle.assign(acc.begin() + p.preperiod, acc.end());
            return p;
        }
        if (seen.size() >= subset_budget) return std::nullopt;
        seen.emplace(frontier, t);
        acc.push_back(frontier.intersects(nfa.accept));
        Bits next(static_cast<size_t>(nfa.num_states));
        frontier.for_each([&](size_t q) {
            for (int r : nfa.adj[q]) next.set(static_cast<size_t>(r));
        });
        frontier = std::move(next);
        ++t;
    }
}

} // namespace lclc
