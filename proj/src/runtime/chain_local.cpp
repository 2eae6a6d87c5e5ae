#include "runtime/chain_local.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace lclc {

namespace {

int bit_width_ll(uint64_t v) {
    int b = 0;
    while (v) { ++b; v >>= 1; }
    return std::max(b, 1);
}

// One comparison round: position of the lowest differing bit i gives 2i+bit.
uint64_t cv_step(uint64_t own, uint64_t parent) {
    uint64_t diff = own ^ parent;
    int i = diff ? __builtin_ctzll(diff) : 0;  // equal values cannot happen
    return 2ull * static_cast<uint64_t>(i) + ((own >> i) & 1ull);
}

} // namespace

int cv_iterations(int bits) {
    int iters = 0;
    int b = std::max(bits, 2);
    while (true) {
        long long max_val = 2LL * (b - 1) + 1;
        ++iters;
        if (max_val <= 5) break;
        b = bit_width_ll(static_cast<uint64_t>(max_val));
        if (iters > 16) break;  // fixpoint guard; never reached for real ids
    }
    return iters;
}


namespace {

int64_t memo_key(long long o, int a, int b) {
    return (o << 12) ^ (static_cast<int64_t>(a) << 4) ^ b;
}

} // namespace

namespace {

constexpr int kColorMax = 6;   // id-local maximum
constexpr int kColorMin = 7;   // id-local minimum

int64_t id_or_zero(const ChainCtx& ctx, long long o) {
    return ctx.has(o) ? ctx.id(o) : 0;
}

// -1 uphill toward o-1, +1 uphill toward o+1, 0 when o is an extremum.
int uphill_dir(const ChainCtx& ctx, long long o) {
    int64_t self = ctx.id(o);
    int64_t left = id_or_zero(ctx, o - 1);
    int64_t right = id_or_zero(ctx, o + 1);
    if (self > left && self > right) return 0;
    if (self < left && self < right) return 0;
    return left > right ? -1 : +1;
}

bool is_extremum(const ChainCtx& ctx, long long o) { return uphill_dir(ctx, o) == 0; }

uint64_t cv_value(const ChainCtx& ctx, long long o, int t) {
    if (t == 0) return static_cast<uint64_t>(ctx.id(o));
    if (ctx.memo) {
        auto it = ctx.memo->cv.find(memo_key(o, t, 0));
        if (it != ctx.memo->cv.end()) return it->second;
    }
    uint64_t own = cv_value(ctx, o, t - 1);
    int dir = uphill_dir(ctx, o);
    long long p = o + dir;
    uint64_t out;
    if (is_extremum(ctx, p)) {
        // Fragment top: compare against a fixed virtual parent.
        out = cv_step(own, own == 0 ? 1 : 0);
    } else {
        out = cv_step(own, cv_value(ctx, p, t - 1));
    }
    if (ctx.memo) ctx.memo->cv[memo_key(o, t, 0)] = out;
    return out;
}

} // namespace

int chain_color(const ChainCtx& ctx, long long o, int iterations) {
    if (ctx.memo) {
        auto it = ctx.memo->color.find(o);
        if (it != ctx.memo->color.end()) return it->second;
    }
    int dir = uphill_dir(ctx, o);
    int out;
    if (dir == 0) {
        int64_t self = ctx.id(o);
        out = self > id_or_zero(ctx, o - 1) ? kColorMax : kColorMin;
    } else {
        out = static_cast<int>(cv_value(ctx, o, iterations));
    }
    if (ctx.memo) ctx.memo->color[o] = out;
    return out;
}

LevelParams level_params_for(int k, int64_t max_id) {
    LevelParams p;
    p.iterations = cv_iterations(bit_width_ll(static_cast<uint64_t>(std::max<int64_t>(max_id, 2))));
    // Segments must be long enough that anchor-candidate conflicts stay
    // confined to single boundaries; k <= 2 gets that already at level 0.
    p.levels = 0;
    if (k > 2)
        while ((1 << (p.levels + 1)) < 2 * k) ++p.levels;
    p.horizon0 = 2 * (kColorMin + 2) + 6;
    return p;
}

long long level_horizon(const LevelParams& p, int level) {
    long long h = p.horizon0;
    for (int l = 0; l < level; ++l) h *= p.horizon0;
    return h;
}

namespace {

bool is_bp(const ChainCtx& ctx, long long o, int level, const LevelParams& p);

bool next_bp(const ChainCtx& ctx, long long o, int dir, int level, const LevelParams& p,
             long long* out) {
    const int64_t key = memo_key(o, dir < 0 ? 1 : 2, level);
    if (ctx.memo) {
        auto it = ctx.memo->next.find(key);
        if (it != ctx.memo->next.end()) {
            if (it->second == INT64_MIN) return false;
            *out = it->second;
            return true;
        }
    }
    long long horizon = level_horizon(p, level);
    for (long long d = 1; d <= horizon; ++d) {
        long long x = o + dir * d;
        if (!ctx.has(x)) break;
        if (is_bp(ctx, x, level, p)) {
            if (ctx.memo) ctx.memo->next[key] = x;
            *out = x;
            return true;
        }
    }
    if (ctx.memo) ctx.memo->next[key] = INT64_MIN;
    return false;
}

int subchain_color(const ChainCtx& ctx, long long o, int level, const LevelParams& p);

// Uphill neighbor among the level-(l-1) breakpoints; 0 = extremum.
int subchain_uphill(const ChainCtx& ctx, long long o, int level, const LevelParams& p,
                    long long* left, long long* right) {
    long long l = 0, r = 0;
    bool has_l = next_bp(ctx, o, -1, level - 1, p, &l);
    bool has_r = next_bp(ctx, o, +1, level - 1, p, &r);
    int64_t self = ctx.id(o);
    int64_t il = has_l ? ctx.id(l) : 0;
    int64_t ir = has_r ? ctx.id(r) : 0;
    if (has_l) *left = l;
    if (has_r) *right = r;
    if (self > il && self > ir) return 0;
    if (self < il && self < ir) return 0;
    return il > ir ? -1 : +1;
}

uint64_t subchain_cv(const ChainCtx& ctx, long long o, int t, int level, const LevelParams& p) {
    if (t == 0) return static_cast<uint64_t>(ctx.id(o));
    const int64_t key = memo_key(o, t, level + 8);
    if (ctx.memo) {
        auto it = ctx.memo->subcv.find(key);
        if (it != ctx.memo->subcv.end()) return it->second;
    }
    uint64_t own = subchain_cv(ctx, o, t - 1, level, p);
    long long left = 0, right = 0;
    int dir = subchain_uphill(ctx, o, level, p, &left, &right);
    uint64_t out;
    if (dir == 0) {
        out = cv_step(own, own == 0 ? 1 : 0);
    } else {
        long long parent = dir < 0 ? left : right;
        long long pl = 0, pr = 0;
        if (subchain_uphill(ctx, parent, level, p, &pl, &pr) == 0)
            out = cv_step(own, own == 0 ? 1 : 0);
        else
            out = cv_step(own, subchain_cv(ctx, parent, t - 1, level, p));
    }
    if (ctx.memo) ctx.memo->subcv[key] = out;
    return out;
}

int subchain_color(const ChainCtx& ctx, long long o, int level, const LevelParams& p) {
    const int64_t key = memo_key(o, 0, level);
    if (ctx.memo) {
        auto it = ctx.memo->subcolor.find(key);
        if (it != ctx.memo->subcolor.end()) return it->second;
    }
    long long left = 0, right = 0;
    int dir = subchain_uphill(ctx, o, level, p, &left, &right);
    if (dir == 0) {
        long long neigh = 0;
        bool has_n = next_bp(ctx, o, -1, level - 1, p, &neigh) ||
                     next_bp(ctx, o, +1, level - 1, p, &neigh);
        int64_t other = has_n ? ctx.id(neigh) : 0;
        int out = ctx.id(o) > other ? kColorMax : kColorMin;
        if (ctx.memo) ctx.memo->subcolor[key] = out;
        return out;
    }
    int out = static_cast<int>(subchain_cv(ctx, o, p.iterations, level, p));
    if (ctx.memo) ctx.memo->subcolor[key] = out;
    return out;
}

bool is_bp(const ChainCtx& ctx, long long o, int level, const LevelParams& p) {
    if (!ctx.has(o)) return false;
    const int64_t key = memo_key(o, 1, level);
    if (ctx.memo) {
        auto it = ctx.memo->bp.find(key);
        if (it != ctx.memo->bp.end()) return it->second;
    }
    if (level == 0) {
        int c = chain_color(ctx, o, p.iterations);
        int cl = ctx.has(o - 1) ? chain_color(ctx, o - 1, p.iterations) : -1;
        int cr = ctx.has(o + 1) ? chain_color(ctx, o + 1, p.iterations) : -1;
        bool out = c > cl && c > cr;
        if (ctx.memo) ctx.memo->bp[key] = out;
        return out;
    }
    bool out;
    if (!is_bp(ctx, o, level - 1, p)) {
        out = false;
    } else {
        int c = subchain_color(ctx, o, level, p);
        long long l = 0, r = 0;
        int cl = next_bp(ctx, o, -1, level - 1, p, &l) ? subchain_color(ctx, l, level, p) : -1;
        int cr = next_bp(ctx, o, +1, level - 1, p, &r) ? subchain_color(ctx, r, level, p) : -1;
        out = c > cl && c > cr;
    }
    if (ctx.memo) ctx.memo->bp[key] = out;
    return out;
}

// Candidate anchors: offsets 0, k, 2k, ... from the segment endpoint with
// the smaller id. In-segment spacing is exactly k; only candidates facing
// each other across a single breakpoint can be closer.
bool raw_candidate(const ChainCtx& ctx, long long e, int k, const LevelParams& p) {
    const int top = p.levels;
    long long b1 = 0, b2 = 0;
    if (is_bp(ctx, e, top, p)) b1 = e;
    else if (!next_bp(ctx, e, -1, top, p, &b1)) return false;
    if (!next_bp(ctx, b1, +1, top, p, &b2)) return false;
    if (!(b1 <= e && e < b2)) return false;
    long long off = ctx.id(b1) < ctx.id(b2) ? (e - b1) : (b2 - 1 - e);
    return off % k == 0;
}

// Canonical key of the edge between offsets o and o+1.
std::pair<int64_t, int64_t> edge_key(const ChainCtx& ctx, long long o) {
    int64_t a = ctx.id(o), b = ctx.id(o + 1);
    return {std::min(a, b), std::max(a, b)};
}

// Raw anchors: candidates that are key-minimal among conflicting candidates
// within distance k-1. Conflict components never chain, so the survivors
// keep pairwise distance >= k with gaps bounded by ~3k.
bool raw_anchor(const ChainCtx& ctx, long long e, int k, const LevelParams& p) {
    if (!raw_candidate(ctx, e, k, p)) return false;
    auto key = edge_key(ctx, e);
    for (long long d = 1; d < k; ++d) {
        for (int sgn : {-1, +1}) {
            long long o = e + sgn * d;
            if (!ctx.has(o) || !ctx.has(o + 1)) continue;
            if (raw_candidate(ctx, o, k, p) && edge_key(ctx, o) < key) return false;
        }
    }
    return true;
}

} // namespace

bool is_breakpoint(const ChainCtx& ctx, long long o, int level, const LevelParams& p) {
    return is_bp(ctx, o, level, p);
}

bool next_breakpoint(const ChainCtx& ctx, long long o, int dir, int level,
                     const LevelParams& p, long long* out) {
    return next_bp(ctx, o, dir, level, p, out);
}

bool is_anchor_edge(const ChainCtx& ctx, long long o, int k, const LevelParams& p) {
    if (k <= 1) return true;
    if (raw_anchor(ctx, o, k, p)) return true;
    // Repair pass: gaps of 2k or more between raw anchors are split at the
    // midpoint, recursively; this is what bounds every final gap by 2k-1.
    const long long horizon = 3 * k + 4;
    long long lo = 0, hi = 0;
    bool has_lo = false, has_hi = false;
    for (long long d = 1; d <= horizon && !has_lo; ++d) {
        if (!ctx.has(o - d)) break;
        if (raw_anchor(ctx, o - d, k, p)) { lo = o - d; has_lo = true; }
    }
    for (long long d = 1; d <= horizon && !has_hi; ++d) {
        if (!ctx.has(o + d + 1)) break;
        if (raw_anchor(ctx, o + d, k, p)) { hi = o + d; has_hi = true; }
    }
    if (!has_lo || !has_hi) return false;
    while (hi - lo >= 2 * k) {
        long long d = hi - lo;
        long long m;
        if (d % 2 == 0) m = lo + d / 2;
        else {
            long long m1 = lo + d / 2, m2 = lo + d / 2 + 1;
            m = edge_key(ctx, m1) < edge_key(ctx, m2) ? m1 : m2;
        }
        if (m == o) return true;
        if (o < m) hi = m; else lo = m;
    }
    return false;
}

// ---- one-sided (ancestor-only) variants ----

namespace {

uint64_t os_cv(const ChainCtx& ctx, long long o, int t) {
    if (t == 0) return static_cast<uint64_t>(ctx.id(o));
    if (ctx.memo) {
        auto it = ctx.memo->oscv.find(memo_key(o, t, 0));
        if (it != ctx.memo->oscv.end()) return it->second;
    }
    uint64_t own = os_cv(ctx, o, t - 1);
    uint64_t out = !ctx.has(o - 1) ? cv_step(own, own == 0 ? 1 : 0)
                                   : cv_step(own, os_cv(ctx, o - 1, t - 1));
    if (ctx.memo) ctx.memo->oscv[memo_key(o, t, 0)] = out;
    return out;
}

int os_color(const ChainCtx& ctx, long long o, int iterations) {
    return static_cast<int>(os_cv(ctx, o, iterations));
}

} // namespace

bool one_sided_mark(const ChainCtx& ctx, long long o, int iterations) {
    if (!ctx.has(o - 2)) return false;
    int c0 = os_color(ctx, o, iterations);
    int c1 = os_color(ctx, o - 1, iterations);
    int c2 = os_color(ctx, o - 2, iterations);
    return c0 > c1 && c1 <= c2;
}

bool one_sided_anchor_edge(const ChainCtx& ctx, long long o, int k, int iterations) {
    if (k <= 1) return true;
    // Sound for k <= minimal mark spacing (= 2); larger k falls back to the
    // depth-driven tree plan.
    const long long horizon = 16;
    long long m = o;
    bool found = false;
    for (long long d = 0; d <= horizon; ++d) {
        if (!ctx.has(o - d)) return false;
        if (one_sided_mark(ctx, o - d, iterations)) { m = o - d; found = true; break; }
    }
    if (!found) return false;
    long long off = o - m;
    if (off % k != 0) return false;
    if (off > 0) return true;
    // Edge at the mark itself: keep only when the previous segment's last
    // in-segment anchor is a full k away.
    long long mp = 0;
    bool has_prev = false;
    for (long long d = 1; d <= horizon; ++d) {
        if (!ctx.has(m - d)) return false;
        if (one_sided_mark(ctx, m - d, iterations)) { mp = m - d; has_prev = true; break; }
    }
    if (!has_prev) return false;
    long long len = m - mp;
    long long last_off = k * ((len - 1) / k);
    return len - last_off >= k;
}

} // namespace lclc
