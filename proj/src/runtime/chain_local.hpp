// chain_local.hpp -- windowed symmetry-breaking machinery on id chains.
//
// Everything here is a pure function of node ids seen through a ChainCtx.
// Rules are reflection-invariant (decisions come from id comparisons, never
// from the frame), so the same code serves directed and undirected runs.
// Offsets are relative to the querying node in an arbitrary local frame; the
// ctx records the farthest offset touched, which is the radius actually used.
#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace lclc {

// Per-query memo: every cached value is a pure function of the underlying id
// chain, so one memo per observing node is sound. The first computation of
// each entry still walks the ids, which keeps the radius accounting honest.
struct ChainMemo {
    std::unordered_map<int64_t, uint64_t> cv;       // (offset, t)
    std::unordered_map<int64_t, int> color;          // offset
    std::unordered_map<int64_t, char> bp;            // (offset, level)
    std::unordered_map<int64_t, long long> next;     // (offset, dir, level)
    std::unordered_map<int64_t, uint64_t> subcv;     // (offset, t, level)
    std::unordered_map<int64_t, int> subcolor;       // (offset, level)
    std::unordered_map<int64_t, uint64_t> oscv;      // (offset, t)
};

struct ChainCtx {
    // has(o): a node exists at offset o. id(o) only called when has(o).
    std::function<bool(long long)> has;
    std::function<int64_t(long long)> id;
    ChainMemo* memo = nullptr;
};

// Number of comparison rounds that takes ids of `bits` bits down to colors
// in {0..5}.
int cv_iterations(int bits);

// Color in {0..5} for fragment-interior nodes, 6 for id-local maxima,
// 7 for id-local minima. Missing neighbors count as id 0.
int chain_color(const ChainCtx& ctx, long long o, int iterations);

struct LevelParams {
    int iterations;   // cv rounds per level
    int levels;       // breakpoint refinement levels (>= 0)
    int horizon0;     // scan horizon for level-0 breakpoints
};

// Breakpoints: level 0 = local maxima of chain_color; level l+1 = recursive
// local maxima over the level-l breakpoint subchain. Spacing doubles per
// level; scan horizons stay bounded.
bool is_breakpoint(const ChainCtx& ctx, long long o, int level, const LevelParams& p);

// Nearest breakpoint at the given level strictly before/after `o` (direction
// dir = -1/+1 in the local frame). Returns false if none within the horizon.
bool next_breakpoint(const ChainCtx& ctx, long long o, int dir, int level,
                     const LevelParams& p, long long* out);

LevelParams level_params_for(int k, int64_t max_id);
long long level_horizon(const LevelParams& p, int level);

// Distance-k anchor indicator for the edge between offsets o and o+1.
// Consecutive anchors along the chain are k..2k-1 edges apart wherever the
// final-level segments exist on both sides.
bool is_anchor_edge(const ChainCtx& ctx, long long o, int k, const LevelParams& p);

// One-sided variant for rooted chains: the ctx only resolves offsets <= 0
// (ancestors). Edge `o` is the edge above the node at offset o (between
// offsets o-1 and o). Marks have spacing in [2, ~10]; anchors in [k, 2k-1].
bool one_sided_mark(const ChainCtx& ctx, long long o, int iterations);
bool one_sided_anchor_edge(const ChainCtx& ctx, long long o, int k, int iterations);

} // namespace lclc
