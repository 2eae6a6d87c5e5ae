#include "core/normalizer.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace lclc {

using nlohmann::json;

namespace {

struct ViewShape {
    int prefix_pad;  // even, 0..2r
    int suffix_pad;  // even, 0..2r
};

ViewShape shape_of(const View& v, int radius) {
    const int len = 4 * radius;
    if (static_cast<int>(v.size()) != len)
        throw Error::input("view has wrong length");
    int pre = 0;
    while (pre < len && v[static_cast<size_t>(pre)] == kBot) ++pre;
    int post = 0;
    while (post < len - pre && v[static_cast<size_t>(len - 1 - post)] == kBot) ++post;
    if (pre + post >= len)
        throw Error::input("view has no content");
    for (int i = pre; i < len - post; ++i)
        if (v[static_cast<size_t>(i)] == kBot)
            throw Error::input("view has interior padding");
    if (pre % 2 || post % 2)
        throw Error::input("view padding blocks must have even length");
    if (pre > 2 * radius || post > 2 * radius)
        throw Error::input("view padding block exceeds one side");
    return {pre, post};
}

// Views usable as port labels: the owning edge sits on the far side, so at
// least one edge of content lies there.
bool port_usable(const View& v, int radius) {
    auto sh = shape_of(v, radius);
    return sh.suffix_pad <= 2 * radius - 2;
}

View reversed(const View& v) {
    View r(v.rbegin(), v.rend());
    return r;
}

} // namespace

void StandardLcl::validate() const {
    if (radius < 1) throw Error::input("radius must be >= 1");
    if (alphabet.empty()) throw Error::input("alphabet must be non-empty");
    std::vector<View> sorted = allowed_views;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& v : allowed_views) {
        shape_of(v, radius);
        for (LabelId l : v)
            if (l != kBot && (l < 0 || l >= static_cast<LabelId>(alphabet.size())))
                throw Error::input("view references a label outside the alphabet");
        if (!std::binary_search(sorted.begin(), sorted.end(), reversed(v)))
            throw Error::input("allowed_views must be closed under reversal");
    }
}

std::string StandardLcl::view_token(const View& v) const {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << (v[i] == kBot ? "_" : alphabet[static_cast<size_t>(v[i])]);
    }
    return os.str();
}

StandardLcl StandardLcl::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error::input(std::string("standard-form document: ") + e.what());
    }
    StandardLcl s;
    if (!doc.contains("radius") || !doc["radius"].is_number_integer())
        throw Error::input("standard-form document: missing integer 'radius'");
    s.radius = doc["radius"].get<int>();
    if (!doc.contains("alphabet")) throw Error::input("standard-form document: missing 'alphabet'");
    s.alphabet = doc["alphabet"].get<std::vector<std::string>>();

    auto token_id = [&](const std::string& tok) -> LabelId {
        if (tok == "_") return kBot;
        for (size_t i = 0; i < s.alphabet.size(); ++i)
            if (s.alphabet[i] == tok) return static_cast<LabelId>(i);
        throw Error::input("view label '" + tok + "' not in alphabet");
    };
    if (!doc.contains("allowed_views")) throw Error::input("standard-form document: missing 'allowed_views'");
    for (const auto& jv : doc["allowed_views"]) {
        if (!jv.is_string()) throw Error::input("allowed_views entries must be strings");
        std::string str = jv.get<std::string>();
        View v;
        if (str.find(',') != std::string::npos || str.find(' ') != std::string::npos) {
            std::string tok;
            for (char ch : str) {
                if (ch == ',' || ch == ' ') {
                    if (!tok.empty()) v.push_back(token_id(tok));
                    tok.clear();
                } else tok.push_back(ch);
            }
            if (!tok.empty()) v.push_back(token_id(tok));
        } else {
            for (char ch : str) v.push_back(token_id(std::string(1, ch)));
        }
        s.allowed_views.push_back(std::move(v));
    }
    std::sort(s.allowed_views.begin(), s.allowed_views.end());
    s.allowed_views.erase(std::unique(s.allowed_views.begin(), s.allowed_views.end()),
                          s.allowed_views.end());
    s.validate();
    return s;
}

std::string StandardLcl::to_json() const {
    json doc;
    doc["radius"] = radius;
    doc["alphabet"] = alphabet;
    json views = json::array();
    for (const auto& v : allowed_views) views.push_back(view_token(v));
    doc["allowed_views"] = views;
    return doc.dump(2);
}

std::vector<View> enumerate_views(int radius, int alphabet_size,
                                  const std::function<bool(const View&)>& pred) {
    std::vector<View> out;
    const int r = radius;
    for (int a = 0; a <= r; ++a) {
        for (int b = 0; b <= r; ++b) {
            if (a + b == 0) continue;
            const int content = 2 * (a + b);
            View v(static_cast<size_t>(4 * r), kBot);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == content) {
                    if (pred(v)) out.push_back(v);
                    return;
                }
                for (LabelId l = 0; l < alphabet_size; ++l) {
                    v[static_cast<size_t>(2 * (r - a) + pos)] = l;
                    rec(pos + 1);
                }
                v[static_cast<size_t>(2 * (r - a) + pos)] = kBot;
            };
            rec(0);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StandardLcl generalize_labels(const GeneralLcl& g) {
    if (g.edge_alphabet.empty() && g.node_alphabet.empty() && !g.wants_orientation)
        throw Error::input("general problem requests no labeling at all");
    StandardLcl s;
    s.radius = g.radius;

    // Product alphabet: (edge part, node part, orientation part), omitting
    // absent components.
    const int ne = std::max<int>(1, static_cast<int>(g.edge_alphabet.size()));
    const int nv = std::max<int>(1, static_cast<int>(g.node_alphabet.size()));
    const int no = g.wants_orientation ? 2 : 1;
    auto epart = [&](LabelId l) { return l / (nv * no); };
    auto vpart = [&](LabelId l) { return (l / no) % nv; };
    auto opart = [&](LabelId l) { return l % no; };
    for (int e = 0; e < ne; ++e)
        for (int v = 0; v < nv; ++v)
            for (int o = 0; o < no; ++o) {
                std::string tok;
                if (!g.edge_alphabet.empty()) tok += g.edge_alphabet[static_cast<size_t>(e)];
                if (!g.node_alphabet.empty()) { if (!tok.empty()) tok += "+"; tok += g.node_alphabet[static_cast<size_t>(v)]; }
                if (g.wants_orientation) { if (!tok.empty()) tok += "+"; tok += (o == 0 ? "H" : "T"); }
                s.alphabet.push_back(tok);
            }

    const int r = g.radius;
    std::vector<View> user = g.allowed_views;
    std::sort(user.begin(), user.end());
    auto user_ok = [&](const View& v) {
        return user.empty() || std::binary_search(user.begin(), user.end(), v);
    };
    // Consistency of the product encoding along the walk: within each edge
    // (positions 2i, 2i+1 of the content) edge parts agree and orientation
    // parts differ; within each node boundary (positions 2i+1, 2i+2) node
    // parts agree.
    auto consistent = [&](const View& v) {
        const int len = 4 * r;
        for (int i = 0; i + 1 < len; i += 2) {
            LabelId x = v[static_cast<size_t>(i)], y = v[static_cast<size_t>(i + 1)];
            if (x == kBot || y == kBot) continue;
            if (epart(x) != epart(y)) return false;
            if (g.wants_orientation && opart(x) == opart(y)) return false;
        }
        for (int i = 1; i + 1 < len; i += 2) {
            LabelId x = v[static_cast<size_t>(i)], y = v[static_cast<size_t>(i + 1)];
            if (x == kBot || y == kBot) continue;
            if (vpart(x) != vpart(y)) return false;
        }
        return true;
    };
    s.allowed_views = enumerate_views(r, static_cast<int>(s.alphabet.size()),
                                      [&](const View& v) { return consistent(v) && user_ok(v); });
    s.validate();
    return s;
}

namespace {

std::vector<View> usable_views(const StandardLcl& s) {
    std::vector<View> out;
    for (const auto& v : s.allowed_views)
        if (port_usable(v, s.radius)) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

LclProblem normalize(const StandardLcl& s, const NormalizeOptions& opts) {
    s.validate();
    if (s.radius > opts.max_radius)
        throw Error::budget("radius exceeds the configured cap");
    auto views = usable_views(s);
    if (static_cast<long long>(views.size()) > opts.view_cap)
        throw Error::budget("normalized alphabet exceeds the configured cap");
    if (views.empty()) throw Error::input("no usable views: every view lacks far-side content");

    std::map<View, LabelId> index;
    std::vector<std::string> alphabet;
    for (size_t i = 0; i < views.size(); ++i) {
        index[views[i]] = static_cast<LabelId>(i);
        alphabet.push_back(s.view_token(views[i]));
    }

    std::vector<LabelPair> node_pairs;
    for (size_t i = 0; i < views.size(); ++i) {
        auto rev = reversed(views[i]);
        auto it = index.find(rev);
        if (it != index.end())
            node_pairs.emplace_back(static_cast<LabelId>(i), it->second);
    }

    // Edge pairs: dropping the first edge of S must read, reversed, like
    // dropping the first edge of S'.
    std::map<View, std::vector<LabelId>> by_suffix;
    for (size_t i = 0; i < views.size(); ++i) {
        View suffix(views[i].begin() + 2, views[i].end());
        by_suffix[std::move(suffix)].push_back(static_cast<LabelId>(i));
    }
    std::vector<LabelPair> edge_pairs;
    long long pair_count = 0;
    for (size_t i = 0; i < views.size(); ++i) {
        View key(views[i].begin() + 2, views[i].end());
        std::reverse(key.begin(), key.end());
        auto it = by_suffix.find(key);
        if (it == by_suffix.end()) continue;
        pair_count += static_cast<long long>(it->second.size());
        if (pair_count > opts.pair_cap)
            throw Error::budget("edge constraint size exceeds the configured cap");
        for (LabelId j : it->second)
            edge_pairs.emplace_back(static_cast<LabelId>(i), j);
    }

    std::vector<LabelId> endpoints;
    for (size_t i = 0; i < views.size(); ++i) {
        auto sh = shape_of(views[i], s.radius);
        if (sh.prefix_pad == 2 * s.radius) endpoints.push_back(static_cast<LabelId>(i));
    }

    LclProblem out(std::move(alphabet), std::move(edge_pairs), std::move(node_pairs),
                   endpoints, endpoints);
    out.min_valid_cycle = 2 * s.radius + 2;
    return out;
}

namespace {

// View at port (e, v): read ports along the walk that approaches v from the
// side away from e and continues across e. Returns the padded sequence.
View port_view(const StandardLcl& s, const Instance& inst, const Labeling& lab,
               int edge, int node) {
    const int r = s.radius;
    const int n = inst.n;
    const bool cyc = inst.topology == Topology::Cycle;
    auto nodes = inst.edge_nodes(edge);
    const int other = nodes[0] == node ? nodes[1] : nodes[0];

    // Walk step: nodes are laid out on a line (or ring); moving from `node`
    // toward `other` fixes the walk direction.
    int dir;
    if (cyc) dir = (node + 1) % n == other ? +1 : -1;
    else dir = other == node + 1 ? +1 : -1;

    auto edge_between = [&](int u, int w) {
        // canonical edge index joining adjacent u, w
        if (cyc) return (w == (u + 1) % n) ? u : w;
        return std::min(u, w);
    };
    auto port_label = [&](int u, int w) {
        int e = edge_between(u, w);
        auto en = inst.edge_nodes(e);
        return lab.ports[static_cast<size_t>(e)][en[0] == u ? 0 : 1];
    };
    auto step = [&](int u, int d) -> int {
        if (cyc) return (u + d + n) % n;
        int w = u + d;
        return (w < 0 || w >= n) ? -1 : w;
    };

    View out(static_cast<size_t>(4 * r), kBot);
    // Far side: up to r edges walking opposite to dir, recorded inward.
    {
        std::vector<LabelId> chunk;  // collected from v outward, pairs (near, far)
        int u = node;
        for (int i = 0; i < r; ++i) {
            int w = step(u, -dir);
            if (w < 0) break;
            chunk.push_back(port_label(u, w));
            chunk.push_back(port_label(w, u));
            u = w;
        }
        // chunk holds the walk v->far; the view stores far->v.
        int pos = 2 * r;
        for (LabelId l : chunk) out[static_cast<size_t>(--pos)] = l;
    }
    // Near side: across e and onward, up to r edges.
    {
        int pos = 2 * r;
        int u = node;
        for (int i = 0; i < r; ++i) {
            int w = step(u, dir);
            if (w < 0) break;
            out[static_cast<size_t>(pos++)] = port_label(u, w);
            out[static_cast<size_t>(pos++)] = port_label(w, u);
            u = w;
        }
    }
    return out;
}

void check_instance_for_standard(const StandardLcl& s, const Instance& inst) {
    if (inst.topology == Topology::Tree)
        throw Error::input("standard-form problems cover cyclepaths only");
    if (inst.topology == Topology::Cycle && inst.n < 2 * s.radius + 2)
        throw Error::input("cycle shorter than 2r+2: the normalization does not apply");
}

} // namespace

Labeling lift_labeling(const StandardLcl& s, const Instance& inst, const Labeling& lab,
                       const NormalizeOptions&) {
    check_instance_for_standard(s, inst);
    const int m = inst.num_edges();
    if (static_cast<int>(lab.ports.size()) != m)
        throw Error::input("labeling does not cover every port");

    std::vector<View> allowed = s.allowed_views;
    std::sort(allowed.begin(), allowed.end());
    auto views = usable_views(s);
    std::map<View, LabelId> index;
    for (size_t i = 0; i < views.size(); ++i) index[views[i]] = static_cast<LabelId>(i);

    Labeling out;
    out.ports.assign(static_cast<size_t>(m), {0, 0});
    for (int e = 0; e < m; ++e) {
        auto nodes = inst.edge_nodes(e);
        for (int side = 0; side < 2; ++side) {
            View v = port_view(s, inst, lab, e, nodes[static_cast<size_t>(side)]);
            if (!std::binary_search(allowed.begin(), allowed.end(), v))
                throw Error::input("labeling is not legal for the standard-form problem (node " +
                                   std::to_string(nodes[static_cast<size_t>(side)]) + ")");
            auto it = index.find(v);
            if (it == index.end()) throw Error::internal("usable view missing from the index");
            out.ports[static_cast<size_t>(e)][static_cast<size_t>(side)] = it->second;
        }
    }

    return out;
}

Labeling project_labeling(const StandardLcl& s, const Instance& inst, const Labeling& lifted,
                          const NormalizeOptions&) {
    check_instance_for_standard(s, inst);
    const int m = inst.num_edges();
    if (static_cast<int>(lifted.ports.size()) != m)
        throw Error::input("labeling does not cover every port");
    auto views = usable_views(s);
    const int r = s.radius;

    Labeling out;
    out.ports.assign(static_cast<size_t>(m), {0, 0});
    for (int e = 0; e < m; ++e) {
        for (int side = 0; side < 2; ++side) {
            LabelId vi = lifted.ports[static_cast<size_t>(e)][static_cast<size_t>(side)];
            if (vi < 0 || vi >= static_cast<LabelId>(views.size()))
                throw Error::input("lifted labeling uses an unknown view label");
            // The port's own label sits just past the center of its view.
            out.ports[static_cast<size_t>(e)][static_cast<size_t>(side)] =
                views[static_cast<size_t>(vi)][static_cast<size_t>(2 * r)];
        }
    }
    // Every view must agree with the projected labeling on every position.
    for (int e = 0; e < m; ++e) {
        auto nodes = inst.edge_nodes(e);
        for (int side = 0; side < 2; ++side) {
            LabelId vi = lifted.ports[static_cast<size_t>(e)][static_cast<size_t>(side)];
            View actual = port_view(s, inst, out, e, nodes[static_cast<size_t>(side)]);
            if (actual != views[static_cast<size_t>(vi)])
                throw Error::input("inconsistent views: claimed neighborhood disagrees with "
                                   "the projected labeling at edge " + std::to_string(e));
        }
    }
    return out;
}

LclProblem guard_short_cycles(const LclProblem& normalized, int radius) {
    const int T = 2 * radius + 2;
    // Companion automaton: directed cycles of every length in [T, 2T-1]
    // through one shared hub; closed-walk lengths are then exactly >= T.
    struct St { int cycle; int pos; };  // cycle = -1 for the hub
    std::vector<St> sts{{-1, 0}};
    std::vector<std::pair<int, int>> trans;  // state index pairs
    for (int L = T; L <= 2 * T - 1; ++L) {
        int prev = 0;
        for (int p = 1; p < L; ++p) {
            sts.push_back({L, p});
            trans.emplace_back(prev, static_cast<int>(sts.size()) - 1);
            prev = static_cast<int>(sts.size()) - 1;
        }
        trans.emplace_back(prev, 0);
    }
    std::vector<std::string> alphabet;
    for (size_t i = 0; i < sts.size(); ++i) {
        alphabet.push_back("g" + std::to_string(i) + "a");
        alphabet.push_back("g" + std::to_string(i) + "b");
    }
    auto la = [&](int st) { return static_cast<LabelId>(2 * st); };
    auto lb = [&](int st) { return static_cast<LabelId>(2 * st + 1); };
    std::vector<LabelPair> edge, node;
    for (size_t i = 0; i < sts.size(); ++i) {
        edge.emplace_back(la(static_cast<int>(i)), lb(static_cast<int>(i)));
        edge.emplace_back(lb(static_cast<int>(i)), la(static_cast<int>(i)));
    }
    for (auto [sf, tt] : trans) {
        node.emplace_back(lb(sf), la(tt));
        node.emplace_back(la(tt), lb(sf));
    }
    std::vector<LabelId> all;
    for (size_t i = 0; i < alphabet.size(); ++i) all.push_back(static_cast<LabelId>(i));
    LclProblem guard(std::move(alphabet), std::move(edge), std::move(node), all, all);
    LclProblem out = problem_product(normalized, guard);
    out.min_valid_cycle = 0;  // the product enforces the bound itself
    return out;
}

} // namespace lclc
