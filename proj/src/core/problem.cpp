#include "core/problem.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "core/error.hpp"

namespace lclc {

using nlohmann::json;

namespace {

void sort_unique(std::vector<LabelPair>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void sort_unique(std::vector<LabelId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

LclProblem::LclProblem(std::vector<std::string> alphabet,
                       std::vector<LabelPair> edge_pairs,
                       std::vector<LabelPair> node_pairs,
                       std::vector<LabelId> start,
                       std::vector<LabelId> end)
    : alphabet_(std::move(alphabet)),
      edge_pairs_(std::move(edge_pairs)),
      node_pairs_(std::move(node_pairs)),
      start_(std::move(start)),
      end_(std::move(end)) {
    if (alphabet_.empty()) throw Error::input("alphabet must be non-empty");
    for (size_t i = 0; i < alphabet_.size(); ++i)
        for (size_t j = i + 1; j < alphabet_.size(); ++j)
            if (alphabet_[i] == alphabet_[j])
                throw Error::input("duplicate label '" + alphabet_[i] + "' in alphabet");

    sort_unique(edge_pairs_);
    sort_unique(node_pairs_);
    sort_unique(start_);
    sort_unique(end_);

    const int n = alphabet_size();
    auto check = [&](LabelId a, const char* where) {
        if (a < 0 || a >= n)
            throw Error::input(std::string("label index out of range in ") + where);
    };
    edge_ = Bits(static_cast<size_t>(n) * n);
    node_ = Bits(static_cast<size_t>(n) * n);
    start_set_ = Bits(static_cast<size_t>(n));
    end_set_ = Bits(static_cast<size_t>(n));
    for (auto [a, b] : edge_pairs_) {
        check(a, "edge_constraint");
        check(b, "edge_constraint");
        edge_.set(cell(a, b));
    }
    for (auto [a, b] : node_pairs_) {
        check(a, "node_constraint");
        check(b, "node_constraint");
        node_.set(cell(a, b));
    }
    for (auto a : start_) {
        check(a, "start");
        start_set_.set(static_cast<size_t>(a));
    }
    for (auto a : end_) {
        check(a, "end");
        end_set_.set(static_cast<size_t>(a));
    }
}

std::optional<LabelId> LclProblem::find_label(const std::string& tok) const {
    for (size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == tok) return static_cast<LabelId>(i);
    return std::nullopt;
}

bool LclProblem::symmetric() const {
    for (auto [a, b] : edge_pairs_)
        if (!edge_allows(b, a)) return false;
    for (auto [a, b] : node_pairs_)
        if (!node_allows(b, a)) return false;
    return start_ == end_;
}

namespace {

std::vector<std::string> parse_label_array(const json& j, const char* field) {
    if (!j.is_array()) throw Error::input(std::string(field) + ": expected an array");
    std::vector<std::string> out;
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string())
            throw Error::input(std::string(field) + "[" + std::to_string(i) + "]: expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

LabelId resolve(const std::unordered_map<std::string, LabelId>& idx,
                const std::string& tok, const std::string& locus) {
    auto it = idx.find(tok);
    if (it == idx.end())
        throw Error::input(locus + ": label '" + tok + "' is not declared in the alphabet");
    return it->second;
}

std::vector<LabelPair> parse_pair_array(const json& j,
                                        const std::unordered_map<std::string, LabelId>& idx,
                                        const char* field) {
    if (!j.is_array()) throw Error::input(std::string(field) + ": expected an array");
    std::vector<LabelPair> out;
    for (size_t i = 0; i < j.size(); ++i) {
        const std::string locus = std::string(field) + "[" + std::to_string(i) + "]";
        const json& e = j[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw Error::input(locus + ": expected a pair of strings");
        out.emplace_back(resolve(idx, e[0].get<std::string>(), locus),
                         resolve(idx, e[1].get<std::string>(), locus));
    }
    return out;
}

} // namespace

LclProblem parse_problem(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error::input(std::string("problem document: ") + e.what());
    }
    if (!doc.is_object()) throw Error::input("problem document: expected a JSON object");
    if (!doc.contains("alphabet")) throw Error::input("problem document: missing 'alphabet'");
    if (doc.contains("inputs") || doc.contains("input_labels"))
        throw Error::input("input-labeled problems are not supported");

    auto alphabet = parse_label_array(doc["alphabet"], "alphabet");
    if (alphabet.empty()) throw Error::input("alphabet: must be non-empty");

    std::unordered_map<std::string, LabelId> idx;
    for (size_t i = 0; i < alphabet.size(); ++i) {
        if (!idx.emplace(alphabet[i], static_cast<LabelId>(i)).second)
            throw Error::input("alphabet[" + std::to_string(i) + "]: duplicate label '" + alphabet[i] + "'");
    }

    std::vector<LabelPair> edge, node;
    if (doc.contains("edge_constraint"))
        edge = parse_pair_array(doc["edge_constraint"], idx, "edge_constraint");
    if (doc.contains("node_constraint"))
        node = parse_pair_array(doc["node_constraint"], idx, "node_constraint");

    // Omitted start/end default to the full alphabet; an explicit empty array
    // means the empty set (cycles-only problem).
    std::vector<LabelId> start, end;
    auto parse_endpoint_set = [&](const char* field) -> std::vector<LabelId> {
        if (!doc.contains(field)) {
            std::vector<LabelId> all(alphabet.size());
            for (size_t i = 0; i < alphabet.size(); ++i) all[i] = static_cast<LabelId>(i);
            return all;
        }
        std::vector<LabelId> out;
        auto toks = parse_label_array(doc[field], field);
        for (size_t i = 0; i < toks.size(); ++i)
            out.push_back(resolve(idx, toks[i], std::string(field) + "[" + std::to_string(i) + "]"));
        return out;
    };
    start = parse_endpoint_set("start");
    end = parse_endpoint_set("end");

    LclProblem p(std::move(alphabet), std::move(edge), std::move(node),
                 std::move(start), std::move(end));
    if (doc.contains("meta") && doc["meta"].is_object() &&
        doc["meta"].contains("min_valid_cycle"))
        p.min_valid_cycle = doc["meta"]["min_valid_cycle"].get<int>();
    return p;
}

std::string serialize_problem(const LclProblem& p) {
    json doc;
    doc["alphabet"] = p.alphabet();
    auto pairs = [&](const std::vector<LabelPair>& v) {
        json arr = json::array();
        for (auto [a, b] : v) arr.push_back({p.token(a), p.token(b)});
        return arr;
    };
    doc["edge_constraint"] = pairs(p.edge_pairs());
    doc["node_constraint"] = pairs(p.node_pairs());
    auto labels = [&](const std::vector<LabelId>& v) {
        json arr = json::array();
        for (auto a : v) arr.push_back(p.token(a));
        return arr;
    };
    doc["start"] = labels(p.start_labels());
    doc["end"] = labels(p.end_labels());
    if (p.min_valid_cycle > 0) doc["meta"] = {{"min_valid_cycle", p.min_valid_cycle}};
    return doc.dump(2);
}

LclProblem problem_product(const LclProblem& a, const LclProblem& b) {
    std::vector<std::string> alphabet;
    const int nb = b.alphabet_size();
    for (const auto& ta : a.alphabet())
        for (const auto& tb : b.alphabet())
            alphabet.push_back(ta + "." + tb);
    auto id = [&](LabelId x, LabelId y) { return x * nb + y; };

    std::vector<LabelPair> edge, node;
    for (auto [x1, y1] : a.edge_pairs())
        for (auto [x2, y2] : b.edge_pairs())
            edge.emplace_back(id(x1, x2), id(y1, y2));
    for (auto [x1, y1] : a.node_pairs())
        for (auto [x2, y2] : b.node_pairs())
            node.emplace_back(id(x1, x2), id(y1, y2));

    std::vector<LabelId> start, end;
    for (auto x : a.start_labels())
        for (auto y : b.start_labels()) start.push_back(id(x, y));
    for (auto x : a.end_labels())
        for (auto y : b.end_labels()) end.push_back(id(x, y));

    LclProblem out(std::move(alphabet), std::move(edge), std::move(node),
                   std::move(start), std::move(end));
    out.min_valid_cycle = std::max(a.min_valid_cycle, b.min_valid_cycle);
    return out;
}

LclProblem make_problem(std::vector<std::string> alphabet,
                        std::vector<std::pair<std::string, std::string>> edge_pairs,
                        std::vector<std::pair<std::string, std::string>> node_pairs,
                        std::vector<std::string> start,
                        std::vector<std::string> end) {
    std::unordered_map<std::string, LabelId> idx;
    for (size_t i = 0; i < alphabet.size(); ++i) idx[alphabet[i]] = static_cast<LabelId>(i);
    auto res = [&](const std::string& t) {
        auto it = idx.find(t);
        if (it == idx.end()) throw Error::input("undeclared label '" + t + "'");
        return it->second;
    };
    std::vector<LabelPair> e, n;
    for (auto& [x, y] : edge_pairs) e.emplace_back(res(x), res(y));
    for (auto& [x, y] : node_pairs) n.emplace_back(res(x), res(y));
    std::vector<LabelId> s, t;
    for (auto& x : start) s.push_back(res(x));
    for (auto& x : end) t.push_back(res(x));
    return LclProblem(std::move(alphabet), std::move(e), std::move(n), std::move(s), std::move(t));
}

} // namespace lclc
