// problem.hpp -- node-edge-checkable problems over port labels.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/bits.hpp"

namespace lclc {

using LabelId = int;
using LabelPair = std::pair<LabelId, LabelId>;

// A problem is a tuple (alphabet, edge pairs, node pairs, start set, end set).
// Labels are interned to dense indices; all pair/member queries are O(1).
class LclProblem {
public:
    LclProblem() = default;
    LclProblem(std::vector<std::string> alphabet,
               std::vector<LabelPair> edge_pairs,
               std::vector<LabelPair> node_pairs,
               std::vector<LabelId> start,
               std::vector<LabelId> end);

    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::string& token(LabelId a) const { return alphabet_[static_cast<size_t>(a)]; }
    std::optional<LabelId> find_label(const std::string& tok) const;

    const std::vector<LabelPair>& edge_pairs() const { return edge_pairs_; }
    const std::vector<LabelPair>& node_pairs() const { return node_pairs_; }
    const std::vector<LabelId>& start_labels() const { return start_; }
    const std::vector<LabelId>& end_labels() const { return end_; }

    bool edge_allows(LabelId a, LabelId b) const { return edge_.test(cell(a, b)); }
    bool node_allows(LabelId a, LabelId b) const { return node_.test(cell(a, b)); }
    bool is_start(LabelId a) const { return start_set_.test(static_cast<size_t>(a)); }
    bool is_end(LabelId a) const { return end_set_.test(static_cast<size_t>(a)); }

    bool symmetric() const;

    // Cycles-only problems can be annotated by the normalizer: cycle verdicts
    // only apply from this length on. 0 means no restriction.
    int min_valid_cycle = 0;

private:
    size_t cell(LabelId a, LabelId b) const {
        return static_cast<size_t>(a) * alphabet_.size() + static_cast<size_t>(b);
    }

    std::vector<std::string> alphabet_;
    std::vector<LabelPair> edge_pairs_;
    std::vector<LabelPair> node_pairs_;
    std::vector<LabelId> start_, end_;
    Bits edge_, node_, start_set_, end_set_;
};

// Parses the problem document format. Throws Error::input with a field locus
// on malformed documents, undeclared labels, or an empty alphabet.
LclProblem parse_problem(const std::string& json_text);

std::string serialize_problem(const LclProblem& p);

// Componentwise product: a labeling is valid iff both factors accept it.
LclProblem problem_product(const LclProblem& a, const LclProblem& b);

// Builders used all over the tests.
LclProblem make_problem(std::vector<std::string> alphabet,
                        std::vector<std::pair<std::string, std::string>> edge_pairs,
                        std::vector<std::pair<std::string, std::string>> node_pairs,
                        std::vector<std::string> start,
                        std::vector<std::string> end);

} // namespace lclc
