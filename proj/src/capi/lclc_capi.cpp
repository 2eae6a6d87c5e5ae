// lclc_capi.cpp -- extern "C" surface over the core library.
#include "lclc/lclc.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "core/classifier.hpp"
#include "core/error.hpp"
#include "core/instance.hpp"
#include "core/normalizer.hpp"
#include "core/oracle.hpp"
#include "core/problem.hpp"
#include "core/verifier.hpp"
#include "runtime/runtime.hpp"

using nlohmann::json;

struct lclc_problem {
    lclc::LclProblem p;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
lclc_status guarded(F&& f) {
    try {
        f();
        return LCLC_OK;
    } catch (const lclc::Error& e) {
        g_last_error = e.what();
        switch (e.code()) {
            case lclc::ErrorCode::Input: return LCLC_ERR_INPUT;
            case lclc::ErrorCode::Unsolvable: return LCLC_ERR_UNSOLVABLE;
            case lclc::ErrorCode::Budget: return LCLC_ERR_BUDGET;
            case lclc::ErrorCode::Internal: return LCLC_ERR_INTERNAL;
        }
        return LCLC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LCLC_ERR_INTERNAL;
    }
}

json solve_result_json(const lclc::LclProblem& p, const lclc::Instance& inst,
                       const lclc::Labeling& lab, const lclc::SimTrace& trace) {
    json j;
    j["labeling"] = json::parse(lab.to_json(p, inst));
    j["trace"] = json::parse(trace.to_json());
    return j;
}

} // namespace

extern "C" {

const char* lclc_last_error(void) { return g_last_error.c_str(); }

void lclc_string_free(char* s) { ::free(s); }

lclc_status lclc_problem_parse(const char* text, lclc_problem** out) {
    return guarded([&] {
        if (!text || !out) throw lclc::Error::input("null argument");
        auto p = new lclc_problem{lclc::parse_problem(text)};
        *out = p;
    });
}

void lclc_problem_free(lclc_problem* p) { delete p; }

lclc_status lclc_problem_serialize(const lclc_problem* p, char** out_json) {
    return guarded([&] {
        if (!p || !out_json) throw lclc::Error::input("null argument");
        *out_json = dup_string(lclc::serialize_problem(p->p));
    });
}

lclc_status lclc_classify(const lclc_problem* p, int64_t subset_budget, char** out_json) {
    return guarded([&] {
        if (!p || !out_json) throw lclc::Error::input("null argument");
        lclc::ClassifyOptions opts;
        if (subset_budget > 0) opts.subset_budget = static_cast<uint64_t>(subset_budget);
        auto c = lclc::classify(p->p, opts);
        *out_json = dup_string(lclc::classification_to_json(p->p, c));
    });
}

lclc_status lclc_oracle_lengths(const lclc_problem* p, const char* topology, int max_n,
                                char** out_json) {
    return guarded([&] {
        if (!p || !topology || !out_json) throw lclc::Error::input("null argument");
        std::string topo = topology;
        lclc::Topology t;
        if (topo == "path") t = lclc::Topology::Path;
        else if (topo == "cycle") t = lclc::Topology::Cycle;
        else throw lclc::Error::input("topology must be 'path' or 'cycle'");
        auto lens = lclc::solvable_lengths(p->p, t, max_n);
        json j;
        j["topology"] = topo;
        j["max_n"] = lens.max_n;
        json bits = json::array();
        int first_unsolvable = -1;
        long long solvable_count = 0;
        for (int i = 1; i <= lens.max_n; ++i) {
            bool s = lens.test(i);
            bits.push_back(s ? 1 : 0);
            if (s) ++solvable_count;
            else if (first_unsolvable < 0) first_unsolvable = i;
        }
        j["solvable"] = bits;
        j["summary"] = {
            {"first_unsolvable", first_unsolvable},
            {"density", lens.max_n ? static_cast<double>(solvable_count) / lens.max_n : 0.0},
        };
        *out_json = dup_string(j.dump(2));
    });
}

lclc_status lclc_solve(const lclc_problem* p, const char* instance_json, char** out_json) {
    return guarded([&] {
        if (!p || !instance_json || !out_json) throw lclc::Error::input("null argument");
        auto inst = lclc::Instance::from_json(instance_json);
        if (inst.topology == lclc::Topology::Tree) {
            auto [lab, trace] = lclc::solve_rooted_tree(p->p, inst);
            lclc::LclProblem path_p = lclc::tree_problem_to_path(p->p);
            *out_json = dup_string(solve_result_json(path_p, inst, lab, trace).dump(2));
            return;
        }
        auto c = lclc::classify(p->p);
        auto plan = lclc::synthesize(p->p, c, inst.topology, inst.directed);
        auto [lab, trace] = lclc::run_local(inst, plan);
        *out_json = dup_string(solve_result_json(p->p, inst, lab, trace).dump(2));
    });
}

lclc_status lclc_solve_tree(const lclc_problem* p, const char* instance_json, char** out_json) {
    return lclc_solve(p, instance_json, out_json);
}

lclc_status lclc_verify(const lclc_problem* p, const char* instance_json,
                        const char* labeling_json, char** out_violations_json) {
    return guarded([&] {
        if (!p || !instance_json || !labeling_json || !out_violations_json)
            throw lclc::Error::input("null argument");
        auto inst = lclc::Instance::from_json(instance_json);
        auto lab = lclc::Labeling::from_json(p->p, inst, labeling_json);
        auto violations = lclc::verify(p->p, inst, lab);
        *out_violations_json = dup_string(lclc::violations_to_json(p->p, violations));
    });
}

lclc_status lclc_normalize(const char* standard_json, int guard_short_cycles, char** out_json) {
    return guarded([&] {
        if (!standard_json || !out_json) throw lclc::Error::input("null argument");
        auto s = lclc::StandardLcl::from_json(standard_json);
        auto problem = lclc::normalize(s);
        if (guard_short_cycles) problem = lclc::guard_short_cycles(problem, s.radius);
        *out_json = dup_string(lclc::serialize_problem(problem));
    });
}

lclc_status lclc_export_dot(const lclc_problem* p, char** out_dot) {
    return guarded([&] {
        if (!p || !out_dot) throw lclc::Error::input("null argument");
        *out_dot = dup_string(lclc::to_dot(lclc::build_automaton(p->p)));
    });
}

} // extern "C"
