// lclc_cli.cpp -- command-line front end over the C API.
//
// Exit codes: 0 success, 2 input error, 3 unsolvable instance, 4 budget.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lclc/lclc.h"

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(2);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

[[noreturn]] void die(lclc_status st) {
    std::cerr << lclc_last_error() << "\n";
    std::exit(st == LCLC_OK ? 0 : static_cast<int>(st));
}

lclc_problem* load_problem(const std::string& path) {
    lclc_problem* p = nullptr;
    auto st = lclc_problem_parse(read_file(path).c_str(), &p);
    if (st != LCLC_OK) die(st);
    return p;
}

int64_t budget_from_env() {
    const char* env = std::getenv("LCLC_SUBSET_BUDGET");
    if (!env) return 0;
    return std::strtoll(env, nullptr, 10);
}

std::string make_instance_json(const std::string& topology, int n, bool directed,
                               uint64_t seed) {
    json j;
    j["topology"] = topology;
    j["n"] = n;
    j["directed"] = directed;
    j["seed"] = seed;
    return j.dump();
}

void print_and_free(char* s) {
    std::cout << s << "\n";
    lclc_string_free(s);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lclc: classification, synthesis and simulation of locally "
                 "checkable labelings on cyclepaths and rooted trees"};
    app.require_subcommand(1);

    // classify
    std::string problem_path;
    int check_n = 0;
    auto* classify = app.add_subcommand("classify", "classify a problem and report the full verdict table");
    classify->add_option("problem", problem_path, "problem document")->required();
    classify->add_option("--check", check_n, "cross-check verdicts against the oracle up to N");

    // solve
    std::string solve_problem, topology = "cycle", tree_path;
    int solve_n = 10;
    bool undirected = false, directed = false;
    uint64_t seed = 0;
    auto* solve = app.add_subcommand("solve", "synthesize and run the canonical algorithm");
    solve->add_option("problem", solve_problem, "problem document")->required();
    solve->add_option("--topology", topology, "path or cycle");
    solve->add_option("--n", solve_n, "instance size");
    solve->add_flag("--directed", directed, "directed instance (the default)");
    solve->add_flag("--undirected", undirected, "undirected instance");
    solve->add_option("--seed", seed, "id assignment seed");
    solve->add_option("--tree", tree_path, "rooted-tree instance document (overrides --topology)");

    // oracle
    std::string oracle_problem, oracle_topology = "cycle";
    int oracle_max = 10000;
    auto* oracle = app.add_subcommand("oracle", "emit the exact solvable-length bitmap");
    oracle->add_option("problem", oracle_problem, "problem document")->required();
    oracle->add_option("--topology", oracle_topology, "path or cycle");
    oracle->add_option("--max-n", oracle_max, "largest length to test (default 10000)");

    // verify
    std::string verify_problem, verify_instance, verify_labeling;
    auto* verify = app.add_subcommand("verify", "check a labeling against a problem");
    verify->add_option("problem", verify_problem, "problem document")->required();
    verify->add_option("--instance", verify_instance, "instance document")->required();
    verify->add_option("--labeling", verify_labeling, "labeling document")->required();

    // normalize
    std::string normalize_input;
    bool guard = false;
    auto* normalize = app.add_subcommand("normalize", "convert a radius-r standard-form LCL");
    normalize->add_option("standard", normalize_input, "standard-form document")->required();
    normalize->add_flag("--guard-short-cycles", guard, "conjoin the short-cycle guard");

    // export-dot
    std::string dot_problem;
    auto* export_dot = app.add_subcommand("export-dot", "emit the automaton as a DOT digraph");
    export_dot->add_option("problem", dot_problem, "problem document")->required();

    CLI11_PARSE(app, argc, argv);

    if (*classify) {
        lclc_problem* p = load_problem(problem_path);
        char* report = nullptr;
        auto st = lclc_classify(p, budget_from_env(), &report);
        if (st != LCLC_OK) die(st);
        if (check_n > 0) {
            json combined = json::parse(report);
            lclc_string_free(report);
            json agreement;
            bool all_ok = true;
            for (const char* topo : {"cycle", "path"}) {
                char* lens = nullptr;
                st = lclc_oracle_lengths(p, topo, check_n, &lens);
                if (st != LCLC_OK) die(st);
                json bitmap = json::parse(lens);
                lclc_string_free(lens);
                combined["oracle_check"][topo] = bitmap;
                // Verdict-vs-bitmap consistency for both quadrants.
                auto consistent = [&](const json& verdict, bool count_solvable) {
                    auto member = [&](long long m) {
                        bool solvable = bitmap["solvable"][static_cast<size_t>(m - 1)] == 1;
                        return count_solvable ? solvable : !solvable;
                    };
                    std::string cls = verdict["class"];
                    if (cls == "zero") {
                        for (long long m = 1; m <= check_n; ++m)
                            if (member(m)) return false;
                        return true;
                    }
                    if (cls == "finite") {
                        std::set<long long> listed;
                        for (const auto& m : verdict["members"]) listed.insert(m.get<long long>());
                        for (long long m = 1; m <= check_n; ++m)
                            if (member(m) != (listed.count(m) > 0)) return false;
                        return true;
                    }
                    if (cls == "infinite") {
                        long long window = verdict["window"].get<long long>();
                        long long offset = verdict["offset"].get<long long>();
                        for (long long x = std::max<long long>(offset, 1);
                             x + window - 1 <= check_n; ++x) {
                            bool any = false;
                            for (long long m = x; m < x + window; ++m)
                                if (member(m)) { any = true; break; }
                            if (!any) return false;
                        }
                        return true;
                    }
                    return false;  // undetermined never agrees silently
                };
                const auto& solv = combined["solvability"];
                std::string solv_key = std::string("solvable_") + topo + "s";
                std::string unsolv_key = std::string("unsolvable_") + topo + "s";
                bool ok_s = consistent(solv[solv_key], true);
                bool ok_u = consistent(solv[unsolv_key], false);
                agreement[solv_key] = ok_s;
                agreement[unsolv_key] = ok_u;
                all_ok = all_ok && ok_s && ok_u;
            }
            agreement["agrees"] = all_ok;
            agreement["checked_up_to"] = check_n;
            combined["oracle_check"]["agreement"] = agreement;
            std::cout << combined.dump(2) << "\n";
        } else {
            print_and_free(report);
        }
        lclc_problem_free(p);
        return 0;
    }
    if (*solve) {
        if (directed && undirected) {
            std::cerr << "--directed and --undirected are mutually exclusive\n";
            return 2;
        }
        lclc_problem* p = load_problem(solve_problem);
        std::string inst = tree_path.empty()
                               ? make_instance_json(topology, solve_n, !undirected, seed)
                               : read_file(tree_path);
        char* out = nullptr;
        auto st = lclc_solve(p, inst.c_str(), &out);
        if (st != LCLC_OK) die(st);
        print_and_free(out);
        lclc_problem_free(p);
        return 0;
    }
    if (*oracle) {
        lclc_problem* p = load_problem(oracle_problem);
        char* out = nullptr;
        auto st = lclc_oracle_lengths(p, oracle_topology.c_str(), oracle_max, &out);
        if (st != LCLC_OK) die(st);
        print_and_free(out);
        lclc_problem_free(p);
        return 0;
    }
    if (*verify) {
        lclc_problem* p = load_problem(verify_problem);
        char* out = nullptr;
        auto st = lclc_verify(p, read_file(verify_instance).c_str(),
                              read_file(verify_labeling).c_str(), &out);
        if (st != LCLC_OK) die(st);
        json violations = json::parse(std::string(out));
        lclc_string_free(out);
        lclc_problem_free(p);
        // One violation per line, empty output when the labeling is legal.
        for (const auto& v : violations) std::cout << v.dump() << "\n";
        return violations.empty() ? 0 : 1;
    }
    if (*normalize) {
        char* out = nullptr;
        auto st = lclc_normalize(read_file(normalize_input).c_str(), guard ? 1 : 0, &out);
        if (st != LCLC_OK) die(st);
        json doc = json::parse(out);
        std::cerr << "alphabet size: " << doc["alphabet"].size() << "\n";
        print_and_free(out);
        return 0;
    }
    if (*export_dot) {
        lclc_problem* p = load_problem(dot_problem);
        char* out = nullptr;
        auto st = lclc_export_dot(p, &out);
        if (st != LCLC_OK) die(st);
        std::cout << out;
        lclc_string_free(out);
        lclc_problem_free(p);
        return 0;
    }
    return 0;
}
