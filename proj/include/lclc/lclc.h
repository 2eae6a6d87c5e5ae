/* lclc.h -- C API for the LCL classification and simulation toolkit.
 *
 * All functions operate on JSON documents (UTF-8 strings) and opaque problem
 * handles. Returned strings are heap-allocated; release them with
 * lclc_string_free. Error codes mirror the CLI exit codes; after a failure,
 * lclc_last_error() describes the most recent error in the calling thread.
 */
#ifndef LCLC_H
#define LCLC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lclc_status {
    LCLC_OK = 0,
    LCLC_ERR_INPUT = 2,      /* malformed documents, domain violations */
    LCLC_ERR_UNSOLVABLE = 3, /* instance admits no labeling */
    LCLC_ERR_BUDGET = 4,     /* configured resource cap exceeded */
    LCLC_ERR_INTERNAL = 5
} lclc_status;

typedef struct lclc_problem lclc_problem;

/* Thread-local message for the last failed call. */
const char* lclc_last_error(void);

void lclc_string_free(char* s);

/* Problem documents: {"alphabet": [...], "edge_constraint": [[a,b],...],
 * "node_constraint": [...], "start": [...], "end": [...]}. */
lclc_status lclc_problem_parse(const char* json, lclc_problem** out);
void lclc_problem_free(lclc_problem* p);
lclc_status lclc_problem_serialize(const lclc_problem* p, char** out_json);

/* Classification report; subset_budget <= 0 uses the default (2^20). */
lclc_status lclc_classify(const lclc_problem* p, int64_t subset_budget, char** out_json);

/* Solvable-length bitmap: topology is "path" or "cycle". */
lclc_status lclc_oracle_lengths(const lclc_problem* p, const char* topology, int max_n,
                                char** out_json);

/* Synthesize + run + verify on the instance document. Output carries the
 * labeling and the trace. Unsolvable instances return LCLC_ERR_UNSOLVABLE. */
lclc_status lclc_solve(const lclc_problem* p, const char* instance_json, char** out_json);

/* Rooted-tree solve for edge-checkable problems (alphabet + edge_constraint). */
lclc_status lclc_solve_tree(const lclc_problem* p, const char* instance_json, char** out_json);

/* Verification: returns LCLC_OK and a JSON array of violations (empty when
 * the labeling is a solution). */
lclc_status lclc_verify(const lclc_problem* p, const char* instance_json,
                        const char* labeling_json, char** out_violations_json);

/* Appendix-style normalization of a standard-form document; returns a
 * problem document. guard_short_cycles != 0 conjoins the short-cycle guard. */
lclc_status lclc_normalize(const char* standard_json, int guard_short_cycles, char** out_json);

/* DOT export of the problem's automaton. */
lclc_status lclc_export_dot(const lclc_problem* p, char** out_dot);

#ifdef __cplusplus
}
#endif

#endif /* LCLC_H */
