/* Steiner forest solver: moat growing, dual-based local search, extension,
 * autarkic pairs, exact oracles and instance generators behind a C ABI.
 *
 * Handles are opaque; every function returns an sf_status. Strings returned
 * through char** are heap-allocated and must be released with
 * sf_string_free(). On failure, sf_last_error() describes the problem for
 * the calling thread.
 */
#ifndef STEINERFOREST_H
#define STEINERFOREST_H

#include <stddef.h>

#if defined(_WIN32)
#define SF_API __declspec(dllexport)
#else
#define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_PARSE = 2,
  SF_ERR_INFEASIBLE = 3,
  SF_ERR_CAPACITY = 4,
  SF_ERR_INTERNAL = 5
} sf_status;

typedef struct sf_instance sf_instance;
typedef struct sf_solution sf_solution;

SF_API const char* sf_last_error(void);
SF_API void sf_string_free(char* text);
SF_API void sf_instance_free(sf_instance* instance);
SF_API void sf_solution_free(sf_solution* solution);

/* --- instances ---------------------------------------------------------- */

SF_API sf_status sf_instance_parse(const char* text, sf_instance** out);
SF_API sf_status sf_instance_read_file(const char* path, sf_instance** out);
SF_API sf_status sf_instance_serialize(const sf_instance* instance, char** out_text);
SF_API sf_status sf_instance_validate(const sf_instance* instance);
SF_API int sf_instance_vertex_count(const sf_instance* instance);
SF_API int sf_instance_edge_count(const sf_instance* instance);

/* --- generators; rationals are passed as "num/den" strings -------------- */

SF_API sf_status sf_gen_wheel(const char* xi, sf_instance** out);
SF_API sf_status sf_gen_grid(int n, int m, const char* xi, sf_instance** out);
/* graph with self-paired vertices; terminal ids come back as a CSV string */
SF_API sf_status sf_gen_binary(int h, const char* xi, sf_instance** out,
                               char** out_terminals_csv);
SF_API sf_status sf_gen_horseshoe(int n, int petals, const char* xi, sf_instance** out);
SF_API sf_status sf_gen_gluttonous(int n, int k, sf_instance** out);
SF_API sf_status sf_gen_random(int n, const char* density, unsigned long long seed,
                               sf_instance** out);

/* --- solvers ------------------------------------------------------------ */

SF_API sf_status sf_solve_legacy(const sf_instance* instance, sf_solution** out);
SF_API sf_status sf_solve_local_search(const sf_instance* instance, const char* beta,
                                       sf_solution** out);
/* NULL parameters fall back to the published exact defaults */
SF_API sf_status sf_solve_main(const sf_instance* instance, const char* beta,
                               const char* epsilon, const char* eta, sf_solution** out);
SF_API sf_status sf_solve_gluttonous(const sf_instance* instance, sf_solution** out);
SF_API sf_status sf_solve_exact(const sf_instance* instance, sf_solution** out);
/* terminals: array of vertex ids; beta NULL defaults to 29/70 */
SF_API sf_status sf_solve_steiner_tree(const sf_instance* instance, const int* terminals,
                                       size_t terminal_count, const char* beta,
                                       sf_solution** out);

SF_API sf_status sf_solution_cost(const sf_solution* solution, char** out_cost);
SF_API sf_status sf_solution_edges(const sf_solution* solution, char** out_csv);
/* multi-line key: value report; empty string for single-route solvers */
SF_API sf_status sf_solution_report(const sf_solution* solution, char** out_text);

/* exact ratio a/b of two "num/den" strings, printed with fixed decimals */
SF_API sf_status sf_ratio_decimal(const char* numerator, const char* denominator, int digits,
                                  char** out_text);

/* --- traces ------------------------------------------------------------- */

SF_API sf_status sf_trace_legacy(const sf_instance* instance, char** out_json);
SF_API sf_status sf_trace_local_search(const sf_instance* instance, const char* beta,
                                       char** out_json);

/* --- verification ------------------------------------------------------- */

/* table_text: lines "name num/den"; NULL verifies the built-in published
 * values. *out_ok is 1 on a clean certificate. */
SF_API sf_status sf_verify_parameters(const char* table_text, int* out_ok,
                                      char** out_report);
/* samples == 0 enumerates all triples (guarded to small instances) */
SF_API sf_status sf_verify_claw(const sf_instance* instance, const char* beta, int samples,
                                unsigned long long seed, int* out_violations,
                                char** out_report);
SF_API sf_status sf_verify_assignments(const sf_instance* instance, char** out_report);
SF_API sf_status sf_verify_refinement(const sf_instance* instance, const char* beta,
                                      int* out_ok);

#ifdef __cplusplus
}
#endif

#endif /* STEINERFOREST_H */
