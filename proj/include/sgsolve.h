/*
 * sgsolve — C API for the stochastic game reachability solver.
 *
 * All functions returning sg_status report failures through the return code;
 * sg_last_error() yields a human-readable message for the most recent failure
 * on the calling thread. Objects returned through out-parameters are owned by
 * the caller and released with the matching *_free function.
 */
#ifndef SGSOLVE_H
#define SGSOLVE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sg_game sg_game;
typedef struct sg_report sg_report;

typedef enum sg_status {
    SG_OK = 0,
    SG_ERR_ARGUMENT = 1,     /* bad parameters or malformed input values */
    SG_ERR_PARSE = 2,        /* model text/file rejected; message has the line */
    SG_ERR_CAP_EXCEEDED = 3, /* oracle strategy space larger than the cap */
    SG_ERR_INTERNAL = 4
} sg_status;

typedef enum sg_algorithm {
    SG_ALGO_VI = 0,
    SG_ALGO_NAIVE_BVI = 1,
    SG_ALGO_1WP_BVI = 2,
    SG_ALGO_2WP_BVI = 3
} sg_algorithm;

typedef struct sg_solve_config {
    double epsilon;      /* > 0 */
    uint64_t max_iters;  /* >= 1 */
    int record_trace;    /* keep per-iteration bounds at the initial state */
} sg_solve_config;

/* Message for the most recent failure on this thread; empty string if none. */
const char* sg_last_error(void);

/* --- model construction ------------------------------------------------- */

sg_status sg_game_from_string(const char* text, sg_game** out);
sg_status sg_game_from_file(const char* path, sg_game** out);

sg_status sg_game_fig1(sg_game** out);
/* eps is the exact rational eps_num/eps_den; requires 0 < eps < 1/2. */
sg_status sg_game_ecchain(uint32_t n, int64_t eps_num, int64_t eps_den, sg_game** out);
sg_status sg_game_random(uint32_t n_states, uint32_t max_actions, uint32_t branching,
                         double target_fraction, uint64_t seed, sg_game** out);
sg_status sg_game_many_loops(uint32_t k, sg_game** out);

void sg_game_free(sg_game* game);

/* --- model inspection --------------------------------------------------- */

uint32_t sg_game_num_states(const sg_game* game);
uint32_t sg_game_init_state(const sg_game* game);

/* Canonical model text; release with sg_buffer_free. */
sg_status sg_game_serialize(const sg_game* game, char** out_text);

/* Joined validation diagnostics, one per line; empty string when valid. */
sg_status sg_game_validate(const sg_game* game, char** out_violations);

/* Parses "p/q", "0.25" or "1" into an exact rational in (0, 1]. */
sg_status sg_parse_probability(const char* token, int64_t* out_num, int64_t* out_den);

/* --- solving ------------------------------------------------------------ */

sg_status sg_solve(const sg_game* game, sg_algorithm algorithm,
                   const sg_solve_config* config, sg_report** out);

double sg_report_lower(const sg_report* report);
double sg_report_upper(const sg_report* report);
double sg_report_estimate(const sg_report* report);
uint64_t sg_report_iterations(const sg_report* report);
int sg_report_converged(const sg_report* report);
int sg_report_precision_sound(const sg_report* report);
uint64_t sg_report_trace_size(const sg_report* report);
sg_status sg_report_trace_entry(const sg_report* report, uint64_t index,
                                uint64_t* out_iteration, double* out_lower,
                                double* out_upper);
void sg_report_free(sg_report* report);

/* --- exact oracle ------------------------------------------------------- */

/*
 * Brute-force exact values for every state, computed in rational arithmetic
 * and returned as doubles (release with sg_buffer_free). Fails with
 * SG_ERR_CAP_EXCEEDED when the strategy-pair space is larger than cap;
 * pass 0 for the default cap of 10^6.
 */
sg_status sg_oracle_values(const sg_game* game, uint64_t cap, double** out_values,
                           uint32_t* out_count);

void sg_buffer_free(void* buffer);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SGSOLVE_H */
