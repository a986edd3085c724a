#ifndef GMHD_GMHD_H
#define GMHD_GMHD_H

/* C interface of libgmhd. Every function returns a gmhd_status; on failure
 * gmhd_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread). Strings returned through char** are owned by the
 * caller and released with gmhd_free_string. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GMHD_API __declspec(dllexport)
#else
#define GMHD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gmhd_status {
    GMHD_OK = 0,
    GMHD_ERR_CONFIG = 1,
    GMHD_ERR_PARAMETER = 2,
    GMHD_ERR_UNSUPPORTED = 3,
    GMHD_ERR_IO = 4,
    GMHD_ERR_DEGENERATE = 5,
    GMHD_ERR_BLOWUP = 6,
    GMHD_ERR_INTERNAL = 7
} gmhd_status;

GMHD_API const char* gmhd_last_error(void);
GMHD_API const char* gmhd_version(void);
GMHD_API void gmhd_free_string(char* s);

/* Batch jobs. exit_code follows the CLI contract: 0 completed, 1 error,
 * 2 blow-up. output_dir may be NULL (then GMHD_OUTPUT_DIR, then the config). */
GMHD_API gmhd_status gmhd_run_job(const char* config_path, const char* output_dir, int* exit_code);

/* suite: partition, bernstein, lemma1, gn, energy, exponents or all.
 * grid <= 0 keeps each suite's default. output_dir may be NULL (no files). */
GMHD_API gmhd_status gmhd_verify(const char* suite, uint64_t seed, int grid, const char* output_dir,
                                 int* passed, char** summary_json);

typedef struct gmhd_regime {
    int main_condition;
    int wu_condition;
    int tao_condition;
} gmhd_regime;

/* family: "log_power" or "unity". */
GMHD_API gmhd_status gmhd_classify(double alpha, double beta, const char* family, double gamma, int n,
                                   gmhd_regime* out);
GMHD_API gmhd_status gmhd_classify_json(double alpha, double beta, const char* family, double gamma, int n,
                                        char** json);

typedef struct gmhd_exponents {
    double a, two_delta, delta, A, B, C, xi_grad, eta_hk;
} gmhd_exponents;

GMHD_API gmhd_status gmhd_exponents_eval(double k, int n, double lambda, gmhd_exponents* out);
GMHD_API gmhd_status gmhd_exponents_json(double k, int n, double lambda, char** json);

/* Interactive solver handle built from the "solver" (and optional "init")
 * objects of a job config given as JSON text. */
typedef struct gmhd_solver gmhd_solver;

GMHD_API gmhd_status gmhd_solver_create(const char* config_json, gmhd_solver** out);
GMHD_API void gmhd_solver_destroy(gmhd_solver* s);
/* Advances by `steps` steps of the configured fixed dt (or CFL dt). */
GMHD_API gmhd_status gmhd_solver_step(gmhd_solver* s, int steps);
GMHD_API gmhd_status gmhd_solver_time(const gmhd_solver* s, double* t);
/* Latest diagnostic record as one CSV row (header via gmhd_diag_header). */
GMHD_API gmhd_status gmhd_solver_diagnostics(const gmhd_solver* s, char** csv_row);
GMHD_API gmhd_status gmhd_diag_header(char** csv_header);
GMHD_API gmhd_status gmhd_solver_write_snapshot(const gmhd_solver* s, const char* header_path);

#ifdef __cplusplus
}
#endif

#endif
