/*
 * qfisher — quantum Fisher information for two-qubit X-states and Werner
 * states with one uniformly accelerated qubit.
 *
 * C API of the shared library.  All functions return a qf_status; on
 * failure a thread-local message is available through qf_last_error().
 * Handles are opaque and must be released with their destroy function.
 */
#ifndef QFISHER_H
#define QFISHER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32) || defined(_WIN64)
#define QF_API __declspec(dllexport)
#else
#define QF_API __attribute__((visibility("default")))
#endif

typedef enum qf_status {
    QF_OK = 0,
    QF_ERR_DOMAIN = 1,           /* invalid state parameters or r outside [0, pi/4] */
    QF_ERR_NOT_ESTIMABLE = 2,    /* perturbation lives in the kernel of rho */
    QF_ERR_DEGENERATE = 3,       /* eigenvector derivatives undefined here */
    QF_ERR_SINGULAR = 4,         /* closed-form denominator below threshold */
    QF_ERR_CONFIG = 5,           /* bad sweep configuration or unknown preset */
    QF_ERR_IO = 6,               /* file could not be read or written */
    QF_ERR_INVALID_ARGUMENT = 7, /* null pointer or malformed argument */
    QF_ERR_INTERNAL = 8          /* invariant breach inside the library */
} qf_status;

typedef enum qf_estimand {
    QF_ESTIMAND_X = 0,
    QF_ESTIMAND_Y = 1,
    QF_ESTIMAND_Z = 2,
    QF_ESTIMAND_R = 3
} qf_estimand;

/* Opaque inertial state description (X-state or Werner state). */
typedef struct qf_state qf_state;

/* Full point evaluation.  When sld_only is nonzero the decomposition was
 * unavailable (degenerate point) and f_classical..residual are NaN while
 * f_sld is still valid. */
typedef struct qf_evaluation {
    double f_classical;
    double f_pure;
    double f_mixture;
    double f_total;
    double f_sld;
    double residual; /* |f_total - f_sld| / max(|f_sld|, 1e-6) */
    double eigenvalues[4];
    double populations[4];
    double concurrence;
    int fallback;
    int sld_only;
} qf_evaluation;

QF_API const char* qf_version(void);
QF_API const char* qf_status_name(qf_status status);

/* Message for the last failing call on this thread; empty string if none. */
QF_API const char* qf_last_error(void);

QF_API qf_status qf_state_create_x(double x, double y, double z, qf_state** out_state);
QF_API qf_status qf_state_create_werner(double x, qf_state** out_state);
QF_API void qf_state_destroy(qf_state* state);

/* r = arctan(exp(-pi * omega / a)), units with c = 1. */
QF_API qf_status qf_rindler_parameter(double acceleration, double frequency, double* out_r);

QF_API qf_status qf_evaluate(const qf_state* state, double r, qf_estimand estimand,
                             qf_evaluation* out);

/* Accelerated density matrix, row-major real parts (X-states are real). */
QF_API qf_status qf_density_matrix(const qf_state* state, double r, double out_entries[16]);

/* Parameter sweeps.  Both write <label>.csv under output_dir and copy the
 * path into out_csv_path (truncated to out_csv_path_size).  The seed is
 * recorded for reproducibility; sweep evaluation itself is deterministic. */
QF_API qf_status qf_sweep_preset(const char* preset, const char* output_dir, uint64_t seed,
                                 char* out_csv_path, size_t out_csv_path_size);
QF_API qf_status qf_sweep_config(const char* config_path, const char* output_dir, uint64_t seed,
                                 char* out_csv_path, size_t out_csv_path_size);

/* Space-separated preset names. */
QF_API qf_status qf_preset_names(char* out_names, size_t out_names_size);

typedef struct qf_verify_options {
    uint64_t seed;
    int samples;
    int grid_only;
} qf_verify_options;

typedef struct qf_verify_summary {
    int checks_total;
    int checks_failed; /* hard failures */
    int warnings;
    int verdicts_total;
    int verdicts_errata;
    double elapsed_seconds;
} qf_verify_summary;

/* Runs the verification suite.  When report_dir is non-NULL writes
 * errata_report.txt and verification.txt there.  When out_report is
 * non-NULL it receives the full report text; release with qf_string_free.
 * Returns QF_OK even when hard checks fail (consult the summary);
 * other statuses indicate the suite could not run. */
QF_API qf_status qf_verify(const qf_verify_options* options, const char* report_dir,
                           qf_verify_summary* out_summary, char** out_report);

QF_API void qf_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* QFISHER_H */
