/* C interface to the quditchain simulator.
 *
 * Every call returns a qc_status; on failure qc_last_error() describes the
 * problem (thread-local, valid until the next failing call on that thread).
 * Matrices cross the boundary as separate real and imaginary arrays in
 * row-major order.
 */
#ifndef QUDITCHAIN_H
#define QUDITCHAIN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QC_BUILDING_LIBRARY)
#define QC_API __attribute__((visibility("default")))
#else
#define QC_API
#endif

typedef enum qc_status {
  QC_OK = 0,
  QC_ERR_INVALID_ARGUMENT = 1,
  QC_ERR_CONFIG = 2,
  QC_ERR_DIMENSION = 3,
  QC_ERR_NUMERIC = 4,
  QC_ERR_CROSSCHECK = 5,
  QC_ERR_IO = 6,
  QC_ERR_INTERNAL = 7
} qc_status;

typedef struct qc_chain qc_chain;
typedef struct qc_state qc_state;

/* Receives one line of progress or findings. */
typedef void (*qc_log_fn)(const char* line, void* user);

QC_API const char* qc_version(void);
QC_API const char* qc_last_error(void);
QC_API const char* qc_status_string(qc_status status);
/* Process exit code: 0 ok, 1 config, 2 crosscheck, 3 numeric quality. */
QC_API int qc_exit_code(qc_status status);

/* Chain of `sites` qudits of dimension `dim`, isotropic exchange J, zero
 * field and no anisotropy. */
QC_API qc_status qc_chain_create(int dim, size_t sites, double J, qc_chain** out);
QC_API void qc_chain_destroy(qc_chain* chain);
QC_API qc_status qc_chain_dim(const qc_chain* chain, size_t* out);
QC_API qc_status qc_chain_set_constant_field(qc_chain* chain, size_t site, double hx, double hy,
                                             double hz);
/* h(t) = (omega1 cn, omega1 sn, omega0 dn) of (omega t | k). */
QC_API qc_status qc_chain_set_consistent_field(qc_chain* chain, size_t site, double omega0,
                                               double omega1, double omega, double k);
QC_API qc_status qc_chain_set_anisotropy(qc_chain* chain, size_t site, double Q, double d);
/* H(t) into dim*dim arrays. */
QC_API qc_status qc_chain_hamiltonian(const qc_chain* chain, double t, double* re, double* im,
                                      size_t len);
/* Ascending eigenvalues of H(t) into `len` = dim doubles. */
QC_API qc_status qc_chain_eigenvalues(const qc_chain* chain, double t, double* out, size_t len);

/* (1/sqrt(d)) sum_i |i...i> as a density matrix. */
QC_API qc_status qc_state_max_entangled(int dim, size_t sites, qc_state** out);
/* Density matrix from row-major parts; must be Hermitian with unit trace. */
QC_API qc_status qc_state_from_matrix(const double* re, const double* im, const int* site_dims,
                                      size_t n_sites, qc_state** out);
QC_API void qc_state_destroy(qc_state* state);
QC_API qc_status qc_state_dim(const qc_state* state, size_t* out);
QC_API qc_status qc_state_matrix(const qc_state* state, double* re, double* im, size_t len);

/* RK4 from t0 to t1 in `steps` steps (0 picks a default). */
QC_API qc_status qc_evolve_numeric(const qc_chain* chain, const qc_state* in, double t0, double t1,
                                   size_t steps, qc_state** out);
/* Exact evolution from t = 0 under a common resonant consistent field. */
QC_API qc_status qc_evolve_resonance(const qc_chain* chain, const qc_state* in, double t,
                                     qc_state** out);

/* name: m_VW, m_SM, eta_N or m_I. */
QC_API qc_status qc_measure(const qc_state* state, const char* name, double* out);

/* Catalog formula by identifier (e.g. "biqutrit_mSM"); Q may be NULL. */
QC_API qc_status qc_closedform_eval(const char* id, double J, double t, const double* Q,
                                    double* out);

QC_API qc_status qc_jacobi(double u, double k, double* sn, double* cn, double* dn, double* am);
QC_API qc_status qc_complete_K(double k, double* out);

QC_API size_t qc_scenario_count(void);
QC_API const char* qc_scenario_name(size_t index);
QC_API const char* qc_scenario_description(size_t index);
/* Runs a config file. engine and output override the file when non-NULL. */
QC_API qc_status qc_run_scenario_file(const char* path, const char* engine, const char* output,
                                      qc_log_fn log, void* user);
/* Runs the built-in crosscheck suite without writing files. */
QC_API qc_status qc_check(qc_log_fn log, void* user);

#ifdef __cplusplus
}
#endif

#endif /* QUDITCHAIN_H */
