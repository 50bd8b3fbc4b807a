/* C API for the qsquare library: squaring parametrization of quantum state
 * sets. Opaque handles, integer error codes; qsq_last_error() returns a
 * thread-local message for the most recent failure. */
#ifndef QSQUARE_H
#define QSQUARE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum qsq_status {
  QSQ_OK = 0,
  QSQ_ERR_INVALID_ARGUMENT = 1,
  QSQ_ERR_INVALID_DIMENSION = 2,
  QSQ_ERR_RESOURCE_LIMIT = 3,
  QSQ_ERR_SHAPE_MISMATCH = 4,
  QSQ_ERR_INCONSISTENT_BASIS = 5,
  QSQ_ERR_NOT_A_STATE = 6,
  QSQ_ERR_DEGENERATE_TAU = 7,
  QSQ_ERR_SUBSPACE_NOT_CLOSED = 8,
  QSQ_ERR_DOMAIN = 9,
  QSQ_ERR_PARSE = 10,
  QSQ_ERR_UNSUPPORTED_PATTERN = 11,
  QSQ_ERR_IO = 12,
  QSQ_ERR_INTERNAL = 99
};

enum qsq_point_class {
  QSQ_POINT_INTERIOR = 0,
  QSQ_POINT_BOUNDARY = 1,
  QSQ_POINT_CRITICAL_INTERIOR = 2
};

const char* qsq_last_error(void);
const char* qsq_version(void);

/* ---- operator bases ------------------------------------------------ */

typedef struct qsq_basis qsq_basis;

/* Generalized Gell-Mann generators for dimension D (2..64). */
int qsq_basis_gell_mann(int dim, qsq_basis** out);
/* Pauli tensor-product generators for nqubits spins (1..6). */
int qsq_basis_pauli(int nqubits, qsq_basis** out);
void qsq_basis_free(qsq_basis* b);

int qsq_basis_dim(const qsq_basis* b);            /* Hilbert space dimension */
int qsq_basis_count(const qsq_basis* b);          /* number of generators    */
const char* qsq_basis_label(const qsq_basis* b, int index);
/* Generator as row-major interleaved [re, im] pairs, length 2*dim*dim. */
int qsq_basis_generator(const qsq_basis* b, int index, double* out);
/* JSON with dim, labels, generators and (optionally) sparse f/d tensors. */
int qsq_basis_json(qsq_basis* b, int with_structure, char** out);

/* ---- squaring map (unconstrained) ----------------------------------- */

/* rho = tau^2/tr tau^2 with tau = (1 + b.g)/dim; rho as interleaved pairs. */
int qsq_aux_to_density(const qsq_basis* b, const double* bvec, double* rho_out);
/* Bloch image of the auxiliary vector via the structure-constant formula. */
int qsq_aux_to_bloch(qsq_basis* b, const double* bvec, double* a_out);
/* Principal square-root preimage of a density matrix. */
int qsq_density_to_aux(const qsq_basis* b, const double* rho, double* b_out);
/* Analytic Jacobian of the b -> a map, row-major, count*count entries. */
int qsq_jacobian(qsq_basis* b, const double* bvec, double* jac_out);
/* Determinant of the analytic Jacobian of the b -> a map. */
int qsq_boundary_residual(qsq_basis* b, const double* bvec, double* det_out);
int qsq_classify_point(qsq_basis* b, const double* bvec, double tol, int* cls_out,
                       double* min_eig_out, double* det_out);

/* Eigenvalues (ascending), purity, rank, min eigenvalue of a density matrix
 * given as interleaved pairs. Fails if not Hermitian/unit-trace within tol. */
int qsq_spectral_report(const double* rho, int dim, double tol, double* eigs_out,
                        double* purity_out, int* rank_out, double* min_eig_out);

typedef struct {
  int max_iters;      /* <=0: default */
  double grad_tol;    /* <=0: default */
  uint64_t seed;
} qsq_opt_config;

/* Gradient descent on tr(rho(b) H); h is interleaved pairs, dim*dim entries. */
int qsq_minimize_expectation(qsq_basis* b, const double* h,
                             const qsq_opt_config* cfg, double* b_out,
                             double* energy_out, int* converged_out);

/* ---- constrained sections ------------------------------------------ */

typedef struct qsq_section qsq_section;

/* name: "werner2" | "ti3" | "tinv3" | "werner2".."werner5" qubit algebras */
int qsq_section_create(const char* name, qsq_section** out);
void qsq_section_free(qsq_section* s);
int qsq_section_coord_dim(const qsq_section* s);
int qsq_section_nqubits(const qsq_section* s);
const char* qsq_section_op_name(const qsq_section* s, int index);

/* Section squaring map (prefactor-free tau); also reports the minimum
 * eigenvalue of the mapped state. Outputs may be NULL if not wanted. */
int qsq_section_map(const qsq_section* s, const double* bvec, double* a_out,
                    double* min_eig_out);
/* Finite-difference Jacobian determinant of the section map. */
int qsq_section_det(const qsq_section* s, const double* bvec, double* det_out);

typedef struct {
  const double* lo;     /* per-axis lower bounds, coord_dim entries  */
  const double* hi;
  const int* res;       /* per-axis resolution, each >= 2            */
  double det_tol;       /* <=0: 1e-8 */
  double eig_tol;       /* <=0: 1e-8 */
  int refine;           /* nonzero: bisection-refine det sign changes */
  int threads;          /* <=0: hardware concurrency                  */
} qsq_scan_spec;

typedef void (*qsq_scan_callback)(void* user, const double* bvec,
                                  const double* avec, double det, double min_eig,
                                  int cls, int refined);

int qsq_boundary_scan(const qsq_section* s, const qsq_scan_spec* spec,
                      qsq_scan_callback cb, void* user);

typedef struct {
  int seeds;            /* <=0: 1000 */
  uint64_t rng_seed;
} qsq_solve_config;

/* Projector solutions as JSON (coords, c, r, class, decomposition, family). */
int qsq_solve_extremes(const qsq_section* s, const qsq_solve_config* cfg,
                       char** json_out);
/* Closed-form family member of the T-invariant section; family is "Pi3" or
 * "Pi4", branch +1/-1; coords go to a_out (3 entries). */
int qsq_family_trace(const qsq_section* s, const char* family, double a12,
                     int branch, double* a_out, double* c_out, int* r_out);

/* ---- sigma-product symbolic algebra --------------------------------- */

typedef struct qsq_expr qsq_expr;

/* Text format: terms like "(1 2) (3 4 5)" with complex coefficients. */
int qsq_expr_parse(const char* text, qsq_expr** out);
void qsq_expr_free(qsq_expr* e);
int qsq_expr_multiply(const qsq_expr* x, const qsq_expr* y, qsq_expr** out);
int qsq_expr_str(const qsq_expr* e, char** out);
/* Max entrywise difference of dense realizations on nqubits spins. */
int qsq_expr_verify(const qsq_expr* lhs, const qsq_expr* rhs, int nqubits,
                    double* max_err_out);

/* The nine convolution identities for scalar/triple sigma products, checked
 * densely; writes a human-readable report and the max error over all. */
int qsq_verify_identities(char** report_out, double* max_err_out);

void qsq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QSQUARE_H */
