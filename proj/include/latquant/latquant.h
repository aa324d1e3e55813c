/* latquant: lattice quantizer toolkit - C API.
 *
 * Row convention throughout: lattice points are u*B for integer row vectors u.
 * All functions return LQ_OK on success; on failure they return an error code
 * and leave a diagnostic in lq_last_error() (thread-local).
 */
#ifndef LATQUANT_H
#define LATQUANT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lq_status {
  LQ_OK = 0,
  LQ_ERR_INVALID_ARG = 1,
  LQ_ERR_UNKNOWN_LATTICE = 2,
  LQ_ERR_NO_GENERATOR = 3,
  LQ_ERR_NO_DECODER = 4,
  LQ_ERR_SINGULAR = 5,
  LQ_ERR_DIMENSION = 6,
  LQ_ERR_SEARCH_BUDGET = 7,
  LQ_ERR_PARSE = 8,
  LQ_ERR_IO = 9,
  LQ_ERR_INCONSISTENT = 10,
  LQ_ERR_NO_DATA = 11,
  LQ_ERR_INTERNAL = 12
} lq_status;

const char* lq_status_name(lq_status s);
const char* lq_last_error(void);

/* ---- lattices (opaque) ------------------------------------------------- */

typedef struct lq_lattice lq_lattice;

/* Catalog names: Z, Z<n>, A<n>, A<n>*, D<n>, D<n>*, D<n>+ (even n), E6, E7,
 * E8 (and duals), K12, L16, L24; AE9 and A11^3 are golden-constant entries
 * without a generator. */
lq_status lq_lattice_from_catalog(const char* name, lq_lattice** out);
/* Text format: first line n, then n rows of n entries ("p/q" or decimal). */
lq_status lq_lattice_from_file(const char* path, lq_lattice** out);
lq_status lq_lattice_from_rows(int n, const double* rows_rowmajor, lq_lattice** out);
/* Product spec grammar: NAME('*'NAME)*, optional '@scale' per name; a '*'
 * ending a segment is a dual suffix ("A3**Z" = A3* x Z). Scales default to
 * the optimal relative scale. */
lq_status lq_lattice_from_product(const char* spec, lq_lattice** out);
/* Lamination [[B1,0],[h,a]]; h has dim(base) entries. */
lq_status lq_lattice_laminate(const lq_lattice* base, const double* h, double a, lq_lattice** out);
void lq_lattice_free(lq_lattice* lat);

int lq_lattice_dim(const lq_lattice* lat);
const char* lq_lattice_name(const lq_lattice* lat);
const char* lq_lattice_decoder(const lq_lattice* lat); /* strategy tag */
int lq_lattice_has_generator(const lq_lattice* lat);
int lq_lattice_has_decoder(const lq_lattice* lat);
lq_status lq_lattice_volume(const lq_lattice* lat, double* out);
lq_status lq_lattice_rows(const lq_lattice* lat, double* rows_rowmajor /* n*n */);
/* LQ_ERR_NO_DATA when the lattice has no tabulated constant. */
lq_status lq_lattice_golden_nsm(const lq_lattice* lat, double* nsm, int* digits);
lq_status lq_lattice_write_file(const lq_lattice* lat, const char* path);

unsigned lq_catalog_count(void);
const char* lq_catalog_name(unsigned index);

/* ---- decoding ----------------------------------------------------------- */

/* u, point, error: n entries each (any may be NULL). */
lq_status lq_decode(const lq_lattice* lat, const double* x, long long* u, double* point,
                    double* error, double* d2);

/* Four-step suboptimal quantizer for [[B1,0],[H,B2]]; H is n2 x n1 row-major,
 * x has n1+n2 entries. */
lq_status lq_decode_suboptimal(const lq_lattice* l1, const lq_lattice* l2, const double* h,
                               const double* x, long long* u, double* point, double* error,
                               double* d2);

/* ---- Monte Carlo estimation --------------------------------------------- */

typedef struct lq_estimate_opts {
  unsigned long long samples;
  unsigned long long seed;
  int threads; /* 0 = auto; the estimate does not depend on it */
} lq_estimate_opts;

typedef struct lq_moment_report {
  int n;
  unsigned long long samples;
  unsigned long long seed;
  double volume;
  double e;    /* mean square error, = trace(R) */
  double g;    /* NSM */
  double se_e;
  double se_g;
  double rho;  /* trace/n */
  double anisotropy;
  double anisotropy_se;
  double eigen_spread;
  double eigen_spread_se;
} lq_moment_report;

/* r_out: optional n*n row-major covariance; r_se_out: per-entry std errors. */
lq_status lq_estimate(const lq_lattice* lat, const lq_estimate_opts* opts, lq_moment_report* out,
                      double* r_out, double* r_se_out);

/* ---- closed-form composition --------------------------------------------- */

lq_status lq_g_of_scale(int n1, double v1, double g1, int n2, double v2, double g2, double a,
                        double* out);
lq_status lq_optimal_scale(int n1, double v1, double g1, int n2, double v2, double g2, double* out);
lq_status lq_optimal_product_nsm(int nparts, const int* dims, const double* gs, double* out);
lq_status lq_lamination_bound(double g1, int n, double* out);

typedef struct lq_product_part {
  char name[24];
  int dim;
  double volume;
  double nsm;
  double scale;
} lq_product_part;

/* Parses a product spec and returns the optimal plan. nparts in: capacity,
 * out: part count. */
lq_status lq_plan_product(const char* spec, lq_product_part* parts, int* nparts,
                          int* total_dim, double* predicted_nsm, double* e_per_dim);

/* ---- bounds and the best-quantizer table --------------------------------- */

lq_status lq_zador_upper(int n, double* out);
lq_status lq_cs_lower(int n, double* out);

typedef struct lq_table_row {
  int n;
  double reported_nsm;
  char reported_name[24];
  int reported_digits;
  double cs_lower;
  double zador_upper;
  double product_nsm; /* 0 for n = 1 */
  char product_name[64];
  int beats_reported; /* "<G" flag */
  int beats_zador;    /* "<U" flag */
} lq_table_row;

lq_status lq_table_row_get(int n, lq_table_row* out);

typedef struct lq_golden_entry {
  char name[64];
  int dim;
  double nsm;
  int digits;
  char column[16];
} lq_golden_entry;

unsigned lq_golden_count(void);
lq_status lq_golden_entry_get(unsigned index, lq_golden_entry* out);

/* ---- theorem experiments -------------------------------------------------- */

typedef struct lq_experiment_report {
  double parameter;
  double baseline_g;
  double baseline_se;
  double perturbed_g;
  double perturbed_se;
  int verdict; /* 1 improved, 0 not-improved, -1 inconclusive */
  int decode_agree;
  double max_d2_mismatch;
  double e_additivity_sigma;
  double max_offblock_sigma;
  double max_edim_sigma;
} lq_experiment_report;

lq_status lq_whitening_experiment(const lq_lattice* lat, double beta, const lq_estimate_opts* opts,
                                  lq_experiment_report* out);
/* h_direction: n2 x n1 row-major. */
lq_status lq_saddle_experiment(const char* name1, const char* name2, const double* h_direction,
                               double epsilon, const lq_estimate_opts* opts,
                               lq_experiment_report* out);
lq_status lq_product_check(const char* spec, const lq_estimate_opts* opts,
                           unsigned long long decode_trials, lq_experiment_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LATQUANT_H */
