#ifndef SOFTEDGE_H
#define SOFTEDGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SE_API __declspec(dllexport)
#else
#define SE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SE_OK = 0,
    SE_ERR_INVALID_ARGUMENT = 1,
    SE_ERR_OUT_OF_RANGE = 2,
    SE_ERR_NOT_CONVERGED = 3,
    SE_ERR_INFEASIBLE = 4,
    SE_ERR_DEGREE_BOUND = 5,
    SE_ERR_NON_UNIQUE = 6,
    SE_ERR_IO = 7,
    SE_ERR_VALIDATION = 8,
    SE_ERR_INTERNAL = 9
} se_status;

/* Message of the last failed call on this thread ("" after success). */
SE_API const char* se_last_error(void);
SE_API const char* se_status_name(se_status st);
SE_API const char* se_version(void);
/* Release strings returned through char** out-parameters. */
SE_API void se_string_free(char* s);

enum { SE_GAUSSIAN = 0, SE_LAGUERRE = 1 };

typedef struct {
    int family; /* SE_GAUSSIAN or SE_LAGUERRE */
    int beta;   /* 1, 2 or 4 */
    int n;
    double p; /* Laguerre only, p > n - 1 */
} se_ensemble;

typedef struct {
    double mu, sigma, h, tau, n_prime;
} se_scaling;

/* ---- index shifts and scaling ---- */
SE_API se_status se_n_prime(int beta, double n, double* out);
SE_API se_status se_scaling_at(int family, double nu, double p_nu, se_scaling* out);
/* frame at n' (p shifted alike); used by expansions */
SE_API se_status se_expansion_frame(const se_ensemble* spec, se_scaling* out);
/* frame at the plain index n; used for beta = 2 finite-n values */
SE_API se_status se_plain_frame(const se_ensemble* spec, se_scaling* out);

/* ---- special functions ---- */
SE_API se_status se_airy(double x, double* ai, double* ai_prime);
/* orthonormal Hermite (family SE_GAUSSIAN, weight e^{-x^2}) or Laguerre
   (weight x^alpha e^{-x}) wave function */
SE_API se_status se_wave(int family, double alpha, int j, double x, double* out);

/* ---- limit laws ---- */
/* Linear functional sum_r weights[r] d^r/dxi^r at xi_star. */
typedef struct {
    double xi_star;
    int nterms;
    const int* orders;
    const double* weights;
} se_induced;

SE_API se_status se_limit_F(int beta, double s, double xi, double* out);
/* sign = +1: det(I - sqrt(xi) V_Ai), sign = -1: det(I + sqrt(xi) V_Ai) */
SE_API se_status se_F_pm(int sign, double s, double xi, double* out);
/* coeffs[0..order]: Taylor coefficients in xi about xi_star */
SE_API se_status se_limit_jet(int beta, double s, double xi_star, int order, double* coeffs);
/* CDF of the (k+1)-th largest level in the limit */
SE_API se_status se_kth_largest_limit_cdf(int beta, int k, double s, double* out);
SE_API se_status se_induced_limit(int beta, double s, const se_induced* op, double* out);
/* out[0..kmax]: f(s0), f'(s0), ... for f = F_beta(.; xi) */
SE_API se_status se_limit_s_derivatives(int beta, double xi, double s0, int kmax, double* out);

/* ---- Painleve II ---- */
typedef struct se_pii se_pii;
enum { SE_TARGET_F2 = 0, SE_TARGET_FPLUS = 1, SE_TARGET_FMINUS = 2 };

SE_API se_status se_pii_solve(double xi, double L_minus, double L_plus, se_pii** out);
SE_API void se_pii_free(se_pii* sol);
SE_API se_status se_pii_q(const se_pii* sol, double s, double* q, double* q_prime);
SE_API se_status se_pii_F(const se_pii* sol, int target, double s, double* out);
SE_API se_status se_pii_info(const se_pii* sol, double* residual, int* iterations, double* L_minus, double* L_plus);
/* int q over the real line and artanh(sqrt xi); 0 < xi < 1 */
SE_API se_status se_total_integral(double xi, double* value, double* reference, double* tail_error);

/* ---- exact finite n (beta = 2) ---- */
SE_API se_status se_E2n(const se_ensemble* spec, double x, double xi, double* out);
SE_API se_status se_E2n_jet(const se_ensemble* spec, double x, double xi_star, int order, double* coeffs);
/* out[0..n]: P(exactly k levels above x) */
SE_API se_status se_gap_probabilities(const se_ensemble* spec, double x, double* out);
SE_API se_status se_kth_largest_finite_cdf(const se_ensemble* spec, int k, double x, double* out);

/* ---- coefficient tables ---- */
typedef struct se_table se_table;

SE_API se_status se_table_default(se_table** out);
SE_API se_status se_table_load(const char* path, se_table** out);
SE_API se_status se_table_parse(const char* text, se_table** out);
SE_API se_status se_table_save(const se_table* t, const char* path);
SE_API se_status se_table_format(const se_table* t, char** text);
SE_API void se_table_free(se_table* t);
/* highest j with a complete row for beta (0 if none) */
SE_API se_status se_table_max_order(const se_table* t, int beta, int* out);
/* any out-pointer may be NULL */
SE_API se_status se_table_entry(const se_table* t, int beta, int j, int k, char** poly, char** provenance,
                                char** certificate);
SE_API se_status se_table_eval(const se_table* t, int beta, int j, int k, double s, double tau, double* out);

/* ---- expansions ---- */
/* orders (may be NULL) receives m + 1 values: F, h G_1, ..., h^m G_m */
SE_API se_status se_expand(const se_table* t, const se_ensemble* spec, double s, const se_induced* op, int m,
                           double* value, double* orders);
/* values/density (density may be NULL): (m + 1) x count, row m' holds the
   partial sum through order m' */
SE_API se_status se_expand_grid(const se_table* t, const se_ensemble* spec, const se_induced* op, int m,
                                const double* s, int count, double* values, double* density);

typedef struct {
    int ladder_first;  /* 0: default 100 */
    int ladder_steps;  /* 0: default 13 */
    int include_laguerre; /* nonzero: ratios 1, 4, 9, 16, 25 */
    int workers;       /* 0: default */
    int verbose;       /* progress lines on stderr */
} se_derive_options;

/* Extraction + reconstruction + transfer.  report (may be NULL) is JSON. */
SE_API se_status se_derive(const se_derive_options* opt, se_table** out, char** report);

/* ---- Monte Carlo ---- */
typedef struct se_batch se_batch;

SE_API se_status se_sample(const se_ensemble* spec, int count, uint64_t seed, int workers, se_batch** out);
SE_API void se_batch_free(se_batch* b);
/* levels: count x n, ascending per draw; valid until se_batch_free */
SE_API se_status se_batch_levels(const se_batch* b, const double** levels, int* count, int* n);
SE_API se_status se_batch_write_csv(const se_batch* b, const char* path);
SE_API se_status se_batch_write_binary(const se_batch* b, const char* path);
SE_API se_status se_batch_read_binary(const char* path, se_batch** out);

SE_API se_status se_ks_two_sample(const double* a, size_t na, const double* b, size_t nb, double* statistic,
                                  double* p_value);

/* Reports are JSON documents. */
SE_API se_status se_decimation_check(int n, int count, uint64_t seed, int workers, char** report);
SE_API se_status se_thinning_check(const se_ensemble* spec, double xi, const double* x, int nx, int count,
                                   uint64_t seed, int workers, const se_table* t, char** report);
/* rank: k-th largest level, 1 = largest */
SE_API se_status se_figure1(const se_ensemble* spec, int rank, int m_max, int count, uint64_t seed, int workers,
                            const se_table* t, char** report);

/* ---- acceptance criteria ---- */
SE_API int se_criteria_count(void);
/* seed 0 selects the default; rederive = 0 checks shipped certificates for
   criterion 6 instead of re-running the extraction */
SE_API se_status se_validate_criterion(int id, uint64_t seed, int workers, int rederive, const se_table* t,
                                       int* pass, char** report);

#ifdef __cplusplus
}
#endif

#endif
