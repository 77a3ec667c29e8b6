/* C interface to the vixsmile library. All functions return a vs_status; on
 * failure vs_last_error() describes the most recent error on the calling thread. */
#ifndef VIXSMILE_VIXSMILE_H
#define VIXSMILE_VIXSMILE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VIXSMILE_BUILDING)
#    define VS_API __declspec(dllexport)
#  else
#    define VS_API __declspec(dllimport)
#  endif
#else
#  define VS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vs_status {
    VS_OK = 0,
    VS_ERR_INVALID_ARGUMENT = 1,
    VS_ERR_DOMAIN = 2,
    VS_ERR_TOLERANCE = 3,
    VS_ERR_OUT_OF_BOUNDS = 4,
    VS_ERR_CONVERGENCE = 5,
    VS_ERR_NOT_POSITIVE_DEFINITE = 6,
    VS_ERR_DEGENERATE = 7,
    VS_ERR_INTERNAL = 8,
    VS_ERR_NULL_POINTER = 9
} vs_status;

VS_API const char* vs_status_string(vs_status status);
VS_API const char* vs_last_error(void);
VS_API const char* vs_version(void);

/* ---- parameters ---------------------------------------------------------- */

typedef struct vs_model_params {
    double v0;
    double hurst;
    double beta;
    double gamma;
    double nu;
    double eta;
} vs_model_params;

typedef struct vs_heston_params {
    double k;
    double theta;
    double nu;
    double v0;
} vs_heston_params;

typedef struct vs_sim_grid {
    double maturity;
    double delta;
    size_t n_inner;
    size_t n_paths;
    uint64_t seed;
    size_t chunk_size;
} vs_sim_grid;

typedef struct vs_quad_spec {
    double abs_tol;
    double rel_tol;
    size_t max_subdivisions;
    int singular_left;
    int singular_right;
    double singular_exponent;
} vs_quad_spec;

VS_API void vs_model_params_default(vs_model_params* p);
VS_API void vs_heston_params_default(vs_heston_params* p);
VS_API void vs_sim_grid_default(vs_sim_grid* g);
VS_API void vs_quad_spec_default(vs_quad_spec* q);

/* ---- special functions and quadrature ------------------------------------ */

typedef double (*vs_integrand)(double x, void* user);

/* On VS_ERR_TOLERANCE, *value and *abs_error still hold the best estimate. */
VS_API vs_status vs_integrate(vs_integrand f, void* user, double lo, double hi, const vs_quad_spec* spec,
                              double* value, double* abs_error);

VS_API vs_status vs_lower_incomplete_gamma(double a, double x, double* out);
VS_API vs_status vs_gauss_2f1(double a, double b, double c, double z, double* out);
VS_API vs_status vs_normal_cdf(double x, double* out);
VS_API vs_status vs_normal_pdf(double x, double* out);

/* ---- Black-Scholes ------------------------------------------------------- */

VS_API vs_status vs_bs_price(double log_forward, double log_strike, double maturity, double vol, double* out);
VS_API vs_status vs_bs_vega(double log_forward, double log_strike, double maturity, double vol, double* out);
VS_API vs_status vs_implied_vol(double price, double log_forward, double log_strike, double maturity, double* out);
VS_API vs_status vs_atm_implied_vol(double price, double forward, double maturity, double* out);

/* ---- model --------------------------------------------------------------- */

VS_API vs_status vs_kernel(const vs_model_params* p, double lag, double* out);
VS_API vs_status vs_kernel_variance(const vs_model_params* p, double t, double* out);
VS_API vs_status vs_kernel_covariance(const vs_model_params* p, double t1, double t2, double upto, double* out);
VS_API vs_status vs_forward_variance(const vs_model_params* p, double x_ts, double s, double maturity, double* out);

/* ---- asymptotics --------------------------------------------------------- */

typedef enum vs_formula {
    VS_VIX_ATMI_LIMIT = 0,
    VS_VIX_ATMI_APPROX = 1,
    VS_VIX_SKEW_LIMIT = 2,
    VS_VIX_SKEW_APPROX = 3,
    VS_SABR_VIX_SKEW = 4,
    VS_RV_ATMI_LIMIT = 5,
    VS_RV_ATMI_APPROX = 6,
    VS_RV_SKEW_LIMIT = 7
} vs_formula;

typedef struct vs_asymptote_result {
    vs_formula formula;
    double value;
    double quad_error_bound;
} vs_asymptote_result;

VS_API const char* vs_formula_name(vs_formula formula);

/* Evaluates a formula for the mixed model. `delta` is ignored by the RV formulas,
 * `maturity` by the limits except VS_RV_SKEW_LIMIT, where it is the I(H) probe
 * (0 selects the default 1e-4). */
VS_API vs_status vs_asymptote(vs_formula formula, const vs_model_params* p, double delta, double maturity,
                              vs_asymptote_result* out);

VS_API vs_status vs_gj(const vs_model_params* p, double delta, double* g, double* j);
VS_API vs_status vs_sabr_mixed_vix_skew(double gamma, double nu, double eta, double* out);
VS_API vs_status vs_cal_i(double hurst, double probe, double* out);
VS_API vs_status vs_heston_vix_skew_sign(const vs_heston_params* p, double delta, double* value, int* sign,
                                         int* feller_satisfied);

/* v = f(Y) with f'(Y0) = f1, f''(Y0) = f2 and v0 = VIX0^2. */
VS_API vs_status vs_vix_atmi_limit_general(double f1, double v0, double hurst, double beta, double delta,
                                           double* out);
VS_API vs_status vs_vix_skew_limit_general(double f1, double f2, double v0, double hurst, double beta, double delta,
                                           double* out);
VS_API vs_status vs_rv_atmi_limit_general(double f1, double v0, double hurst, double* out);
VS_API vs_status vs_rv_skew_limit_general(double f1, double f2, double v0, double hurst, double probe, double* out);

/* ---- simulation ---------------------------------------------------------- */

typedef enum vs_underlying { VS_VIX = 0, VS_RV = 1 } vs_underlying;

typedef struct vs_sampler vs_sampler;
typedef struct vs_batch vs_batch;

VS_API vs_status vs_sampler_create(vs_underlying kind, const vs_model_params* p, const vs_sim_grid* grid,
                                   vs_sampler** out);
VS_API void vs_sampler_free(vs_sampler* s);
VS_API vs_status vs_sampler_node_count(const vs_sampler* s, size_t* out);
VS_API vs_status vs_sampler_nodes(const vs_sampler* s, double* out, size_t capacity);
VS_API vs_status vs_sampler_node_variances(const vs_sampler* s, double* out, size_t capacity);
VS_API vs_status vs_sampler_covariance(const vs_sampler* s, size_t i, size_t j, double* out);
VS_API vs_status vs_sampler_jitter(const vs_sampler* s, double* out);
/* workers = 0 uses every available core; results do not depend on it. */
VS_API vs_status vs_sampler_sample(const vs_sampler* s, size_t n_paths, uint64_t seed, unsigned workers,
                                   vs_batch** out);
VS_API vs_status vs_sampler_node_moments(const vs_sampler* s, size_t n_paths, uint64_t seed, unsigned workers,
                                         double* means, double* std_errors, size_t capacity);

/* Wraps caller-supplied samples of an underlying with option maturity `maturity`. */
VS_API vs_status vs_batch_from_samples(const double* samples, size_t n, double maturity, vs_batch** out);
VS_API void vs_batch_free(vs_batch* b);
VS_API vs_status vs_batch_size(const vs_batch* b, size_t* out);
/* The pointer stays valid until vs_batch_free. */
VS_API vs_status vs_batch_samples(const vs_batch* b, const double** out);
VS_API vs_status vs_batch_maturity(const vs_batch* b, double* out);
VS_API vs_status vs_batch_mean(const vs_batch* b, double* mean, double* std_error);

/* ---- pricing ------------------------------------------------------------- */

typedef struct vs_price_estimate {
    double value;
    double std_error;
    size_t n_paths;
} vs_price_estimate;

typedef struct vs_atmi_result {
    double vol;
    double vol_std_error;
    double forward;
    vs_price_estimate price;
    int degenerate;
} vs_atmi_result;

typedef struct vs_smile_point {
    double log_strike_offset;
    double implied_vol;
    double vol_std_error;
    double strike;
    vs_price_estimate price;
    vs_status status;
} vs_smile_point;

typedef struct vs_skew_result {
    double skew;
    double std_error;
    double vol_minus;
    double vol_plus;
    double forward;
} vs_skew_result;

VS_API vs_status vs_price_call(const vs_batch* b, double strike, vs_price_estimate* out);
VS_API vs_status vs_atmi(const vs_batch* b, vs_atmi_result* out);
/* Per-point failures are reported in out[i].status; the call itself fails only on
 * invalid input or an arbitrage violation in the priced strip. */
VS_API vs_status vs_smile(const vs_batch* b, const double* offsets, size_t n, vs_smile_point* out);
VS_API vs_status vs_atmi_skew(const vs_batch* b, double h, vs_skew_result* out);

#ifdef __cplusplus
}
#endif

#endif
