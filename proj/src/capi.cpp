#include "vixsmile/vixsmile.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "vixsmile/asymptotics.hpp"
#include "vixsmile/bs.hpp"
#include "vixsmile/error.hpp"
#include "vixsmile/mc.hpp"
#include "vixsmile/model.hpp"
#include "vixsmile/pricing.hpp"
#include "vixsmile/quadrature.hpp"
#include "vixsmile/specfun.hpp"

using namespace vixsmile;

struct vs_sampler {
    mc::Sampler sampler;
};

struct vs_batch {
    mc::PathBatch batch;
};

namespace {

thread_local std::string g_last_error;

vs_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return VS_ERR_INVALID_ARGUMENT;
        case ErrorCode::Domain: return VS_ERR_DOMAIN;
        case ErrorCode::Tolerance: return VS_ERR_TOLERANCE;
        case ErrorCode::OutOfBounds: return VS_ERR_OUT_OF_BOUNDS;
        case ErrorCode::Convergence: return VS_ERR_CONVERGENCE;
        case ErrorCode::NotPositiveDefinite: return VS_ERR_NOT_POSITIVE_DEFINITE;
        case ErrorCode::Degenerate: return VS_ERR_DEGENERATE;
        case ErrorCode::Internal: return VS_ERR_INTERNAL;
    }
    return VS_ERR_INTERNAL;
}

vs_status fail(vs_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <class F>
vs_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return VS_OK;
    } catch (const Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(VS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(VS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(VS_ERR_INTERNAL, "unknown error");
    }
}

#define VS_REQUIRE_PTR(ptr)                                               \
    do {                                                                  \
        if ((ptr) == nullptr) return fail(VS_ERR_NULL_POINTER, #ptr " is null"); \
    } while (0)

model::ModelParams to_model(const vs_model_params& p) {
    model::ModelParams m;
    m.v0 = p.v0;
    m.hurst = p.hurst;
    m.beta = p.beta;
    m.gamma = p.gamma;
    m.nu = p.nu;
    m.eta = p.eta;
    return m;
}

model::HestonParams to_heston(const vs_heston_params& p) {
    model::HestonParams h;
    h.k = p.k;
    h.theta = p.theta;
    h.nu = p.nu;
    h.v0 = p.v0;
    return h;
}

mc::SimGrid to_grid(const vs_sim_grid& g) {
    mc::SimGrid s;
    s.maturity = g.maturity;
    s.delta = g.delta;
    s.n_inner = g.n_inner;
    s.n_paths = g.n_paths;
    s.seed = g.seed;
    s.chunk_size = g.chunk_size;
    return s;
}

QuadSpec to_quad(const vs_quad_spec& q) {
    QuadSpec s;
    s.abs_tol = q.abs_tol;
    s.rel_tol = q.rel_tol;
    s.max_subdivisions = q.max_subdivisions;
    s.singular_left = q.singular_left != 0;
    s.singular_right = q.singular_right != 0;
    s.singular_exponent = q.singular_exponent;
    return s;
}

vs_price_estimate to_c(const pricing::PriceEstimate& p) { return vs_price_estimate{p.value, p.std_error, p.n_paths}; }

bs::BsQuote quote(double x, double k, double t, double vol) {
    bs::BsQuote q;
    q.log_forward = x;
    q.log_strike = k;
    q.maturity = t;
    q.vol = vol;
    return q;
}

}  // namespace

extern "C" {

const char* vs_status_string(vs_status status) {
    switch (status) {
        case VS_OK: return "ok";
        case VS_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case VS_ERR_DOMAIN: return "domain";
        case VS_ERR_TOLERANCE: return "tolerance";
        case VS_ERR_OUT_OF_BOUNDS: return "out_of_bounds";
        case VS_ERR_CONVERGENCE: return "convergence";
        case VS_ERR_NOT_POSITIVE_DEFINITE: return "not_positive_definite";
        case VS_ERR_DEGENERATE: return "degenerate";
        case VS_ERR_INTERNAL: return "internal";
        case VS_ERR_NULL_POINTER: return "null_pointer";
    }
    return "unknown";
}

const char* vs_last_error(void) { return g_last_error.c_str(); }

const char* vs_version(void) { return "0.1.0"; }

void vs_model_params_default(vs_model_params* p) {
    if (p == nullptr) return;
    const model::ModelParams d;
    *p = vs_model_params{d.v0, d.hurst, d.beta, d.gamma, d.nu, d.eta};
}

void vs_heston_params_default(vs_heston_params* p) {
    if (p == nullptr) return;
    const model::HestonParams d;
    *p = vs_heston_params{d.k, d.theta, d.nu, d.v0};
}

void vs_sim_grid_default(vs_sim_grid* g) {
    if (g == nullptr) return;
    const mc::SimGrid d;
    *g = vs_sim_grid{d.maturity, d.delta, d.n_inner, d.n_paths, d.seed, d.chunk_size};
}

void vs_quad_spec_default(vs_quad_spec* q) {
    if (q == nullptr) return;
    const QuadSpec d;
    *q = vs_quad_spec{d.abs_tol, d.rel_tol, d.max_subdivisions, 0, 0, 0.0};
}

vs_status vs_integrate(vs_integrand f, void* user, double lo, double hi, const vs_quad_spec* spec, double* value,
                       double* abs_error) {
    VS_REQUIRE_PTR(f);
    VS_REQUIRE_PTR(value);
    QuadSpec s;
    if (spec != nullptr) s = to_quad(*spec);
    return guarded([&] {
        try {
            const QuadResult r = integrate_detailed([f, user](double x) { return f(x, user); }, lo, hi, s);
            *value = r.value;
            if (abs_error != nullptr) *abs_error = r.abs_error;
        } catch (const ToleranceError& e) {
            *value = e.best_estimate();
            if (abs_error != nullptr) *abs_error = e.error_bound();
            throw;
        }
    });
}

vs_status vs_lower_incomplete_gamma(double a, double x, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = specfun::lower_incomplete_gamma(a, x); });
}

vs_status vs_gauss_2f1(double a, double b, double c, double z, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = specfun::gauss_2f1(a, b, c, z); });
}

vs_status vs_normal_cdf(double x, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = specfun::normal_cdf(x); });
}

vs_status vs_normal_pdf(double x, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = specfun::normal_pdf(x); });
}

vs_status vs_bs_price(double log_forward, double log_strike, double maturity, double vol, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = bs::bs_price(quote(log_forward, log_strike, maturity, vol)); });
}

vs_status vs_bs_vega(double log_forward, double log_strike, double maturity, double vol, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = bs::bs_vega(quote(log_forward, log_strike, maturity, vol)); });
}

vs_status vs_implied_vol(double price, double log_forward, double log_strike, double maturity, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = bs::implied_vol(price, log_forward, log_strike, maturity); });
}

vs_status vs_atm_implied_vol(double price, double forward, double maturity, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = bs::atm_implied_vol(price, forward, maturity); });
}

vs_status vs_kernel(const vs_model_params* p, double lag, double* out) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = model::kernel(to_model(*p), lag); });
}

vs_status vs_kernel_variance(const vs_model_params* p, double t, double* out) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = model::kernel_variance(to_model(*p), t); });
}

vs_status vs_kernel_covariance(const vs_model_params* p, double t1, double t2, double upto, double* out) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = model::kernel_covariance(to_model(*p), t1, t2, upto); });
}

vs_status vs_forward_variance(const vs_model_params* p, double x_ts, double s, double maturity, double* out) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = model::forward_variance(to_model(*p), x_ts, s, maturity); });
}

const char* vs_formula_name(vs_formula formula) {
    switch (formula) {
        case VS_VIX_ATMI_LIMIT: return "VIX_ATMI_LIMIT";
        case VS_VIX_ATMI_APPROX: return "VIX_ATMI_APPROX";
        case VS_VIX_SKEW_LIMIT: return "VIX_SKEW_LIMIT";
        case VS_VIX_SKEW_APPROX: return "VIX_SKEW_APPROX";
        case VS_SABR_VIX_SKEW: return "SABR_VIX_SKEW";
        case VS_RV_ATMI_LIMIT: return "RV_ATMI_LIMIT";
        case VS_RV_ATMI_APPROX: return "RV_ATMI_APPROX";
        case VS_RV_SKEW_LIMIT: return "RV_SKEW_LIMIT";
    }
    return "UNKNOWN";
}

vs_status vs_asymptote(vs_formula formula, const vs_model_params* p, double delta, double maturity,
                       vs_asymptote_result* out) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(out);
    const model::ModelParams m = to_model(*p);
    return guarded([&] {
        asymptotics::AsymptoteResult r;
        switch (formula) {
            case VS_VIX_ATMI_LIMIT: r = asymptotics::vix_atmi_limit(m, delta); break;
            case VS_VIX_ATMI_APPROX: r = asymptotics::vix_atmi_approx(m, delta, maturity); break;
            case VS_VIX_SKEW_LIMIT: r = asymptotics::vix_skew_limit(m, delta); break;
            case VS_VIX_SKEW_APPROX: r = asymptotics::vix_skew_approx(m, delta, maturity); break;
            case VS_SABR_VIX_SKEW:
                m.validate();
                r.formula = asymptotics::FormulaId::SabrVixSkew;
                r.value = asymptotics::sabr_mixed_vix_skew(m.gamma, m.nu, m.eta);
                break;
            case VS_RV_ATMI_LIMIT: r = asymptotics::rv_atmi_limit(m); break;
            case VS_RV_ATMI_APPROX: r = asymptotics::rv_atmi_approx(m, maturity); break;
            case VS_RV_SKEW_LIMIT: r = asymptotics::rv_skew_limit(m, maturity == 0.0 ? 1e-4 : maturity); break;
            default: throw Error(ErrorCode::InvalidArgument, "vs_asymptote: unknown formula");
        }
        out->formula = formula;
        out->value = r.value;
        out->quad_error_bound = r.quad_error_bound;
    });
}

vs_status vs_gj(const vs_model_params* p, double delta, double* g, double* j) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(g);
    VS_REQUIRE_PTR(j);
    return guarded([&] {
        const asymptotics::GJValues v = asymptotics::gj(to_model(*p), delta);
        *g = v.G;
        *j = v.J;
    });
}

vs_status vs_sabr_mixed_vix_skew(double gamma, double nu, double eta, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = asymptotics::sabr_mixed_vix_skew(gamma, nu, eta); });
}

vs_status vs_cal_i(double hurst, double probe, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = asymptotics::calI(hurst, probe); });
}

vs_status vs_heston_vix_skew_sign(const vs_heston_params* p, double delta, double* value, int* sign,
                                  int* feller_satisfied) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(value);
    return guarded([&] {
        const asymptotics::HestonSkewSign r = asymptotics::heston_vix_skew_sign(to_heston(*p), delta);
        *value = r.value;
        if (sign != nullptr) *sign = r.sign;
        if (feller_satisfied != nullptr) *feller_satisfied = r.feller_satisfied ? 1 : 0;
    });
}

vs_status vs_vix_atmi_limit_general(double f1, double v0, double hurst, double beta, double delta, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = asymptotics::vix_atmi_limit_general(f1, v0, hurst, beta, delta); });
}

vs_status vs_vix_skew_limit_general(double f1, double f2, double v0, double hurst, double beta, double delta,
                                    double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = asymptotics::vix_skew_limit_general(f1, f2, v0, hurst, beta, delta); });
}

vs_status vs_rv_atmi_limit_general(double f1, double v0, double hurst, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = asymptotics::rv_atmi_limit_general(f1, v0, hurst); });
}

vs_status vs_rv_skew_limit_general(double f1, double f2, double v0, double hurst, double probe, double* out) {
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = asymptotics::rv_skew_limit_general(f1, f2, v0, hurst, probe == 0.0 ? 1e-4 : probe); });
}

vs_status vs_sampler_create(vs_underlying kind, const vs_model_params* p, const vs_sim_grid* grid, vs_sampler** out) {
    VS_REQUIRE_PTR(p);
    VS_REQUIRE_PTR(grid);
    VS_REQUIRE_PTR(out);
    *out = nullptr;
    return guarded([&] {
        const model::ModelParams m = to_model(*p);
        const mc::SimGrid g = to_grid(*grid);
        switch (kind) {
            case VS_VIX: *out = new vs_sampler{mc::Sampler::build_vix(m, g)}; break;
            case VS_RV: *out = new vs_sampler{mc::Sampler::build_rv(m, g)}; break;
            default: throw Error(ErrorCode::InvalidArgument, "vs_sampler_create: unknown underlying");
        }
    });
}

void vs_sampler_free(vs_sampler* s) { delete s; }

vs_status vs_sampler_node_count(const vs_sampler* s, size_t* out) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(out);
    *out = s->sampler.nodes().size();
    return VS_OK;
}

vs_status vs_sampler_nodes(const vs_sampler* s, double* out, size_t capacity) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(out);
    const auto nodes = s->sampler.nodes();
    if (capacity < nodes.size()) return fail(VS_ERR_OUT_OF_BOUNDS, "vs_sampler_nodes: buffer too small");
    for (size_t i = 0; i < nodes.size(); ++i) out[i] = nodes[i];
    return VS_OK;
}

vs_status vs_sampler_node_variances(const vs_sampler* s, double* out, size_t capacity) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(out);
    const auto vars = s->sampler.node_variances();
    if (capacity < vars.size()) return fail(VS_ERR_OUT_OF_BOUNDS, "vs_sampler_node_variances: buffer too small");
    for (size_t i = 0; i < vars.size(); ++i) out[i] = vars[i];
    return VS_OK;
}

vs_status vs_sampler_covariance(const vs_sampler* s, size_t i, size_t j, double* out) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = s->sampler.covariance(i, j); });
}

vs_status vs_sampler_jitter(const vs_sampler* s, double* out) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(out);
    *out = s->sampler.jitter();
    return VS_OK;
}

vs_status vs_sampler_sample(const vs_sampler* s, size_t n_paths, uint64_t seed, unsigned workers, vs_batch** out) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(out);
    *out = nullptr;
    return guarded([&] { *out = new vs_batch{s->sampler.sample(n_paths, seed, workers)}; });
}

vs_status vs_sampler_node_moments(const vs_sampler* s, size_t n_paths, uint64_t seed, unsigned workers,
                                  double* means, double* std_errors, size_t capacity) {
    VS_REQUIRE_PTR(s);
    VS_REQUIRE_PTR(means);
    VS_REQUIRE_PTR(std_errors);
    if (capacity < s->sampler.nodes().size()) {
        return fail(VS_ERR_OUT_OF_BOUNDS, "vs_sampler_node_moments: buffer too small");
    }
    return guarded([&] {
        const auto moments = s->sampler.node_moments(n_paths, seed, workers);
        for (size_t i = 0; i < moments.size(); ++i) {
            means[i] = moments[i].mean;
            std_errors[i] = moments[i].std_error;
        }
    });
}

vs_status vs_batch_from_samples(const double* samples, size_t n, double maturity, vs_batch** out) {
    VS_REQUIRE_PTR(samples);
    VS_REQUIRE_PTR(out);
    *out = nullptr;
    return guarded([&] {
        require(n >= 1, ErrorCode::InvalidArgument, "vs_batch_from_samples: empty sample");
        require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain,
                "vs_batch_from_samples: maturity must be positive");
        mc::PathBatch b;
        b.samples.assign(samples, samples + n);
        for (double v : b.samples) {
            require(std::isfinite(v) && v >= 0.0, ErrorCode::Domain, "vs_batch_from_samples: samples must be finite and non-negative");
        }
        b.grid.maturity = maturity;
        b.grid.n_paths = n;
        *out = new vs_batch{std::move(b)};
    });
}

void vs_batch_free(vs_batch* b) { delete b; }

vs_status vs_batch_size(const vs_batch* b, size_t* out) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(out);
    *out = b->batch.samples.size();
    return VS_OK;
}

vs_status vs_batch_samples(const vs_batch* b, const double** out) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(out);
    *out = b->batch.samples.data();
    return VS_OK;
}

vs_status vs_batch_maturity(const vs_batch* b, double* out) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(out);
    *out = b->batch.grid.maturity;
    return VS_OK;
}

vs_status vs_batch_mean(const vs_batch* b, double* mean, double* std_error) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(mean);
    return guarded([&] {
        const mc::MeanEstimate m = mc::estimate_mean(b->batch);
        *mean = m.mean;
        if (std_error != nullptr) *std_error = m.std_error;
    });
}

vs_status vs_price_call(const vs_batch* b, double strike, vs_price_estimate* out) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(out);
    return guarded([&] { *out = to_c(pricing::price_call(b->batch, strike)); });
}

vs_status vs_atmi(const vs_batch* b, vs_atmi_result* out) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(out);
    return guarded([&] {
        const pricing::AtmiResult r = pricing::atmi(b->batch);
        out->vol = r.vol;
        out->vol_std_error = r.vol_std_error;
        out->forward = r.forward;
        out->price = to_c(r.price);
        out->degenerate = r.degenerate ? 1 : 0;
    });
}

vs_status vs_smile(const vs_batch* b, const double* offsets, size_t n, vs_smile_point* out) {
    VS_REQUIRE_PTR(b);
    if (n > 0) {
        VS_REQUIRE_PTR(offsets);
        VS_REQUIRE_PTR(out);
    }
    return guarded([&] {
        const auto points = pricing::smile(b->batch, std::span<const double>(offsets, n));
        for (size_t i = 0; i < n; ++i) {
            const pricing::SmilePoint& p = points[i];
            out[i].log_strike_offset = p.log_strike_offset;
            out[i].implied_vol = p.implied_vol;
            out[i].vol_std_error = p.vol_std_error;
            out[i].strike = p.strike;
            out[i].price = to_c(p.price);
            out[i].status = p.ok ? VS_OK : to_status(p.error_code);
        }
    });
}

vs_status vs_atmi_skew(const vs_batch* b, double h, vs_skew_result* out) {
    VS_REQUIRE_PTR(b);
    VS_REQUIRE_PTR(out);
    return guarded([&] {
        const pricing::SkewResult r = pricing::atmi_skew(b->batch, h);
        *out = vs_skew_result{r.skew, r.std_error, r.vol_minus, r.vol_plus, r.forward};
    });
}

}  // extern "C"
