#include "validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <exception>
#include <numbers>
#include <string>

#include "vs_handles.hpp"

namespace vstool {

namespace {

constexpr double kDelta = 30.0 / 365.0;
constexpr std::size_t kInner = 64;
constexpr std::size_t kPaths = 200000;

struct Context {
    const ValidationOptions& opt;
    double tol_factor;
    std::size_t paths(std::size_t n) const { return opt.quick ? n / 4 : n; }
    double tol(double t) const { return t * tol_factor; }
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

struct McAtmi {
    double vol = 0.0;
    double std_error = 0.0;
};

McAtmi mc_atmi(const Context& ctx, vs_underlying kind, const vs_model_params& p, double maturity, std::size_t paths) {
    const vs_sim_grid grid = sim_grid(maturity, kDelta, kInner, paths, ctx.opt.seed);
    const SamplerPtr sampler = make_sampler(kind, p, grid);
    const BatchPtr batch = sample(sampler.get(), paths, ctx.opt.seed, ctx.opt.workers);
    vs_atmi_result r{};
    check(vs_atmi(batch.get(), &r), "vs_atmi");
    return {r.vol, r.vol_std_error};
}

vs_skew_result mc_skew(const Context& ctx, vs_underlying kind, const vs_model_params& p, double maturity,
                       std::size_t paths) {
    const vs_sim_grid grid = sim_grid(maturity, kDelta, kInner, paths, ctx.opt.seed);
    const SamplerPtr sampler = make_sampler(kind, p, grid);
    const BatchPtr batch = sample(sampler.get(), paths, ctx.opt.seed, ctx.opt.workers);
    vs_skew_result r{};
    check(vs_atmi_skew(batch.get(), 0.01, &r), "vs_atmi_skew");
    return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Tracks the worst case of a family of checks.
struct Worst {
    double value = 0.0;
    bool ok = true;
    void add(double v, bool pass) {
        value = std::max(value, v);
        ok = ok && pass;
    }
};

// 1. SABR VIX ATMI limit nu/2.
void sabr_vix_atmi(const Context& ctx, CriterionResult& r) {
    const vs_model_params p = model_params(0.04, 0.5, 0.0, 1.0, 2.0, 0.0);
    const McAtmi a = mc_atmi(ctx, VS_VIX, p, 1e-4, ctx.paths(kPaths));
    const double tol = ctx.tol(0.02);
    r.passed = std::abs(a.vol - 1.0) <= tol;
    r.achieved = fmt("MC ATMI %.6f (stderr %.2e)", a.vol, a.std_error);
    r.tolerance = fmt("[%.4f, %.4f]", 1.0 - tol, 1.0 + tol);
}

// 2. RV ATMI power law.
void rv_atmi_power_law(const Context& ctx, CriterionResult& r) {
    Worst w;
    const double tol = ctx.tol(0.03);
    const double T = 1e-4;
    for (double h : {0.1, 0.3}) {
        const vs_model_params p = model_params(0.04, h, 0.0, 1.0, 2.0, 0.0);
        const McAtmi a = mc_atmi(ctx, VS_RV, p, T, ctx.paths(kPaths));
        const double scaled = std::pow(T, 0.5 - h) * a.vol;
        const double limit = std::sqrt(2.0 * h) * 2.0 / ((h + 0.5) * std::sqrt(2.0 * h + 2.0));
        const double gap = rel(scaled, limit);
        w.add(gap, gap <= tol);
        r.details.push_back(fmt("H=%.1f: T^(1/2-H) ATMI %.6f vs limit %.6f, rel gap %.3e", h, scaled, limit, gap));
    }
    r.passed = w.ok;
    r.achieved = fmt("max rel gap %.3e", w.value);
    r.tolerance = fmt("<= %.3g", tol);
}

// 3. Heston VIX skew sign.
void heston_skew_sign(const Context&, CriterionResult& r) {
    bool ok = true;
    double worst = -INFINITY;
    for (double k : {0.5, 1.0, 2.0, 5.0}) {
        const vs_heston_params p{k, 0.04, 0.5, 0.04};
        double value = 0.0;
        int sign = 0;
        int feller = 0;
        check(vs_heston_vix_skew_sign(&p, kDelta, &value, &sign, &feller), "vs_heston_vix_skew_sign");
        ok = ok && value < 0.0;
        worst = std::max(worst, value);
        r.details.push_back(fmt("k=%.1f: value %.6e", k, value));
    }
    r.passed = ok;
    r.achieved = fmt("max value %.6e", worst);
    r.tolerance = "< 0";
}

// 4. Mixed SABR skew.
void mixed_sabr_skew(const Context& ctx, CriterionResult& r) {
    double closed = 0.0;
    check(vs_sabr_mixed_vix_skew(0.5, 3.0, 1.0, &closed), "vs_sabr_mixed_vix_skew");
    const double closed_tol = ctx.tol(1e-12);
    bool ok = std::abs(closed - 0.25) <= closed_tol;
    r.details.push_back(fmt("closed form %.17g (|err| %.2e, tol %.1e)", closed, std::abs(closed - 0.25), closed_tol));
    const double tol = ctx.tol(0.15);
    double worst = 0.0;
    const vs_model_params p = model_params(0.04, 0.5, 0.0, 0.5, 3.0, 1.0);
    for (double T : {1.0 / 12.0, 0.25}) {
        const vs_skew_result s = mc_skew(ctx, VS_VIX, p, T, ctx.paths(kPaths));
        const double gap = rel(s.skew, 0.25);
        worst = std::max(worst, gap);
        ok = ok && gap <= tol;
        r.details.push_back(fmt("T=%.4f: MC skew %.5f (stderr %.2e), rel gap %.3e", T, s.skew, s.std_error, gap));
    }
    r.passed = ok;
    r.achieved = fmt("closed %.15g, max MC rel gap %.3e", closed, worst);
    r.tolerance = fmt("closed 1e-12, MC <= %.3g", tol);
}

// 5. Semi-closed VIX ATMI against MC.
void vix_atmi_approx_vs_mc(const Context& ctx, CriterionResult& r) {
    const vs_model_params p = model_params(0.04, 0.3, 0.0, 1.0, 2.0, 0.0);
    const double tol = ctx.tol(0.05);
    Worst w;
    for (double T : {0.1, 0.25, 0.5}) {
        const McAtmi a = mc_atmi(ctx, VS_VIX, p, T, ctx.paths(kPaths));
        const double approx = asymptote(VS_VIX_ATMI_APPROX, p, kDelta, T).value;
        const double gap = rel(approx, a.vol);
        w.add(gap, gap <= tol);
        r.details.push_back(fmt("T=%.2f: approx %.6f vs MC %.6f (stderr %.2e), rel gap %.3e", T, approx, a.vol,
                                a.std_error, gap));
    }
    r.passed = w.ok;
    r.achieved = fmt("max rel gap %.3e", w.value);
    r.tolerance = fmt("<= %.3g", tol);
}

struct QuadIntegrand {
    double hurst;
    double maturity;
};

double rv_inner_square(double x, void* user) {
    const auto* q = static_cast<const QuadIntegrand*>(user);
    const double a = q->hurst + 0.5;
    const double inner = std::pow(q->maturity - x, a) / a;
    return inner * inner;
}

// 6. Semi-closed RV ATMI.
void rv_atmi_approx_checks(const Context& ctx, CriterionResult& r) {
    const double exact_tol = ctx.tol(1e-12);
    bool ok = true;
    double worst_exact = 0.0;
    for (double h : {0.1, 0.3, 0.5}) {
        for (double T : {1e-3, 0.1, 1.0}) {
            const vs_model_params p = model_params(0.04, h, 0.0, 1.0, 2.0, 0.0);
            const double approx = asymptote(VS_RV_ATMI_APPROX, p, kDelta, T).value;
            const double limit = asymptote(VS_RV_ATMI_LIMIT, p, kDelta, T).value * std::pow(T, h - 0.5);
            worst_exact = std::max(worst_exact, rel(approx, limit));
            // The defining double integral, evaluated by quadrature, as a second witness.
            QuadIntegrand q{h, T};
            vs_quad_spec spec;
            vs_quad_spec_default(&spec);
            spec.abs_tol = 1e-300;
            spec.rel_tol = 1e-13;
            double integral = 0.0;
            check(vs_integrate(rv_inner_square, &q, 0.0, T, &spec, &integral, nullptr), "vs_integrate");
            const double direct = 2.0 * std::sqrt(2.0 * h) / std::pow(T, 1.5) * std::sqrt(integral);
            const double gap = rel(approx, direct);
            ok = ok && gap <= ctx.tol(1e-10);
            if (gap > ctx.tol(1e-10)) {
                r.details.push_back(fmt("H=%.1f T=%g: quadrature witness gap %.3e", h, T, gap));
            }
        }
    }
    ok = ok && worst_exact <= exact_tol;
    r.details.push_back(fmt("beta=0 reduction: max rel gap %.3e (tol %.1e)", worst_exact, exact_tol));

    const vs_model_params p = model_params(0.04, 0.3, 1.0, 1.0, 2.0, 0.0);
    const double T = 0.25;
    const McAtmi a = mc_atmi(ctx, VS_RV, p, T, ctx.paths(kPaths));
    const double approx = asymptote(VS_RV_ATMI_APPROX, p, kDelta, T).value;
    const double gap = rel(approx, a.vol);
    const double tol = ctx.tol(0.05);
    ok = ok && gap <= tol;
    r.details.push_back(fmt("beta=1 T=0.25: approx %.6f vs MC %.6f (stderr %.2e), rel gap %.3e", approx, a.vol,
                            a.std_error, gap));
    r.passed = ok;
    r.achieved = fmt("reduction %.2e, MC gap %.3e", worst_exact, gap);
    r.tolerance = fmt("%.1e / %.3g", exact_tol, tol);
}

// Two-dimensional tensor Gauss-Legendre oracle for I(H) in the variables sigma = T - s
// and t = (u - s) / sigma, with t = w^(1/(H+1/2)) absorbing t^(H-1/2).
double cal_i_tensor_oracle(double h, double T, int panels) {
    static constexpr std::array<double, 4> x = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                                0.8611363115940526};
    static constexpr std::array<double, 4> wt = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                 0.3478548451374538};
    const double a = h + 0.5;
    std::vector<double> t_weight;
    std::vector<double> t_value;
    for (int i = 0; i < panels; ++i) {
        const double lo = static_cast<double>(i) / panels;
        const double half = 0.5 / panels;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double w = lo + half * (1.0 + x[j]);
            const double t = std::pow(w, 1.0 / a);
            double f = 0.0;
            check(vs_gauss_2f1(0.5 - h, h + 0.5, h + 1.5, -(1.0 - t) / t, &f), "vs_gauss_2f1");
            t_weight.push_back(half * wt[j] / a);
            t_value.push_back(std::pow(1.0 - t, 2.0 * h + 1.0) * f);
        }
    }
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = T * i / panels;
        const double half = 0.5 * T / panels;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double sigma = lo + half * (1.0 + x[j]);
            // sigma^(H+1/2) (sigma (1-t))^(2H+1) (sigma t)^(H-1/2) sigma dt, with t^(H-1/2) dt = dw / a
            const double power =
                std::pow(sigma, h + 0.5) * std::pow(sigma, 2.0 * h + 1.0) * std::pow(sigma, h - 0.5) * sigma;
            double row = 0.0;
            for (std::size_t k = 0; k < t_value.size(); ++k) {
                row += t_weight[k] * power * t_value[k];
            }
            total += half * wt[j] * row;
        }
    }
    return total / a / std::pow(T, 4.0 * h + 3.0);
}

// 7. I(H) stability.
void cal_i_stability(const Context& ctx, CriterionResult& r) {
    const double tol = ctx.tol(0.005);
    bool ok = true;
    double worst_inv = 0.0;
    double worst_oracle = 0.0;
    for (double h : {0.1, 0.3, 0.5}) {
        double a = 0.0;
        double b = 0.0;
        check(vs_cal_i(h, 1e-3, &a), "vs_cal_i");
        check(vs_cal_i(h, 1e-4, &b), "vs_cal_i");
        const double inv = rel(a, b);
        const double oracle = cal_i_tensor_oracle(h, 1e-4, 500);
        const double og = rel(b, oracle);
        ok = ok && inv <= tol && og <= tol && a > 0.0 && b > 0.0;
        worst_inv = std::max(worst_inv, inv);
        worst_oracle = std::max(worst_oracle, og);
        r.details.push_back(fmt("H=%.1f: I(1e-3) %.10f, I(1e-4) %.10f, tensor oracle %.10f", h, a, b, oracle));
    }
    r.passed = ok;
    r.achieved = fmt("T-invariance %.2e, oracle gap %.2e", worst_inv, worst_oracle);
    r.tolerance = fmt("<= %.3g, positive", tol);
}

// 8. Limit / approximation consistency.
void limit_consistency(const Context& ctx, CriterionResult& r) {
    const double level_tol = ctx.tol(1e-3);
    const double skew_tol = ctx.tol(1e-2);
    Worst level;
    Worst skew;
    Worst rv;
    struct Mix {
        double gamma, nu, eta;
    };
    // Single lognormal with nu = 2.5 and the mixture (1/2, 3, 1) of the skew figures.
    for (const Mix& m : {Mix{1.0, 2.5, 0.0}, Mix{0.5, 3.0, 1.0}}) {
        for (double h : {0.1, 0.3, 0.5}) {
            for (double beta : {0.0, 1.0}) {
                const vs_model_params p = model_params(0.04, h, beta, m.gamma, m.nu, m.eta);
                const double lim = asymptote(VS_VIX_ATMI_LIMIT, p, kDelta, 0.0).value;
                const double app = asymptote(VS_VIX_ATMI_APPROX, p, kDelta, 1e-6).value;
                level.add(rel(app, lim), rel(app, lim) <= level_tol);

                const double slim = asymptote(VS_VIX_SKEW_LIMIT, p, kDelta, 0.0).value;
                const double sapp = asymptote(VS_VIX_SKEW_APPROX, p, kDelta, 1e-5).value;
                // A vanishing limit (the SABR point) is checked in absolute terms.
                const double sgap = slim == 0.0 ? std::abs(sapp) : rel(sapp, slim);
                const bool spass = slim == 0.0 ? sgap <= ctx.tol(1e-8) : sgap <= skew_tol;
                skew.add(sgap, spass);
                if (!spass) {
                    r.details.push_back(fmt("skew gamma=%.1f nu=%.1f eta=%.1f H=%.1f beta=%.0f: approx(1e-5) %.6f vs "
                                            "limit %.6f, rel gap %.3e",
                                            m.gamma, m.nu, m.eta, h, beta, sapp, slim, sgap));
                }

                const double rlim = asymptote(VS_RV_ATMI_LIMIT, p, kDelta, 0.0).value;
                const double rapp = asymptote(VS_RV_ATMI_APPROX, p, kDelta, 1e-6).value * std::pow(1e-6, 0.5 - h);
                rv.add(rel(rapp, rlim), rel(rapp, rlim) <= level_tol);
            }
        }
    }
    r.passed = level.ok && skew.ok && rv.ok;
    r.achieved = fmt("VIX level %.2e, VIX skew %.2e, RV level %.2e", level.value, skew.value, rv.value);
    r.tolerance = fmt("level <= %.1e at T=1e-6, skew <= %.1e at T=1e-5", level_tol, skew_tol);
}

struct PowerIntegrand {
    double a;
};

double gamma_density(double t, void* user) {
    const double a = static_cast<const PowerIntegrand*>(user)->a;
    return std::pow(t, a - 1.0) * std::exp(-t);
}

// 9. Special-function oracles.
void special_functions(const Context& ctx, CriterionResult& r) {
    const double gamma_tol = ctx.tol(1e-10);
    double worst_gamma = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double a = 0.1 + 0.3 * i;
        for (double x : {0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0}) {
            double value = 0.0;
            check(vs_lower_incomplete_gamma(a, x, &value), "vs_lower_incomplete_gamma");
            PowerIntegrand pi{a};
            vs_quad_spec spec;
            vs_quad_spec_default(&spec);
            spec.abs_tol = 1e-15;
            spec.rel_tol = 1e-14;
            spec.max_subdivisions = 10000;
            if (a < 1.0) {
                spec.singular_left = 1;
                spec.singular_exponent = a - 1.0;
            }
            double oracle = 0.0;
            check(vs_integrate(gamma_density, &pi, 0.0, x, &spec, &oracle, nullptr), "vs_integrate");
            worst_gamma = std::max(worst_gamma, std::abs(value - oracle));
        }
    }
    r.details.push_back(fmt("lower incomplete gamma: max |err| %.2e over 100 points", worst_gamma));

    const double f_tol = ctx.tol(1e-9);
    double worst_f = 0.0;
    double f = 0.0;
    check(vs_gauss_2f1(0.2, 0.8, 1.8, 0.0, &f), "vs_gauss_2f1");
    worst_f = std::max(worst_f, std::abs(f - 1.0));
    for (double z : {-0.5, -1.0, -3.0, -10.0}) {
        check(vs_gauss_2f1(1.0, 1.0, 2.0, z, &f), "vs_gauss_2f1");
        worst_f = std::max(worst_f, std::abs(f - std::log1p(-z) / -z));
    }
    for (double xv : {0.5, 1.0, 2.0, 5.0}) {
        check(vs_gauss_2f1(0.5, 1.0, 1.5, -xv * xv, &f), "vs_gauss_2f1");
        worst_f = std::max(worst_f, std::abs(f - std::atan(xv) / xv));
    }
    r.details.push_back(fmt("2F1 identities: max |err| %.2e", worst_f));

    const double rt_tol = ctx.tol(1e-10);
    double worst_rt = 0.0;
    for (double vol : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
        for (double T : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0}) {
            double price = 0.0;
            double back = 0.0;
            check(vs_bs_price(0.0, 0.0, T, vol, &price), "vs_bs_price");
            check(vs_implied_vol(price, 0.0, 0.0, T, &back), "vs_implied_vol");
            worst_rt = std::max(worst_rt, std::abs(back - vol));
        }
    }
    r.details.push_back(fmt("implied vol round trip: max |err| %.2e", worst_rt));
    r.passed = worst_gamma <= gamma_tol && worst_f <= f_tol && worst_rt <= rt_tol;
    r.achieved = fmt("gamma %.1e, 2F1 %.1e, round trip %.1e", worst_gamma, worst_f, worst_rt);
    r.tolerance = fmt("%.0e / %.0e / %.0e", gamma_tol, f_tol, rt_tol);
}

// 10. Simulation invariants.
void simulation_invariants(const Context& ctx, CriterionResult& r) {
    bool ok = true;
    const vs_model_params p = model_params(0.04, 0.1, 0.0, 1.0, 1.5, 0.0);
    const double T = 0.25;
    const std::size_t paths = ctx.paths(kPaths);
    const double z_tol = ctx.tol(4.0);

    double worst_z = 0.0;
    for (vs_underlying kind : {VS_RV, VS_VIX}) {
        const SamplerPtr s = make_sampler(kind, p, sim_grid(T, kDelta, kInner, paths, ctx.opt.seed));
        std::size_t m = 0;
        check(vs_sampler_node_count(s.get(), &m), "vs_sampler_node_count");
        std::vector<double> means(m);
        std::vector<double> errs(m);
        check(vs_sampler_node_moments(s.get(), paths, ctx.opt.seed, ctx.opt.workers, means.data(), errs.data(), m),
              "vs_sampler_node_moments");
        for (std::size_t i = 0; i < m; ++i) {
            const double z = std::abs(means[i] - p.v0) / errs[i];
            worst_z = std::max(worst_z, z);
        }
        const BatchPtr b = sample(s.get(), paths, ctx.opt.seed, ctx.opt.workers);
        const auto xs = samples_of(b.get());
        const double lo = *std::min_element(xs.begin(), xs.end());
        ok = ok && lo > 0.0;
        r.details.push_back(fmt("%s: min sample %.4e", kind == VS_RV ? "RV" : "VIX", lo));
    }
    ok = ok && worst_z <= z_tol;
    r.details.push_back(fmt("martingale: max |mean - v0| / stderr = %.3f", worst_z));

    // Standard error scaling under 4x paths.
    const vs_model_params q = model_params(0.04, 0.3, 0.0, 1.0, 2.0, 0.0);
    const SamplerPtr vix = make_sampler(VS_VIX, q, sim_grid(0.1, kDelta, kInner, 10000, ctx.opt.seed));
    const double lo_ratio = 0.5 - ctx.tol(0.1);
    const double hi_ratio = 0.5 + ctx.tol(0.1);
    double min_ratio = INFINITY;
    double max_ratio = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const std::uint64_t seed = ctx.opt.seed + 1000 + 2 * rep;
        const BatchPtr small = sample(vix.get(), 10000, seed, ctx.opt.workers);
        const BatchPtr large = sample(vix.get(), 40000, seed + 1, ctx.opt.workers);
        double m1 = 0.0;
        double e1 = 0.0;
        double m2 = 0.0;
        double e2 = 0.0;
        check(vs_batch_mean(small.get(), &m1, &e1), "vs_batch_mean");
        check(vs_batch_mean(large.get(), &m2, &e2), "vs_batch_mean");
        const double ratio = e2 / e1;
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
    }
    ok = ok && min_ratio >= lo_ratio && max_ratio <= hi_ratio;
    r.details.push_back(fmt("stderr ratio (4N vs N) over 10 repetitions in [%.4f, %.4f]", min_ratio, max_ratio));

    // Worker-count independence.
    const BatchPtr ref = sample(vix.get(), 50000, ctx.opt.seed, 1);
    const auto ref_samples = samples_of(ref.get());
    bool identical = true;
    for (unsigned workers : {2u, 3u, 8u}) {
        const BatchPtr other = sample(vix.get(), 50000, ctx.opt.seed, workers);
        const auto xs = samples_of(other.get());
        identical = identical && xs.size() == ref_samples.size() &&
                    std::memcmp(xs.data(), ref_samples.data(), xs.size() * sizeof(double)) == 0;
    }
    ok = ok && identical;
    r.details.push_back(fmt("worker counts 1/2/3/8: %s", identical ? "byte-identical" : "DIFFERENT"));

    r.passed = ok;
    r.achieved = fmt("max z %.2f, ratio [%.3f, %.3f], %s", worst_z, min_ratio, max_ratio,
                     identical ? "identical" : "not identical");
    r.tolerance = fmt("z <= %.2g, ratio in [%.2f, %.2f], identical, positive", z_tol, lo_ratio, hi_ratio);
}

// 11. SABR flat skew.
void sabr_flat_skew(const Context& ctx, CriterionResult& r) {
    const vs_model_params p = model_params(0.04, 0.5, 0.0, 1.0, 2.0, 0.0);
    const vs_skew_result s = mc_skew(ctx, VS_VIX, p, 1e-4, ctx.paths(kPaths));
    const double k = ctx.tol(3.0);
    r.passed = std::abs(s.skew) <= k * s.std_error;
    r.achieved = fmt("skew %.5f, stderr %.5f (%.2f stderr)", s.skew, s.std_error, std::abs(s.skew) / s.std_error);
    r.tolerance = fmt("|skew| <= %.2g stderr", k);
}

struct Criterion {
    int id;
    const char* name;
    double budget;
    void (*run)(const Context&, CriterionResult&);
};

constexpr Criterion kCriteria[] = {
    {1, "SABR VIX ATMI limit", 60.0, sabr_vix_atmi},
    {2, "RV ATMI power law", 120.0, rv_atmi_power_law},
    {3, "Heston VIX skew sign", 1.0, heston_skew_sign},
    {4, "Mixed SABR VIX skew", 180.0, mixed_sabr_skew},
    {5, "Semi-closed VIX ATMI vs MC", 180.0, vix_atmi_approx_vs_mc},
    {6, "Semi-closed RV ATMI", 120.0, rv_atmi_approx_checks},
    {7, "I(H) stability", 60.0, cal_i_stability},
    {8, "Limit/approximation consistency", 60.0, limit_consistency},
    {9, "Special-function oracles", 10.0, special_functions},
    {10, "Simulation invariants", 120.0, simulation_invariants},
    {11, "SABR flat skew", 60.0, sabr_flat_skew},
};

}  // namespace

std::vector<CriterionResult> run_validation(const ValidationOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    const Context ctx{options, options.tolerance_scale * (options.quick ? 2.0 : 1.0)};
    std::vector<CriterionResult> out;
    for (const Criterion& c : kCriteria) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
            continue;
        }
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.budget_seconds = c.budget;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(ctx, r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.achieved = "error";
            r.details.push_back(e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds > r.budget_seconds) {
            r.passed = false;
            r.details.push_back(fmt("runtime %.1f s exceeds the %.0f s budget", r.seconds, r.budget_seconds));
        }
        if (on_result) {
            on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    return fmt("[%s] %02d %-32s | achieved %s | tolerance %s | %.2f s / %.0f s", r.passed ? "PASS" : "FAIL", r.id,
               r.name.c_str(), r.achieved.c_str(), r.tolerance.c_str(), r.seconds, r.budget_seconds);
}

}  // namespace vstool
