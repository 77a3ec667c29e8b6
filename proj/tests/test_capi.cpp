#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "vixsmile/vixsmile.h"

namespace {

vs_model_params mixed(double H, double beta, double gamma, double nu, double eta) {
    vs_model_params p;
    vs_model_params_default(&p);
    p.hurst = H;
    p.beta = beta;
    p.gamma = gamma;
    p.nu = nu;
    p.eta = eta;
    return p;
}

vs_sim_grid grid(double T, size_t n_paths, size_t n_inner = 16) {
    vs_sim_grid g;
    vs_sim_grid_default(&g);
    g.maturity = T;
    g.n_paths = n_paths;
    g.n_inner = n_inner;
    return g;
}

double poly(double x, void* user) { return *static_cast<double*>(user) * x * x; }

}  // namespace

TEST(CApi, Defaults) {
    vs_model_params p;
    vs_model_params_default(&p);
    EXPECT_EQ(p.v0, 0.04);
    EXPECT_EQ(p.gamma, 1.0);
    vs_sim_grid g;
    vs_sim_grid_default(&g);
    EXPECT_EQ(g.n_inner, 64u);
    EXPECT_EQ(g.n_paths, 200000u);
    EXPECT_EQ(g.seed, 42u);
    EXPECT_EQ(g.chunk_size, 4096u);
    EXPECT_NEAR(g.delta, 30.0 / 365.0, 1e-16);
    EXPECT_STREQ(vs_status_string(VS_ERR_DOMAIN), "domain");
    EXPECT_NE(std::string(vs_version()), "");
}

TEST(CApi, NullPointersAreRejected) {
    EXPECT_EQ(vs_normal_cdf(0.0, nullptr), VS_ERR_NULL_POINTER);
    EXPECT_EQ(vs_asymptote(VS_VIX_ATMI_LIMIT, nullptr, 0.1, 0.0, nullptr), VS_ERR_NULL_POINTER);
    EXPECT_EQ(vs_sampler_create(VS_VIX, nullptr, nullptr, nullptr), VS_ERR_NULL_POINTER);
    size_t n = 0;
    EXPECT_EQ(vs_batch_size(nullptr, &n), VS_ERR_NULL_POINTER);
    EXPECT_NE(std::string(vs_last_error()), "");
    vs_sampler_free(nullptr);
    vs_batch_free(nullptr);
}

TEST(CApi, ErrorsCarryCodeAndMessage) {
    double out = 0.0;
    EXPECT_EQ(vs_lower_incomplete_gamma(-1.0, 1.0, &out), VS_ERR_DOMAIN);
    EXPECT_NE(std::string(vs_last_error()).find("gamma"), std::string::npos);
    EXPECT_EQ(vs_implied_vol(1.0, 0.0, 0.0, 1.0, &out), VS_ERR_OUT_OF_BOUNDS);
    vs_model_params p = mixed(0.7, 0.0, 1.0, 2.0, 0.0);
    EXPECT_EQ(vs_kernel(&p, 1.0, &out), VS_ERR_DOMAIN);
    p = mixed(0.3, 0.0, 1.0, 0.0, 0.0);
    vs_asymptote_result r;
    EXPECT_EQ(vs_asymptote(VS_VIX_SKEW_LIMIT, &p, 0.1, 0.0, &r), VS_ERR_DEGENERATE);
    EXPECT_EQ(vs_asymptote(static_cast<vs_formula>(42), &p, 0.1, 0.0, &r), VS_ERR_INVALID_ARGUMENT);
}

TEST(CApi, LastErrorIsPerThread) {
    double out = 0.0;
    EXPECT_EQ(vs_lower_incomplete_gamma(-1.0, 1.0, &out), VS_ERR_DOMAIN);
    const std::string here = vs_last_error();
    std::thread([] {
        double x = 0.0;
        vs_normal_cdf(0.0, nullptr);
        (void)x;
    }).join();
    EXPECT_EQ(std::string(vs_last_error()), here);
}

TEST(CApi, SpecialFunctionsAndQuadrature) {
    double out = 0.0, err = 0.0;
    ASSERT_EQ(vs_lower_incomplete_gamma(1.0, 2.0, &out), VS_OK);
    EXPECT_NEAR(out, 1 - std::exp(-2.0), 1e-15);
    ASSERT_EQ(vs_gauss_2f1(1, 1, 2, -1, &out), VS_OK);
    EXPECT_NEAR(out, std::log(2.0), 1e-12);
    vs_quad_spec spec;
    vs_quad_spec_default(&spec);
    double scale = 3.0;
    ASSERT_EQ(vs_integrate(poly, &scale, 0.0, 1.0, &spec, &out, &err), VS_OK);
    EXPECT_NEAR(out, 1.0, 1e-13);
    spec.max_subdivisions = 1;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-300;
    const vs_status st = vs_integrate([](double x, void*) { return std::sin(300 * x); }, nullptr, 0.0, 10.0, &spec,
                                      &out, &err);
    EXPECT_EQ(st, VS_ERR_TOLERANCE);
    EXPECT_TRUE(std::isfinite(out));
}

TEST(CApi, BlackScholesRoundTrip) {
    double price = 0.0, vol = 0.0;
    ASSERT_EQ(vs_bs_price(0.0, 0.0, 1.0, 0.2, &price), VS_OK);
    ASSERT_EQ(vs_atm_implied_vol(price, 1.0, 1.0, &vol), VS_OK);
    EXPECT_NEAR(vol, 0.2, 1e-12);
}

TEST(CApi, Asymptotes) {
    const vs_model_params sabr = mixed(0.5, 0.0, 1.0, 2.0, 0.0);
    vs_asymptote_result r;
    ASSERT_EQ(vs_asymptote(VS_VIX_ATMI_LIMIT, &sabr, 30.0 / 365.0, 0.0, &r), VS_OK);
    EXPECT_NEAR(r.value, 1.0, 1e-14);
    EXPECT_EQ(r.formula, VS_VIX_ATMI_LIMIT);
    EXPECT_STREQ(vs_formula_name(VS_RV_SKEW_LIMIT), "RV_SKEW_LIMIT");
    double v = 0.0;
    ASSERT_EQ(vs_sabr_mixed_vix_skew(0.5, 3.0, 1.0, &v), VS_OK);
    EXPECT_NEAR(v, 0.25, 1e-15);
    const vs_model_params mix = mixed(0.5, 0.0, 0.5, 3.0, 1.0);
    ASSERT_EQ(vs_asymptote(VS_SABR_VIX_SKEW, &mix, 30.0 / 365.0, 0.0, &r), VS_OK);
    EXPECT_NEAR(r.value, 0.25, 1e-15);
    double g = 0.0, j = 0.0;
    ASSERT_EQ(vs_gj(&sabr, 1.0, &g, &j), VS_OK);
    EXPECT_DOUBLE_EQ(g, 1.0);
    EXPECT_DOUBLE_EQ(j, 1.0);
    ASSERT_EQ(vs_asymptote(VS_RV_ATMI_LIMIT, &sabr, 0.0, 0.0, &r), VS_OK);
    EXPECT_NEAR(r.value, 2 / std::sqrt(3.0), 1e-14);
    vs_heston_params h;
    vs_heston_params_default(&h);
    int sign = 0, feller = 0;
    ASSERT_EQ(vs_heston_vix_skew_sign(&h, 30.0 / 365.0, &v, &sign, &feller), VS_OK);
    EXPECT_EQ(sign, -1);
    ASSERT_EQ(vs_rv_atmi_limit_general(0.04 * 2.0, 0.04, 0.5, &v), VS_OK);
    EXPECT_NEAR(v, 2 / std::sqrt(3.0), 1e-14);
}

TEST(CApi, SamplerLifecycle) {
    const vs_model_params p = mixed(0.3, 0.0, 1.0, 2.0, 0.0);
    const vs_sim_grid g = grid(0.1, 5000, 8);
    vs_sampler* s = nullptr;
    ASSERT_EQ(vs_sampler_create(VS_VIX, &p, &g, &s), VS_OK);
    size_t m = 0;
    ASSERT_EQ(vs_sampler_node_count(s, &m), VS_OK);
    EXPECT_EQ(m, 8u);
    std::vector<double> nodes(m), vars(m);
    EXPECT_EQ(vs_sampler_nodes(s, nodes.data(), m - 1), VS_ERR_OUT_OF_BOUNDS);
    ASSERT_EQ(vs_sampler_nodes(s, nodes.data(), m), VS_OK);
    ASSERT_EQ(vs_sampler_node_variances(s, vars.data(), m), VS_OK);
    EXPECT_DOUBLE_EQ(nodes[0], 0.1);
    double c = 0.0;
    ASSERT_EQ(vs_sampler_covariance(s, 0, 0, &c), VS_OK);
    EXPECT_DOUBLE_EQ(c, vars[0]);
    EXPECT_EQ(vs_sampler_covariance(s, m, 0, &c), VS_ERR_OUT_OF_BOUNDS);

    vs_batch* b1 = nullptr;
    vs_batch* b2 = nullptr;
    ASSERT_EQ(vs_sampler_sample(s, 5000, 9, 1, &b1), VS_OK);
    ASSERT_EQ(vs_sampler_sample(s, 5000, 9, 4, &b2), VS_OK);
    size_t n1 = 0;
    const double* d1 = nullptr;
    const double* d2 = nullptr;
    ASSERT_EQ(vs_batch_size(b1, &n1), VS_OK);
    ASSERT_EQ(vs_batch_samples(b1, &d1), VS_OK);
    ASSERT_EQ(vs_batch_samples(b2, &d2), VS_OK);
    EXPECT_EQ(n1, 5000u);
    EXPECT_EQ(std::memcmp(d1, d2, n1 * sizeof(double)), 0);
    double T = 0.0, mean = 0.0, se = 0.0;
    ASSERT_EQ(vs_batch_maturity(b1, &T), VS_OK);
    EXPECT_EQ(T, 0.1);
    ASSERT_EQ(vs_batch_mean(b1, &mean, &se), VS_OK);
    EXPECT_GT(se, 0.0);

    vs_atmi_result a;
    ASSERT_EQ(vs_atmi(b1, &a), VS_OK);
    EXPECT_GT(a.vol, 0.0);
    EXPECT_EQ(a.degenerate, 0);
    EXPECT_EQ(a.forward, mean);
    vs_skew_result sk;
    ASSERT_EQ(vs_atmi_skew(b1, 0.01, &sk), VS_OK);
    EXPECT_GT(sk.std_error, 0.0);
    const double offsets[] = {-0.05, 0.0, 0.05, 10.0};
    vs_smile_point pts[4];
    ASSERT_EQ(vs_smile(b1, offsets, 4, pts), VS_OK);
    EXPECT_EQ(pts[1].status, VS_OK);
    EXPECT_DOUBLE_EQ(pts[1].implied_vol, a.vol);
    EXPECT_EQ(pts[3].status, VS_ERR_OUT_OF_BOUNDS);

    std::vector<double> means(m), ses(m);
    ASSERT_EQ(vs_sampler_node_moments(s, 2000, 1, 0, means.data(), ses.data(), m), VS_OK);
    for (size_t i = 0; i < m; ++i) {
        EXPECT_LE(std::abs(means[i] - p.v0), 4 * ses[i]);
    }

    vs_batch_free(b1);
    vs_batch_free(b2);
    vs_sampler_free(s);
}

TEST(CApi, BatchFromSamples) {
    const double samples[] = {1.0, 3.0};
    vs_batch* b = nullptr;
    ASSERT_EQ(vs_batch_from_samples(samples, 2, 0.5, &b), VS_OK);
    vs_price_estimate pe;
    ASSERT_EQ(vs_price_call(b, 2.0, &pe), VS_OK);
    EXPECT_DOUBLE_EQ(pe.value, 0.5);
    EXPECT_DOUBLE_EQ(pe.std_error, 0.5);
    EXPECT_EQ(vs_price_call(b, -1.0, &pe), VS_ERR_DOMAIN);
    vs_batch_free(b);
    const double bad[] = {1.0, -2.0};
    EXPECT_NE(vs_batch_from_samples(bad, 2, 0.5, &b), VS_OK);
}

TEST(CApi, RvSamplerFlatWithoutVolOfVol) {
    const vs_model_params p = mixed(0.2, 1.0, 0.5, 0.0, 0.0);
    const vs_sim_grid g = grid(0.1, 100, 8);
    vs_sampler* s = nullptr;
    ASSERT_EQ(vs_sampler_create(VS_RV, &p, &g, &s), VS_OK);
    vs_batch* b = nullptr;
    ASSERT_EQ(vs_sampler_sample(s, 100, 1, 0, &b), VS_OK);
    vs_atmi_result a;
    ASSERT_EQ(vs_atmi(b, &a), VS_OK);
    EXPECT_EQ(a.degenerate, 1);
    EXPECT_EQ(a.vol, 0.0);
    vs_batch_free(b);
    vs_sampler_free(s);
}
