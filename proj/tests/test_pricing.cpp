#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "vixsmile/asymptotics.hpp"
#include "vixsmile/bs.hpp"
#include "vixsmile/error.hpp"
#include "vixsmile/mc.hpp"
#include "vixsmile/pricing.hpp"

using namespace vixsmile;
using mc::Sampler;
using mc::SimGrid;
using model::ModelParams;

namespace {

ModelParams params(double H, double beta, double gamma = 1.0, double nu = 2.0, double eta = 0.0, double v0 = 0.04) {
    ModelParams p;
    p.v0 = v0;
    p.hurst = H;
    p.beta = beta;
    p.gamma = gamma;
    p.nu = nu;
    p.eta = eta;
    return p;
}

SimGrid grid(double T, std::size_t n_paths, std::size_t n_inner = 16) {
    SimGrid g;
    g.maturity = T;
    g.n_inner = n_inner;
    g.n_paths = n_paths;
    return g;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

}  // namespace

TEST(PriceCall, TwoSampleHandComputation) {
    const std::vector<double> s = {1.0, 3.0};
    const auto p = pricing::price_call(s, 2.0);
    EXPECT_DOUBLE_EQ(p.value, 0.5);
    EXPECT_DOUBLE_EQ(p.std_error, 0.5);
    EXPECT_EQ(p.n_paths, 2u);
}

TEST(PriceCall, ZeroStrikeIsMean) {
    const std::vector<double> s = {1.0, 2.5, 4.0, 0.3};
    const auto p = pricing::price_call(s, 0.0);
    const auto m = mc::estimate_mean(s);
    EXPECT_DOUBLE_EQ(p.value, m.mean);
    EXPECT_DOUBLE_EQ(p.std_error, m.std_error);
}

TEST(PriceCall, StrikeAboveSupport) {
    const std::vector<double> s = {1.0, 2.5, 4.0};
    const auto p = pricing::price_call(s, 5.0);
    EXPECT_EQ(p.value, 0.0);
    EXPECT_EQ(p.std_error, 0.0);
    EXPECT_EQ(code_of([&] { pricing::price_call(s, -1.0); }), ErrorCode::Domain);
}

TEST(Atmi, ConstantBatchIsDegenerate) {
    const std::vector<double> s(100, 0.2);
    const auto a = pricing::atmi(s, 0.1);
    EXPECT_TRUE(a.degenerate);
    EXPECT_EQ(a.vol, 0.0);
    const auto batch = Sampler::build_vix(params(0.3, 0.0, 1.0, 0.0), grid(0.1, 200)).sample();
    EXPECT_TRUE(pricing::atmi(batch).degenerate);
}

TEST(Atmi, SabrLimit) {
    const auto batch = Sampler::build_vix(params(0.5, 0.0), grid(1e-4, 200000)).sample();
    const auto a = pricing::atmi(batch);
    EXPECT_FALSE(a.degenerate);
    EXPECT_NEAR(a.vol, 1.0, 0.02);
    EXPECT_GT(a.vol_std_error, 0.0);
}

TEST(Atmi, ScaleInvariance) {
    const auto batch = Sampler::build_vix(params(0.3, 0.0), grid(0.1, 20000)).sample();
    const double base = pricing::atmi(batch).vol;
    for (double c : {0.1, 3.0, 50.0}) {
        std::vector<double> scaled = batch.samples;
        for (double& x : scaled) x *= c;
        EXPECT_NEAR(pricing::atmi(scaled, 0.1).vol, base, 1e-10) << "c=" << c;
    }
}

TEST(Atmi, RvInvariantUnderInitialVariance) {
    const double a = pricing::atmi(Sampler::build_rv(params(0.2, 1.0, 1.0, 2.0, 0.0, 0.04), grid(0.05, 20000)).sample()).vol;
    const double b = pricing::atmi(Sampler::build_rv(params(0.2, 1.0, 1.0, 2.0, 0.0, 0.25), grid(0.05, 20000)).sample()).vol;
    EXPECT_NEAR(a, b, 1e-10);
}

// ATM strike taken from an independent batch moves the ATMI by less than the noise.
TEST(Atmi, SameBatchStrikeBiasBelowNoise) {
    const Sampler s = Sampler::build_vix(params(0.3, 0.0), grid(0.1, 100000));
    const auto a = s.sample(100000, 1, 0);
    const auto b = s.sample(100000, 2, 0);
    const auto same = pricing::atmi(a);
    const double strike = mc::estimate_mean(b).mean;
    const double price = pricing::price_call(a, strike).value;
    const double forward = mc::estimate_mean(a).mean;
    const double vol = bs::implied_vol(price, std::log(forward), std::log(strike), 0.1);
    EXPECT_LE(std::abs(vol - same.vol), 3 * std::sqrt(2.0) * same.vol_std_error);
}

TEST(Smile, ZeroOffsetIsAtmi) {
    const auto batch = Sampler::build_vix(params(0.3, 0.0), grid(0.1, 20000)).sample();
    const std::vector<double> offsets = {0.0};
    const auto pts = pricing::smile(batch, offsets);
    ASSERT_EQ(pts.size(), 1u);
    ASSERT_TRUE(pts[0].ok);
    EXPECT_DOUBLE_EQ(pts[0].implied_vol, pricing::atmi(batch).vol);
}

TEST(Smile, PricesMonotoneAndFailuresAreLocal) {
    const auto batch = Sampler::build_vix(params(0.3, 0.0, 0.5, 3.0, 1.0), grid(0.1, 20000)).sample();
    const std::vector<double> offsets = {-0.1, -0.05, 0.0, 0.05, 0.1, 5.0};
    const auto pts = pricing::smile(batch, offsets);
    ASSERT_EQ(pts.size(), offsets.size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        EXPECT_LE(pts[i].price.value, pts[i - 1].price.value);
        EXPECT_GT(pts[i].strike, pts[i - 1].strike);
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        EXPECT_TRUE(pts[i].ok) << pts[i].error;
        EXPECT_GT(pts[i].implied_vol, 0.0);
    }
    EXPECT_FALSE(pts.back().ok);
    EXPECT_EQ(pts.back().error_code, ErrorCode::OutOfBounds);
}

TEST(Smile, SymmetricAtTinyMaturityForLognormal) {
    const auto batch = Sampler::build_vix(params(0.5, 0.0), grid(1e-4, 100000)).sample();
    const std::vector<double> offsets = {-0.01, 0.01};
    const auto pts = pricing::smile(batch, offsets);
    const auto skew = pricing::atmi_skew(batch, 0.01);
    EXPECT_LE(std::abs(pts[1].implied_vol - pts[0].implied_vol), 3 * 2 * 0.01 * skew.std_error + 1e-12);
}

TEST(AtmiSkew, RequiresEnoughPaths) {
    const std::vector<double> s = {1.0, 2.0, 3.0};
    EXPECT_EQ(code_of([&] { pricing::atmi_skew(s, 0.1); }), ErrorCode::Degenerate);
    const auto batch = Sampler::build_vix(params(0.3, 0.0), grid(0.1, 1000)).sample();
    EXPECT_EQ(code_of([&] { pricing::atmi_skew(batch, 0.0); }), ErrorCode::Domain);
}

TEST(AtmiSkew, StepHalvingWithinNoise) {
    const auto batch = Sampler::build_vix(params(0.3, 0.0, 0.5, 3.0, 1.0), grid(0.1, 100000)).sample();
    const auto a = pricing::atmi_skew(batch, 0.01);
    const auto b = pricing::atmi_skew(batch, 0.005);
    EXPECT_LE(std::abs(a.skew - b.skew), std::hypot(a.std_error, b.std_error));
    EXPECT_NEAR(a.skew, (a.vol_plus - a.vol_minus) / 0.02, 1e-12);
}

TEST(AtmiSkew, SignMatchesLimitForMixtures) {
    for (double gamma : {0.25, 0.5}) {
        for (auto [nu, eta] : {std::pair{3.0, 1.0}, std::pair{2.0, 0.5}}) {
            const auto p = params(0.3, 0.0, gamma, nu, eta);
            const double limit = asymptotics::vix_skew_limit(p, 30.0 / 365.0).value;
            const auto batch = Sampler::build_vix(p, grid(1e-4, 100000)).sample();
            const auto skew = pricing::atmi_skew(batch);
            EXPECT_EQ(std::signbit(skew.skew), std::signbit(limit)) << "gamma=" << gamma << " nu=" << nu;
        }
    }
}
