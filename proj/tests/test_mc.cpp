#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "vixsmile/error.hpp"
#include "vixsmile/mc.hpp"
#include "vixsmile/pricing.hpp"

using namespace vixsmile;
using mc::Sampler;
using mc::SimGrid;
using model::ModelParams;

namespace {

ModelParams params(double H, double beta, double gamma = 1.0, double nu = 2.0, double eta = 0.0) {
    ModelParams p;
    p.hurst = H;
    p.beta = beta;
    p.gamma = gamma;
    p.nu = nu;
    p.eta = eta;
    return p;
}

SimGrid grid(double T, std::size_t n_inner = 16, std::size_t n_paths = 20000) {
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

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(SimGrid, Validation) {
    EXPECT_NO_THROW(SimGrid{}.validate());
    EXPECT_EQ(code_of([] { grid(0.1, 1).validate(); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { grid(0.0).validate(); }), ErrorCode::Domain);
    EXPECT_EQ(code_of([] { grid(0.1, 8, 0).validate(); }), ErrorCode::InvalidArgument);
}

TEST(VixSampler, SabrCovarianceIsMaturity) {
    const Sampler s = Sampler::build_vix(params(0.5, 0.0), grid(0.3, 2));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_NEAR(s.covariance(i, j), 0.3, 1e-14);
        }
    }
}

TEST(VixSampler, CovarianceMatchesOracle) {
    const double T = 0.1;
    const Sampler s = Sampler::build_vix(params(0.3, 0.0), grid(T, 8));
    const auto nodes = s.nodes();
    ASSERT_EQ(nodes.size(), 8u);
    EXPECT_DOUBLE_EQ(nodes.front(), T);
    EXPECT_DOUBLE_EQ(nodes.back(), T + 30.0 / 365.0);
    boost::math::quadrature::tanh_sinh<double> ts;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const double si = nodes[i], sj = nodes[j];
            const double ref = ts.integrate([&](double u) { return std::pow((si - u) * (sj - u), -0.2); }, 0.0, T, 1e-14);
            EXPECT_NEAR(s.covariance(i, j), ref, 1e-7) << i << "," << j;
        }
    }
    EXPECT_EQ(code_of([&] { s.covariance(8, 0); }), ErrorCode::OutOfBounds);
}

TEST(VixSampler, FlatWithoutVolOfVol) {
    const Sampler s = Sampler::build_vix(params(0.3, 0.0, 1.0, 0.0), grid(0.1, 8, 100));
    for (double x : s.sample().samples) {
        EXPECT_NEAR(x, 0.2, 1e-15);
    }
}

TEST(VixSampler, DegeneratesAtTinyMaturity) {
    const auto batch = Sampler::build_vix(params(0.3, 0.0), grid(1e-8, 16, 20000)).sample();
    const auto est = mc::estimate_mean(batch);
    EXPECT_NEAR(est.mean, 0.2, 1e-3);
    EXPECT_LT(est.std_error * std::sqrt(static_cast<double>(est.n)), 0.01);
}

TEST(RvSampler, FlatWithoutVolOfVol) {
    const Sampler s = Sampler::build_rv(params(0.2, 1.0, 0.5, 0.0, 0.0), grid(0.1, 8, 100));
    for (double x : s.sample().samples) {
        EXPECT_NEAR(x, 0.04, 1e-16);
    }
    const auto est = mc::estimate_mean(s.sample());
    EXPECT_NEAR(est.mean, 0.04, 1e-16);
    EXPECT_NEAR(est.std_error, 0.0, 1e-16);
}

TEST(RvSampler, NodesAndVariances) {
    const auto p = params(0.3, 1.0);
    const Sampler s = Sampler::build_rv(p, grid(0.2, 4));
    const auto nodes = s.nodes();
    ASSERT_EQ(nodes.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(nodes[i], 0.05 * (i + 1), 1e-15);
        EXPECT_NEAR(s.node_variances()[i], model::kernel_variance(p, nodes[i]), 1e-14);
    }
}

TEST(RvSampler, MeanIsInitialVariance) {
    for (double H : {0.1, 0.3, 0.5}) {
        for (double beta : {0.0, 2.0}) {
            for (double T : {0.01, 0.5}) {
                const auto batch = Sampler::build_rv(params(H, beta, 0.5, 2.0, 0.5), grid(T, 16, 40000)).sample();
                const auto est = mc::estimate_mean(batch);
                EXPECT_LE(std::abs(est.mean - 0.04), 4 * est.std_error) << "H=" << H << " beta=" << beta << " T=" << T;
            }
        }
    }
}

TEST(Samplers, Positivity) {
    for (double H : {0.05, 0.3}) {
        const auto vix = Sampler::build_vix(params(H, 0.0, 0.5, 4.0, 0.5), grid(1.0, 16, 20000)).sample();
        const auto rv = Sampler::build_rv(params(H, 0.0, 0.5, 4.0, 0.5), grid(1.0, 16, 20000)).sample();
        EXPECT_GT(*std::min_element(vix.samples.begin(), vix.samples.end()), 0.0);
        EXPECT_GT(*std::min_element(rv.samples.begin(), rv.samples.end()), 0.0);
    }
}

TEST(Samplers, NodeMomentsAreMartingale) {
    for (auto build : {&Sampler::build_vix, &Sampler::build_rv}) {
        const Sampler s = build(params(0.1, 0.5, 0.3, 2.0, 0.8), grid(0.25, 12));
        const auto moments = s.node_moments(40000, 5, 0);
        ASSERT_EQ(moments.size(), 12u);
        for (const auto& m : moments) {
            EXPECT_LE(std::abs(m.mean - 0.04), 4 * m.std_error);
        }
    }
}

TEST(Samplers, DeterministicAcrossWorkers) {
    auto g = grid(0.1, 16, 10000);
    g.chunk_size = 1000;
    for (auto build : {&Sampler::build_vix, &Sampler::build_rv}) {
        const Sampler s = build(params(0.2, 0.0), g);
        const auto ref = s.sample(1).samples;
        for (unsigned w : {2u, 3u, 8u}) {
            EXPECT_TRUE(bitwise_equal(ref, s.sample(w).samples)) << "workers=" << w;
        }
        EXPECT_TRUE(bitwise_equal(ref, s.sample(g.n_paths, g.seed, 4).samples));
        EXPECT_FALSE(bitwise_equal(ref, s.sample(g.n_paths, g.seed + 1, 1).samples));
        const auto m1 = s.node_moments(10000, 3, 1);
        const auto m8 = s.node_moments(10000, 3, 8);
        for (std::size_t i = 0; i < m1.size(); ++i) {
            EXPECT_EQ(m1[i].mean, m8[i].mean);
            EXPECT_EQ(m1[i].std_error, m8[i].std_error);
        }
    }
}

TEST(Samplers, StderrHalvesUnderFourTimesPaths) {
    const Sampler s = Sampler::build_vix(params(0.3, 0.0), grid(0.1, 8));
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        const double e1 = mc::estimate_mean(s.sample(5000, 100 + rep, 0)).std_error;
        const double e4 = mc::estimate_mean(s.sample(20000, 200 + rep, 0)).std_error;
        EXPECT_GE(e4 / e1, 0.4);
        EXPECT_LE(e4 / e1, 0.6);
    }
}

// The ATM price moves by less than two standard errors of the difference when the grid doubles.
TEST(Samplers, GridRefinement) {
    for (auto build : {&Sampler::build_vix, &Sampler::build_rv}) {
        const auto coarse = build(params(0.3, 0.0), grid(0.1, 64, 200000)).sample();
        const auto fine = build(params(0.3, 0.0), grid(0.1, 128, 200000)).sample();
        const auto a = pricing::price_call(coarse, mc::estimate_mean(coarse).mean);
        const auto b = pricing::price_call(fine, mc::estimate_mean(fine).mean);
        EXPECT_LE(std::abs(a.value - b.value), 2 * std::hypot(a.std_error, b.std_error))
            << mc::underlying_name(coarse.kind);
    }
}

TEST(EstimateMean, ConstantBatch) {
    const std::vector<double> c(10, 3.5);
    const auto est = mc::estimate_mean(c);
    EXPECT_EQ(est.mean, 3.5);
    EXPECT_EQ(est.std_error, 0.0);
    EXPECT_EQ(est.n, 10u);
    const std::vector<double> one = {1.0};
    EXPECT_EQ(code_of([&] { mc::estimate_mean(one); }), ErrorCode::Degenerate);
}

TEST(PairwiseSum, MatchesNaiveOnIntegers) {
    std::vector<double> v(1001);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    EXPECT_EQ(mc::pairwise_sum(v), 500500.0);
}
