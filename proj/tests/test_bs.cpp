#include <cmath>

#include <gtest/gtest.h>

#include "vixsmile/bs.hpp"
#include "vixsmile/error.hpp"
#include "vixsmile/specfun.hpp"

using namespace vixsmile;
using bs::BsQuote;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

// Bisection on the ATM identity 2N(sigma sqrt(T) / 2) - 1 = price.
double atm_bisection(double price, double T) {
    double lo = 0.0, hi = 20.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (2 * specfun::normal_cdf(0.5 * mid * std::sqrt(T)) - 1 < price ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(BsPrice, AtmIdentity) {
    EXPECT_NEAR(bs::bs_price({0.0, 0.0, 1.0, 0.2}), 2 * specfun::normal_cdf(0.1) - 1, 1e-15);
    EXPECT_NEAR(bs::bs_price({0.0, 0.0, 1.0, 0.2}), 0.0796557, 1e-7);
}

TEST(BsPrice, ZeroVolIsIntrinsic) {
    EXPECT_NEAR(bs::bs_price({0.0, -0.1, 1.0, 0.0}), 1 - std::exp(-0.1), 1e-15);
    EXPECT_EQ(bs::bs_price({0.0, 0.1, 1.0, 0.0}), 0.0);
}

TEST(BsPrice, LargeTotalVolApproachesForward) { EXPECT_NEAR(bs::bs_price({0.0, 0.0, 1.0, 20.0}), 1.0, 1e-6); }

TEST(BsPrice, StrictlyIncreasingInVol) {
    for (double k : {-0.3, 0.0, 0.2}) {
        const double intrinsic = std::max(1 - std::exp(k), 0.0);
        double prev = bs::bs_price({0.0, k, 0.5, 0.01});
        for (int i = 2; i <= 300; ++i) {
            const double p = bs::bs_price({0.0, k, 0.5, 0.01 * i});
            // Time value below double resolution cannot grow visibly.
            if (prev - intrinsic > 1e-13) {
                EXPECT_GT(p, prev) << "k=" << k << " i=" << i;
            } else {
                EXPECT_GE(p, prev) << "k=" << k << " i=" << i;
            }
            prev = p;
        }
    }
}

TEST(BsPrice, DomainErrors) {
    EXPECT_EQ(code_of([] { bs::bs_price({0.0, 0.0, 0.0, 0.2}); }), ErrorCode::Domain);
    EXPECT_EQ(code_of([] { bs::bs_price({0.0, NAN, 1.0, 0.2}); }), ErrorCode::Domain);
}

TEST(BsVega, MatchesCentralDifference) {
    for (double k : {-0.2, 0.0, 0.15}) {
        for (double s : {0.1, 0.5, 1.5}) {
            const double h = 1e-5;
            const double fd = (bs::bs_price({0.1, k, 0.7, s + h}) - bs::bs_price({0.1, k, 0.7, s - h})) / (2 * h);
            const double v = bs::bs_vega({0.1, k, 0.7, s});
            EXPECT_NEAR(fd / v, 1.0, 1e-6) << "k=" << k << " s=" << s;
        }
    }
}

TEST(ImpliedVol, InvertsAtmIdentity) {
    EXPECT_NEAR(bs::implied_vol(2 * specfun::normal_cdf(0.1) - 1, 0.0, 0.0, 1.0), 0.2, 1e-10);
}

TEST(ImpliedVol, BisectionOracle) {
    const double s = bs::implied_vol(0.05, 0.0, 0.0, 0.25);
    EXPECT_NEAR(s, atm_bisection(0.05, 0.25), 1e-10);
    EXPECT_NEAR(s, 0.2508, 1e-4);
}

TEST(ImpliedVol, BoundaryPricesAreOutOfBounds) {
    EXPECT_EQ(code_of([] { bs::implied_vol(1 - std::exp(-0.1), 0.0, -0.1, 1.0); }), ErrorCode::OutOfBounds);
    EXPECT_EQ(code_of([] { bs::implied_vol(1.0, 0.0, 0.0, 1.0); }), ErrorCode::OutOfBounds);
    EXPECT_EQ(code_of([] { bs::atm_implied_vol(0.0, 2.0, 1.0); }), ErrorCode::OutOfBounds);
}

TEST(ImpliedVol, RoundTripGrid) {
    for (double T : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0}) {
        for (double s : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.5, 5.0}) {
            for (double k : {-0.05, 0.0, 0.05}) {
                const double p = bs::bs_price({0.0, k, T, s});
                if (p - std::max(1 - std::exp(k), 0.0) < 1e-13) continue;  // below double resolution
                const double iv = bs::implied_vol(p, 0.0, k, T);
                EXPECT_NEAR(bs::bs_price({0.0, k, T, iv}), p, 1e-12) << "T=" << T << " s=" << s << " k=" << k;
                if (bs::bs_vega({0.0, k, T, s}) > 1e-3) {
                    EXPECT_NEAR(iv, s, 1e-10) << "T=" << T << " s=" << s << " k=" << k;
                }
            }
            const double p = bs::bs_price({0.0, 0.0, T, s});
            EXPECT_NEAR(bs::atm_implied_vol(p, 1.0, T), s, 1e-10) << "T=" << T << " s=" << s;
        }
    }
}

TEST(AtmImpliedVol, ScaleInvariance) {
    EXPECT_NEAR(bs::atm_implied_vol(2 * (2 * specfun::normal_cdf(0.05) - 1), 2.0, 1.0), 0.1, 1e-12);
    const double p = bs::bs_price({std::log(0.2), std::log(0.2), 1.0 / 12, 0.8});
    EXPECT_NEAR(bs::atm_implied_vol(p, 0.2, 1.0 / 12), 0.8, 1e-10);
    const double base = bs::atm_implied_vol(p, 0.2, 1.0 / 12);
    for (double c : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(bs::atm_implied_vol(c * p, c * 0.2, 1.0 / 12), base, 1e-12) << "c=" << c;
    }
}
