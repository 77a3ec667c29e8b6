#include "vixsmile/bs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vixsmile/error.hpp"
#include "vixsmile/specfun.hpp"

namespace vixsmile::bs {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kInitialUpperTotalVol = 10.0;
constexpr double kMaxTotalVol = 80.0;

// Call price as a function of the total standard deviation s = vol * sqrt(T).
double price_from_total_vol(double x, double k, double s) {
    if (s == 0.0) {
        return std::max(std::exp(x) - std::exp(k), 0.0);
    }
    if (x == k) {
        // e^x (N(s/2) - N(-s/2)) without the cancellation.
        return std::exp(x) * std::erf(s / (2.0 * std::numbers::sqrt2));
    }
    const double d_plus = (x - k) / s + 0.5 * s;
    const double d_minus = d_plus - s;
    return std::exp(x) * specfun::normal_cdf(d_plus) - std::exp(k) * specfun::normal_cdf(d_minus);
}

double vega_from_total_vol(double x, double k, double s) {
    const double d_plus = (x - k) / s + 0.5 * s;
    return std::exp(x) * specfun::normal_pdf(d_plus);
}

}  // namespace

void BsQuote::validate() const {
    require(std::isfinite(log_forward) && std::isfinite(log_strike), ErrorCode::Domain,
            "BsQuote: log-forward and log-strike must be finite");
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "BsQuote: maturity must be positive");
    require(std::isfinite(vol) && vol >= 0.0, ErrorCode::Domain, "BsQuote: vol must be non-negative");
}

double bs_price(const BsQuote& q) {
    q.validate();
    return price_from_total_vol(q.log_forward, q.log_strike, q.vol * std::sqrt(q.maturity));
}

double bs_vega(const BsQuote& q) {
    q.validate();
    const double sqrt_t = std::sqrt(q.maturity);
    if (q.vol == 0.0) {
        return q.log_forward == q.log_strike ? std::exp(q.log_forward) * sqrt_t / std::sqrt(2.0 * std::numbers::pi)
                                             : 0.0;
    }
    return vega_from_total_vol(q.log_forward, q.log_strike, q.vol * sqrt_t) * sqrt_t;
}

double implied_vol(double price, double log_forward, double log_strike, double maturity) {
    require(std::isfinite(price), ErrorCode::Domain, "implied_vol: price must be finite");
    require(std::isfinite(log_forward) && std::isfinite(log_strike), ErrorCode::Domain,
            "implied_vol: log-forward and log-strike must be finite");
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "implied_vol: maturity must be positive");

    const double x = log_forward;
    const double k = log_strike;
    const double lower = std::max(std::exp(x) - std::exp(k), 0.0);
    const double upper = std::exp(x);
    if (!(price > lower && price < upper)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "implied_vol: price " << price << " outside the no-arbitrage bracket (" << lower << ", " << upper
            << ")";
        throw Error(ErrorCode::OutOfBounds, msg.str());
    }

    // The search runs on the total standard deviation s = vol sqrt(T); price is increasing in s.
    double lo = 0.0;
    double hi = kInitialUpperTotalVol;
    while (price_from_total_vol(x, k, hi) < price) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxTotalVol) {
            throw Error(ErrorCode::Convergence, "implied_vol: price too close to the upper bound to invert");
        }
    }

    double s = std::sqrt(2.0 * std::numbers::pi) * (price - lower) / upper;
    if (!(s > lo && s < hi)) {
        s = 0.5 * (lo + hi);
    }

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double diff = price_from_total_vol(x, k, s) - price;
        if (diff == 0.0) {
            return s / std::sqrt(maturity);
        }
        if (diff > 0.0) {
            hi = s;
        } else {
            lo = s;
        }
        const double vega = vega_from_total_vol(x, k, s);
        double next = vega > 0.0 ? s - diff / vega : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - s) <= 1e-15 * next || hi - lo <= 4e-16 * hi) {
            return next / std::sqrt(maturity);
        }
        s = next;
    }
    throw Error(ErrorCode::Convergence, "implied_vol: no convergence after 200 iterations");
}

double atm_implied_vol(double price, double forward, double maturity) {
    require(std::isfinite(forward) && forward > 0.0, ErrorCode::Domain, "atm_implied_vol: forward must be positive");
    const double x = std::log(forward);
    return implied_vol(price, x, x, maturity);
}

}  // namespace vixsmile::bs
