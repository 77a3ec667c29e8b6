#include "vixsmile/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "vixsmile/bs.hpp"

namespace vixsmile::pricing {

namespace {

constexpr double kDegeneratePrice = 4.0 * std::numeric_limits<double>::epsilon();

double mean_of(std::span<const double> samples) {
    require(samples.size() >= 2, ErrorCode::Degenerate, "pricing: at least two samples are required");
    return mc::pairwise_sum(samples) / static_cast<double>(samples.size());
}

double maturity_of(const mc::PathBatch& batch) { return batch.grid.maturity; }

// Implied vol with context added to inversion failures.
double invert(double price, double forward, double strike, double maturity, const char* what) {
    try {
        return bs::implied_vol(price, std::log(forward), std::log(strike), maturity);
    } catch (const Error& e) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": cannot invert price " << price << " at strike " << strike << " (forward " << forward
            << ", T " << maturity << "): " << e.what();
        throw Error(e.code(), msg.str());
    }
}

double vega_at(double vol, double forward, double strike, double maturity) {
    bs::BsQuote q;
    q.log_forward = std::log(forward);
    q.log_strike = std::log(strike);
    q.maturity = maturity;
    q.vol = vol;
    return bs::bs_vega(q);
}

struct SkewLegs {
    double minus = 0.0;
    double plus = 0.0;
    double forward = 0.0;
};

// Forward and the two implied vols from the samples in [0, n) without [skip_lo, skip_hi).
SkewLegs skew_legs(std::span<const double> samples, std::size_t skip_lo, std::size_t skip_hi, double maturity,
                   double h) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i < skip_lo || i >= skip_hi) {
            sum += samples[i];
            ++count;
        }
    }
    SkewLegs legs;
    legs.forward = sum / static_cast<double>(count);
    const double k_minus = legs.forward * std::exp(-h);
    const double k_plus = legs.forward * std::exp(h);
    double pay_minus = 0.0;
    double pay_plus = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i < skip_lo || i >= skip_hi) {
            pay_minus += std::max(samples[i] - k_minus, 0.0);
            pay_plus += std::max(samples[i] - k_plus, 0.0);
        }
    }
    pay_minus /= static_cast<double>(count);
    pay_plus /= static_cast<double>(count);
    legs.minus = invert(pay_minus, legs.forward, k_minus, maturity, "atmi_skew");
    legs.plus = invert(pay_plus, legs.forward, k_plus, maturity, "atmi_skew");
    return legs;
}

}  // namespace

PriceEstimate price_call(std::span<const double> samples, double strike) {
    require(std::isfinite(strike) && strike >= 0.0, ErrorCode::Domain, "price_call: strike must be non-negative");
    require(samples.size() >= 2, ErrorCode::Degenerate, "price_call: at least two samples are required");
    std::vector<double> payoff(samples.size());
    std::transform(samples.begin(), samples.end(), payoff.begin(),
                   [strike](double a) { return std::max(a - strike, 0.0); });
    const mc::MeanEstimate m = mc::estimate_mean(std::span<const double>(payoff));
    return PriceEstimate{m.mean, m.std_error, m.n};
}

PriceEstimate price_call(const mc::PathBatch& batch, double strike) {
    return price_call(std::span<const double>(batch.samples), strike);
}

AtmiResult atmi(std::span<const double> samples, double maturity) {
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "atmi: maturity must be positive");
    AtmiResult out;
    out.forward = mean_of(samples);
    require(out.forward > 0.0, ErrorCode::Domain, "atmi: the sample mean must be positive");
    out.price = price_call(samples, out.forward);
    if (out.price.value <= kDegeneratePrice * out.forward) {
        out.degenerate = true;
        return out;
    }
    out.vol = invert(out.price.value, out.forward, out.forward, maturity, "atmi");
    out.vol_std_error = out.price.std_error / vega_at(out.vol, out.forward, out.forward, maturity);
    return out;
}

AtmiResult atmi(const mc::PathBatch& batch) { return atmi(std::span<const double>(batch.samples), maturity_of(batch)); }

std::vector<SmilePoint> smile(std::span<const double> samples, double maturity, std::span<const double> offsets) {
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "smile: maturity must be positive");
    const double forward = mean_of(samples);
    require(forward > 0.0, ErrorCode::Domain, "smile: the sample mean must be positive");

    std::vector<SmilePoint> points(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        require(std::isfinite(offsets[i]), ErrorCode::Domain, "smile: offsets must be finite");
        points[i].log_strike_offset = offsets[i];
        points[i].strike = forward * std::exp(offsets[i]);
        points[i].price = price_call(samples, points[i].strike);
    }

    // Static arbitrage checks on the common-sample prices.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a].strike < points[b].strike; });
    const double tol = 1e-12 * forward;
    for (std::size_t j = 1; j < order.size(); ++j) {
        const SmilePoint& lo = points[order[j - 1]];
        const SmilePoint& hi = points[order[j]];
        if (hi.price.value > lo.price.value + tol) {
            throw Error(ErrorCode::Internal, "smile: call prices increase with the strike");
        }
        if (j >= 2) {
            const SmilePoint& first = points[order[j - 2]];
            const double w1 = lo.strike - first.strike;
            const double w2 = hi.strike - lo.strike;
            if (w1 > 0.0 && w2 > 0.0) {
                const double slope1 = (lo.price.value - first.price.value) / w1;
                const double slope2 = (hi.price.value - lo.price.value) / w2;
                if (slope2 < slope1 - tol / std::min(w1, w2)) {
                    throw Error(ErrorCode::Internal, "smile: call prices are not convex in the strike");
                }
            }
        }
    }

    for (SmilePoint& pt : points) {
        try {
            pt.implied_vol = invert(pt.price.value, forward, pt.strike, maturity, "smile");
            pt.vol_std_error = pt.price.std_error / vega_at(pt.implied_vol, forward, pt.strike, maturity);
            pt.ok = true;
        } catch (const Error& e) {
            pt.ok = false;
            pt.error_code = e.code();
            pt.error = e.what();
        }
    }
    return points;
}

std::vector<SmilePoint> smile(const mc::PathBatch& batch, std::span<const double> offsets) {
    return smile(std::span<const double>(batch.samples), maturity_of(batch), offsets);
}

SkewResult atmi_skew(std::span<const double> samples, double maturity, double h) {
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "atmi_skew: maturity must be positive");
    require(std::isfinite(h) && h > 0.0, ErrorCode::Domain, "atmi_skew: step must be positive");
    const std::size_t n = samples.size();
    const std::size_t g = kJackknifeBlocks;
    require(n >= 2 * g, ErrorCode::Degenerate, "atmi_skew: at least 40 samples are required for the jackknife");

    SkewResult out;
    const SkewLegs full = skew_legs(samples, n, n, maturity, h);
    out.forward = full.forward;
    out.vol_minus = full.minus;
    out.vol_plus = full.plus;
    out.skew = (full.plus - full.minus) / (2.0 * h);

    std::vector<double> reps(g);
    for (std::size_t b = 0; b < g; ++b) {
        const SkewLegs legs = skew_legs(samples, b * n / g, (b + 1) * n / g, maturity, h);
        reps[b] = (legs.plus - legs.minus) / (2.0 * h);
    }
    const double mean = std::accumulate(reps.begin(), reps.end(), 0.0) / static_cast<double>(g);
    double ss = 0.0;
    for (double r : reps) {
        ss += (r - mean) * (r - mean);
    }
    out.std_error = std::sqrt(static_cast<double>(g - 1) / static_cast<double>(g) * ss);
    return out;
}

SkewResult atmi_skew(const mc::PathBatch& batch, double h) {
    return atmi_skew(std::span<const double>(batch.samples), maturity_of(batch), h);
}

}  // namespace vixsmile::pricing
