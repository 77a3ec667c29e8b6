#include "vixsmile/model.hpp"

#include <algorithm>
#include <cmath>

#include "vixsmile/error.hpp"
#include "vixsmile/quadrature.hpp"
#include "vixsmile/specfun.hpp"

namespace vixsmile::model {

void ModelParams::validate() const {
    require(std::isfinite(v0) && v0 > 0.0, ErrorCode::Domain, "ModelParams: v0 must be positive");
    require(std::isfinite(hurst) && hurst > 0.0 && hurst <= 0.5, ErrorCode::Domain,
            "ModelParams: Hurst parameter must lie in (0, 1/2]");
    require(std::isfinite(beta) && beta >= 0.0, ErrorCode::Domain, "ModelParams: beta must be non-negative");
    require(std::isfinite(gamma) && gamma >= 0.0 && gamma <= 1.0, ErrorCode::Domain,
            "ModelParams: gamma must lie in [0, 1]");
    require(std::isfinite(nu) && nu >= 0.0, ErrorCode::Domain, "ModelParams: nu must be non-negative");
    require(std::isfinite(eta) && eta >= 0.0, ErrorCode::Domain, "ModelParams: eta must be non-negative");
}

void HestonParams::validate() const {
    require(std::isfinite(k) && k > 0.0, ErrorCode::Domain, "HestonParams: k must be positive");
    require(std::isfinite(theta) && theta > 0.0, ErrorCode::Domain, "HestonParams: theta must be positive");
    require(std::isfinite(nu) && nu > 0.0, ErrorCode::Domain, "HestonParams: nu must be positive");
    require(std::isfinite(v0) && v0 > 0.0, ErrorCode::Domain, "HestonParams: v0 must be positive");
}

double kernel(const ModelParams& p, double lag) {
    p.validate();
    require(std::isfinite(lag) && lag > 0.0, ErrorCode::Domain, "kernel: lag must be positive");
    return std::pow(lag, p.hurst - 0.5) * std::exp(-p.beta * lag);
}

double kernel_variance(const ModelParams& p, double t) {
    p.validate();
    require(std::isfinite(t) && t >= 0.0, ErrorCode::Domain, "kernel_variance: t must be non-negative");
    if (t == 0.0) {
        return 0.0;
    }
    const double two_h = 2.0 * p.hurst;
    if (p.beta == 0.0) {
        return std::pow(t, two_h) / two_h;
    }
    return std::pow(2.0 * p.beta, -two_h) * specfun::lower_incomplete_gamma(two_h, 2.0 * p.beta * t);
}

double kernel_covariance(const ModelParams& p, double t1, double t2, double upto) {
    p.validate();
    require(std::isfinite(t1) && std::isfinite(t2) && std::isfinite(upto), ErrorCode::Domain,
            "kernel_covariance: non-finite time");
    require(t1 > 0.0 && t2 > 0.0, ErrorCode::Domain, "kernel_covariance: times must be positive");
    require(upto >= 0.0 && upto <= std::min(t1, t2), ErrorCode::Domain,
            "kernel_covariance: upto must lie in [0, min(t1, t2)]");
    if (upto == 0.0) {
        return 0.0;
    }

    // Integrate in the backward offset x = upto - u so the singular point sits at x = 0.
    const double d_near = std::min(t1, t2) - upto;
    const double d_far = std::max(t1, t2) - upto;
    const double expo = p.hurst - 0.5;
    const double beta = p.beta;
    const auto integrand = [=](double x) {
        return std::pow(d_near + x, expo) * std::pow(d_far + x, expo) * std::exp(-beta * (d_near + d_far + 2.0 * x));
    };

    QuadSpec spec = QuadSpec::with_tolerances(1e-300, 1e-12);
    spec.max_subdivisions = 4000;
    if (expo != 0.0 && d_near == 0.0) {
        spec.left_singular(d_far == 0.0 ? 2.0 * expo : expo);
    }
    return integrate(integrand, 0.0, upto, spec);
}

double wick_mixture(const ModelParams& p, double gaussian, double variance) {
    const double scale = std::sqrt(2.0 * p.hurst);
    const double a = p.nu * scale;
    const double b = p.eta * scale;
    const double first = std::exp(a * gaussian - 0.5 * a * a * variance);
    const double second = std::exp(b * gaussian - 0.5 * b * b * variance);
    return p.v0 * (second + p.gamma * (first - second));
}

double forward_variance(const ModelParams& p, double x_ts, double s, double maturity) {
    p.validate();
    require(std::isfinite(x_ts), ErrorCode::Domain, "forward_variance: Gaussian input must be finite");
    require(maturity >= 0.0 && s > maturity, ErrorCode::Domain, "forward_variance: requires s > T >= 0");
    // E_T exp(a X_s) = exp(a X_T(s) + a^2/2 int_T^s K(s,u)^2 du), so only the [0, T] part of
    // the variance survives in the Wick correction.
    const double correction = maturity == 0.0 ? 0.0 : kernel_covariance(p, s, s, maturity);
    return wick_mixture(p, x_ts, correction);
}

double malliavin_derivative(const ModelParams& p, double b_u, double var_u, double u, double s) {
    p.validate();
    require(s < u, ErrorCode::Domain, "malliavin_derivative: requires s < u");
    const double scale = std::sqrt(2.0 * p.hurst);
    const double a = p.nu * scale;
    const double b = p.eta * scale;
    const double first = std::exp(a * b_u - 0.5 * a * a * var_u);
    const double second = std::exp(b * b_u - 0.5 * b * b * var_u);
    const double sensitivity = p.v0 * (p.gamma * a * first + (1.0 - p.gamma) * b * second);
    return sensitivity * std::pow(u - s, p.hurst - 0.5) * std::exp(-p.beta * (u - s));
}

}  // namespace vixsmile::model
