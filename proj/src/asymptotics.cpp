#include "vixsmile/asymptotics.hpp"

#include <cmath>

#include "vixsmile/error.hpp"
#include "vixsmile/quadrature.hpp"
#include "vixsmile/specfun.hpp"

namespace vixsmile::asymptotics {

namespace {

void check_delta(double delta) {
    require(std::isfinite(delta) && delta > 0.0, ErrorCode::Domain, "window delta must be positive");
}

void check_maturity(double maturity) {
    require(std::isfinite(maturity) && maturity > 0.0, ErrorCode::Domain, "maturity must be positive");
}

void check_hurst(double hurst) {
    require(std::isfinite(hurst) && hurst > 0.0 && hurst <= 0.5, ErrorCode::Domain,
            "Hurst parameter must lie in (0, 1/2]");
}

double mixed_first(const model::ModelParams& p) {
    const double m = p.mixed_vol_of_vol();
    require(m > 0.0, ErrorCode::Degenerate, "degenerate model: gamma nu + (1 - gamma) eta must be positive");
    return m;
}

// int_0^x u^(a-1) e^(-beta u) du
double damped_power_integral(double a, double beta, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (beta == 0.0) {
        return std::pow(x, a) / a;
    }
    return std::pow(beta, -a) * specfun::lower_incomplete_gamma(a, beta * x);
}

// K(T, delta, T - x) written in the backward offset x = T - s >= 0.
double kbar_offset(double hurst, double beta, double delta, double x) {
    const double a = hurst + 0.5;
    return damped_power_integral(a, beta, x + delta) - damped_power_integral(a, beta, x);
}

// int_0^T K(T, delta, s)^2 ds
QuadResult kbar_square_integral(const model::ModelParams& p, double delta, double maturity) {
    const double hurst = p.hurst;
    const double beta = p.beta;
    const auto integrand = [=](double x) {
        const double k = kbar_offset(hurst, beta, delta, x);
        return k * k;
    };
    QuadSpec spec = QuadSpec::with_tolerances(1e-300, 1e-12);
    spec.max_subdivisions = 4000;
    return integrate_detailed(integrand, 0.0, maturity, spec);
}

AsymptoteResult make_result(FormulaId id, double value, const model::ModelParams& p, double delta,
                            double maturity, double error_bound = 0.0) {
    AsymptoteResult r;
    r.formula = id;
    r.value = value;
    r.inputs.model = p;
    r.inputs.delta = delta;
    r.inputs.maturity = maturity;
    r.quad_error_bound = error_bound;
    return r;
}

}  // namespace

const char* formula_name(FormulaId id) noexcept {
    switch (id) {
        case FormulaId::VixAtmiLimit: return "VIX_ATMI_LIMIT";
        case FormulaId::VixAtmiApprox: return "VIX_ATMI_APPROX";
        case FormulaId::VixSkewLimit: return "VIX_SKEW_LIMIT";
        case FormulaId::VixSkewApprox: return "VIX_SKEW_APPROX";
        case FormulaId::SabrVixSkew: return "SABR_VIX_SKEW";
        case FormulaId::RvAtmiLimit: return "RV_ATMI_LIMIT";
        case FormulaId::RvAtmiApprox: return "RV_ATMI_APPROX";
        case FormulaId::RvSkewLimit: return "RV_SKEW_LIMIT";
        case FormulaId::HestonVixSkewSign: return "HESTON_VIX_SKEW_SIGN";
    }
    return "UNKNOWN";
}

GJValues gj(const model::ModelParams& p, double delta) {
    p.validate();
    check_delta(delta);
    const double h = p.hurst;
    GJValues out;
    out.hurst = h;
    out.delta = delta;
    out.beta = p.beta;
    if (p.beta == 0.0) {
        out.G = std::pow(delta, 2.0 * h) / (2.0 * h);
        out.J = std::pow(delta, h + 0.5) / (h + 0.5);
    } else {
        out.G = std::pow(2.0 * p.beta, -2.0 * h) * specfun::lower_incomplete_gamma(2.0 * h, 2.0 * p.beta * delta);
        out.J = std::pow(p.beta, -h - 0.5) * specfun::lower_incomplete_gamma(h + 0.5, p.beta * delta);
    }
    return out;
}

double kbar(const model::ModelParams& p, double delta, double maturity, double s) {
    p.validate();
    check_delta(delta);
    require(std::isfinite(maturity) && maturity >= 0.0, ErrorCode::Domain, "kbar: maturity must be non-negative");
    require(s >= 0.0 && s <= maturity, ErrorCode::Domain, "kbar: s must lie in [0, T]");
    return kbar_offset(p.hurst, p.beta, delta, maturity - s);
}

AsymptoteResult vix_atmi_limit(const model::ModelParams& p, double delta) {
    const GJValues v = gj(p, delta);
    const double value = p.mixed_vol_of_vol() * std::sqrt(2.0 * p.hurst) / (2.0 * delta) * v.J;
    return make_result(FormulaId::VixAtmiLimit, value, p, delta, 0.0);
}

AsymptoteResult vix_atmi_approx(const model::ModelParams& p, double delta, double maturity) {
    p.validate();
    check_delta(delta);
    check_maturity(maturity);
    const QuadResult q = kbar_square_integral(p, delta, maturity);
    const double prefactor = p.mixed_vol_of_vol() * std::sqrt(2.0 * p.hurst) / (2.0 * delta * std::sqrt(maturity));
    const double value = prefactor * std::sqrt(q.value);
    const double bound = q.value > 0.0 ? 0.5 * value * q.abs_error / q.value : 0.0;
    return make_result(FormulaId::VixAtmiApprox, value, p, delta, maturity, bound);
}

AsymptoteResult vix_skew_limit(const model::ModelParams& p, double delta) {
    const GJValues v = gj(p, delta);
    const double m = mixed_first(p);
    const double ratio = p.mixed_vol_of_vol_sq() / m;
    const double value = 0.5 * std::sqrt(2.0 * p.hurst) * (ratio * v.G / v.J - m * v.J / delta);
    return make_result(FormulaId::VixSkewLimit, value, p, delta, 0.0);
}

double sabr_mixed_vix_skew(double gamma, double nu, double eta) {
    model::ModelParams p;
    p.hurst = 0.5;
    p.gamma = gamma;
    p.nu = nu;
    p.eta = eta;
    p.validate();
    const double m = mixed_first(p);
    return 0.5 * (p.mixed_vol_of_vol_sq() / m - m);
}

AsymptoteResult vix_skew_approx(const model::ModelParams& p, double delta, double maturity) {
    p.validate();
    check_delta(delta);
    check_maturity(maturity);
    const double m = mixed_first(p);
    const double ratio = p.mixed_vol_of_vol_sq() / m;
    const double hurst = p.hurst;
    const double beta = p.beta;
    const double expo = hurst - 0.5;

    const QuadResult q = kbar_square_integral(p, delta, maturity);

    // The second-order term is half the integral over r in [T, T+delta] of
    // (int_0^T K(T,delta,s) (r-s)^(H-1/2) e^(-beta (r-s)) ds)^2, written with y = r - T, x = T - s.
    const auto inner = [=](double y) {
        const auto f = [=](double x) {
            return kbar_offset(hurst, beta, delta, x) * std::pow(y + x, expo) * std::exp(-beta * (y + x));
        };
        QuadSpec spec = QuadSpec::with_tolerances(1e-300, 1e-11);
        spec.max_subdivisions = 4000;
        if (y == 0.0 && expo != 0.0) {
            spec.left_singular(expo);
        }
        return integrate(f, 0.0, maturity, spec);
    };
    const auto outer = [&](double y) {
        const double g = inner(y);
        return g * g;
    };
    QuadSpec outer_spec = QuadSpec::with_tolerances(1e-300, 1e-10);
    outer_spec.max_subdivisions = 4000;
    const QuadResult a1_raw = integrate_detailed(outer, 0.0, delta, outer_spec);

    const double a1 = 0.5 * a1_raw.value;
    const double a2 = 0.5 * q.value * q.value;
    const double scale = std::sqrt(2.0 * hurst) / (std::sqrt(maturity) * std::pow(q.value, 1.5));
    const double value = scale * (ratio * a1 - m * a2 / delta);
    const double bound = scale * (ratio * 0.5 * a1_raw.abs_error + m * q.value * q.abs_error / delta) +
                         1.5 * std::abs(value) * q.abs_error / q.value;
    return make_result(FormulaId::VixSkewApprox, value, p, delta, maturity, bound);
}

AsymptoteResult rv_atmi_limit(const model::ModelParams& p) {
    p.validate();
    const double h = p.hurst;
    const double value = p.mixed_vol_of_vol() * std::sqrt(2.0 * h) / ((h + 0.5) * std::sqrt(2.0 * h + 2.0));
    return make_result(FormulaId::RvAtmiLimit, value, p, 0.0, 0.0);
}

AsymptoteResult rv_atmi_approx(const model::ModelParams& p, double maturity) {
    p.validate();
    check_maturity(maturity);
    const double h = p.hurst;
    if (p.beta == 0.0) {
        const double value = rv_atmi_limit(p).value * std::pow(maturity, h - 0.5);
        return make_result(FormulaId::RvAtmiApprox, value, p, 0.0, maturity);
    }
    const double a = h + 0.5;
    const double beta = p.beta;
    const auto integrand = [=](double x) {
        const double k = damped_power_integral(a, beta, x);
        return k * k;
    };
    QuadSpec spec = QuadSpec::with_tolerances(1e-300, 1e-12);
    spec.max_subdivisions = 4000;
    const QuadResult q = integrate_detailed(integrand, 0.0, maturity, spec);
    const double value = p.mixed_vol_of_vol() * std::sqrt(2.0 * h) / std::pow(maturity, 1.5) * std::sqrt(q.value);
    const double bound = q.value > 0.0 ? 0.5 * value * q.abs_error / q.value : 0.0;
    return make_result(FormulaId::RvAtmiApprox, value, p, 0.0, maturity, bound);
}

double calI(double hurst, double probe) {
    check_hurst(hurst);
    require(std::isfinite(probe) && probe >= 1e-5 && probe <= 1e-2, ErrorCode::Domain,
            "calI: probe maturity must lie in [1e-5, 1e-2]");
    const double a = 0.5 - hurst;
    const double b = hurst + 0.5;
    const double c = hurst + 1.5;
    const double expo = hurst - 0.5;

    // sigma = T - s, y = u - s; then T - u = sigma - y and (T-u)/(s-u) = -(sigma - y)/y.
    const auto inner = [=](double sigma) {
        const auto f = [=](double y) {
            const double rest = sigma - y;
            return std::pow(rest, 2.0 * hurst + 1.0) * std::pow(y, expo) * specfun::gauss_2f1(a, b, c, -rest / y);
        };
        QuadSpec spec = QuadSpec::with_tolerances(1e-300, 1e-9);
        spec.max_subdivisions = 4000;
        if (expo != 0.0) {
            spec.left_singular(expo);
        }
        return integrate(f, 0.0, sigma, spec);
    };
    const auto outer = [=](double sigma) { return std::pow(sigma, hurst + 0.5) * inner(sigma) / (hurst + 0.5); };
    QuadSpec spec = QuadSpec::with_tolerances(1e-300, 1e-8);
    spec.max_subdivisions = 4000;
    const double total = integrate(outer, 0.0, probe, spec);
    return total / std::pow(probe, 4.0 * hurst + 3.0);
}

AsymptoteResult rv_skew_limit(const model::ModelParams& p, double probe) {
    p.validate();
    const double m = mixed_first(p);
    const double h = p.hurst;
    const double ratio = p.mixed_vol_of_vol_sq() / m;
    const double cal = calI(h, probe);
    const double value = std::sqrt(2.0 * h) * (ratio * cal * std::pow(2.0 * h + 2.0, 1.5) * (h + 0.5) -
                                               m / ((2.0 * h + 1.0) * std::sqrt(2.0 * h + 2.0)));
    return make_result(FormulaId::RvSkewLimit, value, p, 0.0, probe);
}

HestonSkewSign heston_vix_skew_sign(const model::HestonParams& p, double delta) {
    p.validate();
    check_delta(delta);
    const double x = p.k * delta;
    const double e = -std::expm1(-x);
    HestonSkewSign out;
    out.value = p.nu * p.nu * e / (4.0 * x) * (1.0 - 2.0 * e / x);
    out.sign = out.value > 0.0 ? 1 : (out.value < 0.0 ? -1 : 0);
    out.feller_satisfied = p.feller_satisfied();
    return out;
}

double vix_atmi_limit_general(double f1, double v0, double hurst, double beta, double delta) {
    model::ModelParams p;
    p.v0 = v0;
    p.hurst = hurst;
    p.beta = beta;
    require(std::isfinite(f1), ErrorCode::Domain, "f'(Y0) must be finite");
    return f1 / (2.0 * delta * v0) * gj(p, delta).J;
}

double vix_atmi_approx_general(double f1, double v0, double hurst, double beta, double delta, double maturity) {
    model::ModelParams p;
    p.v0 = v0;
    p.hurst = hurst;
    p.beta = beta;
    p.validate();
    check_delta(delta);
    check_maturity(maturity);
    require(std::isfinite(f1), ErrorCode::Domain, "f'(Y0) must be finite");
    const double q = kbar_square_integral(p, delta, maturity).value;
    return f1 / (v0 * 2.0 * delta * std::sqrt(maturity)) * std::sqrt(q);
}

double vix_skew_limit_general(double f1, double f2, double v0, double hurst, double beta, double delta) {
    model::ModelParams p;
    p.v0 = v0;
    p.hurst = hurst;
    p.beta = beta;
    require(std::isfinite(f1) && f1 != 0.0 && std::isfinite(f2), ErrorCode::Degenerate,
            "f'(Y0) must be finite and non-zero");
    const GJValues v = gj(p, delta);
    return 0.5 * (v.G / v.J * f2 / f1 - v.J / delta * f1 / v0);
}

double rv_atmi_limit_general(double f1, double v0, double hurst) {
    check_hurst(hurst);
    require(std::isfinite(v0) && v0 > 0.0, ErrorCode::Domain, "v0 must be positive");
    require(std::isfinite(f1), ErrorCode::Domain, "f'(Y0) must be finite");
    return f1 / ((hurst + 0.5) * std::sqrt(2.0 * hurst + 2.0) * v0);
}

double rv_skew_limit_general(double f1, double f2, double v0, double hurst, double probe) {
    check_hurst(hurst);
    require(std::isfinite(v0) && v0 > 0.0, ErrorCode::Domain, "v0 must be positive");
    require(std::isfinite(f1) && f1 != 0.0 && std::isfinite(f2), ErrorCode::Degenerate,
            "f'(Y0) must be finite and non-zero");
    const double cal = calI(hurst, probe);
    return f2 * cal * std::pow(2.0 * hurst + 2.0, 1.5) * (hurst + 0.5) / f1 -
           f1 / (v0 * (2.0 * hurst + 1.0) * std::sqrt(2.0 * hurst + 2.0));
}

}  // namespace vixsmile::asymptotics
