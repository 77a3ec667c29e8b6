#pragma once

#include "vixsmile/model.hpp"

namespace vixsmile::asymptotics {

enum class FormulaId {
    VixAtmiLimit,
    VixAtmiApprox,
    VixSkewLimit,
    VixSkewApprox,
    SabrVixSkew,
    RvAtmiLimit,
    RvAtmiApprox,
    RvSkewLimit,
    HestonVixSkewSign,
};

const char* formula_name(FormulaId id) noexcept;

struct AsymptoteInputs {
    model::ModelParams model;
    model::HestonParams heston;
    double delta = 0.0;
    double maturity = 0.0;
};

struct AsymptoteResult {
    FormulaId formula = FormulaId::VixAtmiLimit;
    double value = 0.0;
    AsymptoteInputs inputs;
    /// Accumulated quadrature error estimate; 0 for closed forms.
    double quad_error_bound = 0.0;
};

struct GJValues {
    double G = 0.0;
    double J = 0.0;
    double hurst = 0.0;
    double delta = 0.0;
    double beta = 0.0;
};

/// G = int_0^delta u^(2H-1) e^(-2 beta u) du, J = int_0^delta u^(H-1/2) e^(-beta u) du.
GJValues gj(const model::ModelParams& p, double delta);

/// K(T, delta, s) = int_T^(T+delta) (u-s)^(H-1/2) e^(-beta (u-s)) du for 0 <= s <= T.
double kbar(const model::ModelParams& p, double delta, double maturity, double s);

// VIX options

AsymptoteResult vix_atmi_limit(const model::ModelParams& p, double delta);
AsymptoteResult vix_atmi_approx(const model::ModelParams& p, double delta, double maturity);
AsymptoteResult vix_skew_limit(const model::ModelParams& p, double delta);
AsymptoteResult vix_skew_approx(const model::ModelParams& p, double delta, double maturity);

/// Short-maturity VIX skew of the mixed SABR model (H = 1/2, beta = 0).
double sabr_mixed_vix_skew(double gamma, double nu, double eta);

// RV options. The limits are those of T^(1/2-H) times the ATMI level or skew.

AsymptoteResult rv_atmi_limit(const model::ModelParams& p);
AsymptoteResult rv_atmi_approx(const model::ModelParams& p, double maturity);
AsymptoteResult rv_skew_limit(const model::ModelParams& p, double probe = 1e-4);

/// The dimensionless constant I(H), evaluated by nested quadrature at maturity `probe`
/// and rescaled by probe^(4H+3).
double calI(double hurst, double probe = 1e-4);

// Heston

struct HestonSkewSign {
    double value = 0.0;
    int sign = 0;
    bool feller_satisfied = true;
};

/// Limit of D_s m M - m D_s M for the Heston model with v0 = theta.
HestonSkewSign heston_vix_skew_sign(const model::HestonParams& p, double delta);

// Entry points for v = f(Y) with Y the damped Volterra process of the model,
// parameterized by f'(Y0), f''(Y0) and v0 = VIX0^2.

double vix_atmi_limit_general(double f1, double v0, double hurst, double beta, double delta);
double vix_atmi_approx_general(double f1, double v0, double hurst, double beta, double delta, double maturity);
double vix_skew_limit_general(double f1, double f2, double v0, double hurst, double beta, double delta);
double rv_atmi_limit_general(double f1, double v0, double hurst);
double rv_skew_limit_general(double f1, double f2, double v0, double hurst, double probe = 1e-4);

}  // namespace vixsmile::asymptotics
