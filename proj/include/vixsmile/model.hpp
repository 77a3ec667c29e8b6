#pragma once

namespace vixsmile::model {

/// Mixed generalized rough volatility model:
///
///   v_t = v0 (gamma W(nu sqrt(2H) B_t) + (1 - gamma) W(eta sqrt(2H) B_t)),
///   B_t = int_0^t exp(-beta (t - s)) (t - s)^(H - 1/2) dW_s,
///
/// where W(.) is the Wick exponential. A single lognormal factor is gamma = 1.
struct ModelParams {
    double v0 = 0.04;
    double hurst = 0.5;
    double beta = 0.0;
    double gamma = 1.0;
    double nu = 0.0;
    double eta = 0.0;

    void validate() const;

    /// gamma nu + (1 - gamma) eta
    double mixed_vol_of_vol() const { return gamma * nu + (1.0 - gamma) * eta; }
    /// gamma nu^2 + (1 - gamma) eta^2
    double mixed_vol_of_vol_sq() const { return gamma * nu * nu + (1.0 - gamma) * eta * eta; }
};

struct HestonParams {
    double k = 1.0;
    double theta = 0.04;
    double nu = 0.3;
    double v0 = 0.04;

    void validate() const;
    bool feller_satisfied() const { return 2.0 * k * theta > nu * nu; }
};

/// tau^(H - 1/2) exp(-beta tau), tau > 0.
double kernel(const ModelParams& p, double lag);

/// Var(B_t) = int_0^t u^(2H-1) exp(-2 beta u) du.
double kernel_variance(const ModelParams& p, double t);

/// int_0^upto K(t1, u) K(t2, u) du with upto <= min(t1, t2).
double kernel_covariance(const ModelParams& p, double t1, double t2, double upto);

/// Wick exponential mixture v0 (gamma e^(a g - a^2 var/2) + (1-gamma) e^(b g - b^2 var/2))
/// with a = nu sqrt(2H), b = eta sqrt(2H). Exact (== v0) whenever nu == eta == 0.
double wick_mixture(const ModelParams& p, double gaussian, double variance);

/// E_T[v_s] given X_T(s) = int_0^T K(s, u) dW_u, s > T >= 0.
double forward_variance(const ModelParams& p, double x_ts, double s, double maturity);

/// D_s v_u for s < u given B_u and Var(B_u).
double malliavin_derivative(const ModelParams& p, double b_u, double var_u, double u, double s);

}  // namespace vixsmile::model
