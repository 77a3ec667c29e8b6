#pragma once

#include <cstddef>
#include <functional>

namespace vixsmile {

/// Control parameters for adaptive quadrature.
///
/// A power-law endpoint singularity |t - endpoint|^alpha with alpha in (-1, 0]
/// may be declared on either side. The integrator then works in the variable
/// w = |t - endpoint|^(alpha + 1), where the integrand is bounded.
///
/// Nodes very close to a right-hand singular endpoint reach the integrand as t values
/// that may round onto hi; for alpha near -1, integrate in an offset variable instead.
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    std::size_t max_subdivisions = 2000;
    bool singular_left = false;
    bool singular_right = false;
    double singular_exponent = 0.0;

    void validate() const;

    static QuadSpec with_tolerances(double abs_tol, double rel_tol);
    QuadSpec& left_singular(double exponent);
    QuadSpec& right_singular(double exponent);
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (10/21) integration of f over [lo, hi].
///
/// Throws ToleranceError when the budget of subdivisions is exhausted, and a
/// Domain error when the integrand is not finite or the refinement shows an
/// undeclared non-integrable blow-up at an endpoint.
QuadResult integrate_detailed(const Integrand& f, double lo, double hi, const QuadSpec& spec = {});

inline double integrate(const Integrand& f, double lo, double hi, const QuadSpec& spec = {}) {
    return integrate_detailed(f, lo, hi, spec).value;
}

}  // namespace vixsmile
