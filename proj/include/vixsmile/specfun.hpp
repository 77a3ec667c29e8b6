#pragma once

namespace vixsmile::specfun {

/// Lower incomplete gamma function gamma(a, x) = int_0^x t^(a-1) e^(-t) dt
/// (unregularized). Requires a > 0 and x >= 0.
double lower_incomplete_gamma(double a, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) on the branch z <= 0 with c > b > 0,
/// evaluated through the Euler integral representation.
double gauss_2f1(double a, double b, double c, double z);

double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace vixsmile::specfun
