#pragma once

#include "sine_moments/numeric.hpp"

namespace sine_moments {

/// Principal branch of log Gamma(z): analytic off the negative real axis and
/// real on the positive real axis. Lanczos (g = 607/128, 15 terms) for
/// Re z >= 1/2, reflection below.
/// Throws PoleError within 1e-14 of a non-positive integer.
Complex ln_gamma(Complex z);

/// chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2), the factor in
/// zeta(s) = chi(s) zeta(1-s). Zero at s = 0, -2, -4, ...; throws PoleError at
/// s = 1, 3, 5, ...
Complex chi(Complex s);

/// Riemann-Siegel theta: the continuous branch of -arg(chi(1/2 + it)) / 2 with
/// theta(0) = 0. Odd in t.
double theta(double t);

/// Asymptotic expansion t/2 log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3).
/// Cross-check only; accurate for t >~ 10.
double theta_asymptotic(double t);

}  // namespace sine_moments
