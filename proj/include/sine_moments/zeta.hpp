#pragma once

#include "sine_moments/numeric.hpp"

namespace sine_moments {

class DivisorTable;

struct ZetaEvalConfig {
  /// Riemann-Siegel remainder terms C_0..C_k used (k in [0, 4]).
  int rs_correction_terms = 4;
  /// Below this height zeta_critical switches to Euler-Maclaurin.
  double em_cutoff = 30.0;
  /// Minimum number of direct Euler-Maclaurin terms.
  int em_terms = 50;
  /// Bernoulli corrections B_2..B_{2 em_bernoulli}; at most 10.
  int em_bernoulli = 10;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// zeta(s) by Euler-Maclaurin summation with N = max(em_terms, 2|s|).
/// Absolute error <= 1e-10 for |Im s| <= 1e4. Throws PoleError near s = 1.
Complex zeta_em(Complex s, const ZetaEvalConfig& cfg = {});

/// Z(t) from the Riemann-Siegel main sum plus `correction_terms + 1`
/// remainder terms. Intended for t >= 2pi.
double riemann_siegel_z(double t, int correction_terms);

/// zeta(1/2 + it). Riemann-Siegel for t >= em_cutoff, Euler-Maclaurin below.
Complex zeta_critical(double t, const ZetaEvalConfig& cfg = {});

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t.
double hardy_z(double t, const ZetaEvalConfig& cfg = {});

/// zeta(1 + s). Laurent series with Stieltjes constants for |s| < 1e-3,
/// Euler-Maclaurin otherwise. Throws PoleError at s = 0.
Complex zeta_one_plus(Complex s, const ZetaEvalConfig& cfg = {});

/// The truncated sum
///   S(lambda, t) = e^{i pi/4} (2 pi e/t)^{it} (2 pi/t)^{2 pi i lambda/log t}
///                  * sum_{n <= t/2pi} d(n) n^{-1/2 + it + 2 pi i lambda/log t}
/// whose doubled real part approximates |zeta(1/2 + it + 2 pi i lambda/log t)|^2.
/// Throws SieveTooSmall if the table stops short of floor(t/2pi).
Complex approx_s(double lambda, double t, const DivisorTable& table);

/// Stieltjes constants gamma_0..gamma_3.
inline constexpr double kStieltjes[4] = {
    0.57721566490153286061,
    -0.072815845483676724861,
    -0.0096903631928723184845,
    0.0020538344203033458662,
};

}  // namespace sine_moments
