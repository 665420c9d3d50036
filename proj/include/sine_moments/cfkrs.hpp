#pragma once

#include <string_view>

#include "sine_moments/numeric.hpp"
#include "sine_moments/shifts.hpp"
#include "sine_moments/zeta.hpp"

namespace sine_moments {

enum class WmMode { zeta_factors, pole_approx };

std::string_view to_string(WmMode mode);

struct WmResult {
  double t = 0.0;
  ShiftConfig cfg;
  Complex value;
  WmMode mode = WmMode::zeta_factors;
  double aM_used = 0.0;
};

/// Shifts closer than this (across all 2M) send wm_leading through the
/// confluent procedure.
inline constexpr double kWmCoalescence = 1e-6;

/// Leading CFKRS term with A_M frozen at aM. With xi = 2 pi i (mu, nu),
/// L = log t and l = log(t / 2pi):
///   aM exp(l/(2L) sum_j (xi_{M+j} - xi_j))
///     * sum_sigma exp(l/(2L) sum_j (xi_sigma(j) - xi_sigma(M+j)))
///                 * prod_{j,k} zeta(1 + (xi_sigma(j) - xi_sigma(M+k)) / L).
/// Requires t >= 10.
WmResult wm_leading(double t, const ShiftConfig& cfg, double aM, const ZetaEvalConfig& zcfg = {});

/// wm_leading with zeta(1 + x) replaced by 1/x and l/L by 1; equal to
/// (log t)^{M^2} conjecture_rhs(cfg, aM). Throws CoalescenceError for shifts
/// within 1e-8.
WmResult wm_pole(double t, const ShiftConfig& cfg, double aM);

}  // namespace sine_moments
