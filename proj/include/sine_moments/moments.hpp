#pragma once

#include <string_view>
#include <vector>

#include "sine_moments/numeric.hpp"
#include "sine_moments/parallel.hpp"
#include "sine_moments/shifts.hpp"
#include "sine_moments/zeta.hpp"

namespace sine_moments {

/// from_T0 integrates over [T0, T]; dyadic over [T, 2T]. Both divide by
/// T (log T)^{M^2}.
enum class Window { from_T0, dyadic };

std::string_view to_string(Window window);
Window parse_window(std::string_view text);

struct QuadraturePolicy {
  /// Gauss nodes per mean zero gap 2 pi / log t.
  double nodes_per_gap = 6.0;
  int panel_order = 16;
  long long max_nodes = 400'000'000;
  Execution exec = Execution::parallel;
  ZetaEvalConfig zeta;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct MomentEstimate {
  ShiftConfig cfg;
  double T0 = 0.0;
  double T = 0.0;
  Window window = Window::from_T0;
  Complex raw_integral;
  Complex normalized;
  Complex prediction;
  long long nodes_used = 0;
  double est_quadrature_error = 0.0;
};

inline constexpr double kDefaultT0 = 10.0;

/// prod_j zeta(1/2 + i(t + 2 pi mu_j / log t)) * prod_j conj zeta(1/2 + i(t + 2 pi nu_j / log t)).
/// Each distinct shift is evaluated once.
Complex moment_integrand(double t, const ShiftConfig& cfg, const ZetaEvalConfig& zcfg = {});

/// Composite Gauss-Legendre integral of moment_integrand. Panels of width
/// pi panel_order / (nodes_per_gap log s) start at s, so every panel holds
/// nodes_per_gap nodes per mean gap. The prediction is conjecture_rhs with
/// `aM`; aM <= 0 means a_m(M, 1e6) (exactly 1 for M = 1).
/// Throws BudgetExceeded when the node count would pass policy.max_nodes.
MomentEstimate shifted_moment(const ShiftConfig& cfg, double T0, double T, Window window,
                              const QuadraturePolicy& policy = {}, double aM = 0.0);

/// One estimate per entry of the increasing T_list. from_T0 scans integrate
/// [T0, max T] once with panel breaks at every T and reuse the prefix sums.
std::vector<MomentEstimate> moment_scan(const ShiftConfig& cfg, double T0,
                                        const std::vector<double>& T_list, Window window,
                                        const QuadraturePolicy& policy = {}, double aM = 0.0);

struct RatioRow {
  double delta = 0.0;
  Complex empirical;
  Complex predicted;
  double deviation = 0.0;
};

/// Shape test M(delta, T) / M(0, T). M = 1 uses mu = (delta), nu = (0) with
/// predicted S(pi delta) e^{-i pi delta}; M = 2 uses mu = nu = (0, delta) with
/// predicted 3 T(pi delta).
std::vector<RatioRow> ratio_curve(int M, const std::vector<double>& delta_list, double T,
                                  const QuadraturePolicy& policy = {}, double T0 = kDefaultT0);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

}  // namespace sine_moments
