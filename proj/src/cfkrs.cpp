#include "sine_moments/cfkrs.hpp"

#include <cmath>
#include <stdexcept>

#include "sine_moments/predictions.hpp"

namespace sine_moments {

std::string_view to_string(WmMode mode) {
  return mode == WmMode::zeta_factors ? "zeta_factors" : "pole_approx";
}

namespace {

void check_inputs(double t, double aM) {
  if (!(t >= 10.0)) throw std::invalid_argument("CFKRS evaluation needs t >= 10");
  if (!(aM > 0.0)) throw std::invalid_argument("aM must be positive");
}

Complex zeta_near_one(Complex s, const ZetaEvalConfig& zcfg) {
  return std::abs(s) <= 1.0 ? zeta_one_plus(s, zcfg) : zeta_em(1.0 + s, zcfg);
}

Complex leading_raw(double t, const std::vector<double>& x, double aM,
                    const ZetaEvalConfig& zcfg) {
  const int M = static_cast<int>(x.size() / 2);
  const double L = std::log(t);
  const double weight = 0.5 * std::log(t / kTwoPi) / L;
  std::vector<Complex> xi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xi[i] = Complex(0.0, kTwoPi * x[i]);

  Complex prefactor = 0.0;
  for (int j = 0; j < M; ++j) prefactor += xi[M + j] - xi[j];

  CompensatedSum<Complex> sum;
  for (const auto& sigma : shuffle_permutations(M)) {
    Complex exponent = 0.0;
    Complex prod = 1.0;
    for (int j = 0; j < M; ++j) {
      exponent += xi[sigma[j]] - xi[sigma[M + j]];
      for (int k = 0; k < M; ++k) prod *= zeta_near_one((xi[sigma[j]] - xi[sigma[M + k]]) / L, zcfg);
    }
    sum += std::exp(weight * exponent) * prod;
  }
  return aM * std::exp(weight * prefactor) * sum.value();
}

}  // namespace

WmResult wm_leading(double t, const ShiftConfig& cfg, double aM, const ZetaEvalConfig& zcfg) {
  cfg.validate();
  check_inputs(t, aM);
  const auto x = cfg.joined();
  const auto r = evaluate_confluent(x, {{0, x.size()}}, kWmCoalescence,
                                    [&](const std::vector<double>& y) {
                                      return leading_raw(t, y, aM, zcfg);
                                    });
  return {t, cfg, r.value, WmMode::zeta_factors, aM};
}

WmResult wm_pole(double t, const ShiftConfig& cfg, double aM) {
  check_inputs(t, aM);
  const Complex sum = perm_sum(cfg).value;
  double phase = 0.0;
  for (int j = 0; j < cfg.order(); ++j) phase += cfg.mu[j] - cfg.nu[j];
  const double scale = std::pow(std::log(t), cfg.order() * cfg.order());
  return {t, cfg, aM * scale * std::polar(1.0, -kPi * phase) * sum, WmMode::pole_approx, aM};
}

}  // namespace sine_moments
