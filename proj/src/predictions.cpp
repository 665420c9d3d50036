#include "sine_moments/predictions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "sine_moments/errors.hpp"

namespace sine_moments {

std::string_view to_string(PredictionMethod method) {
  switch (method) {
    case PredictionMethod::closed_form: return "closed_form";
    case PredictionMethod::det_ratio: return "det_ratio";
    case PredictionMethod::perm_sum: return "perm_sum";
    case PredictionMethod::confluent_limit: return "confluent_limit";
  }
  return "unknown";
}

double sinc_s(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double kernel_t(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.5) {
    // sum_{k>=2} (-1)^k 2^{2k-1} x^{2k-4} / (2k)!
    double term = 1.0 / 3.0;
    double sum = term;
    for (int k = 3; k <= 14; ++k) {
      term *= -4.0 * x2 / ((2.0 * k - 1.0) * (2.0 * k));
      sum += term;
    }
    return sum;
  }
  const double s = std::sin(x) / x;
  return (1.0 - s * s) / x2;
}

Complex theorem1_rhs(double mu, double nu) {
  const double d = mu - nu;
  return std::polar(1.0, -kPi * d) * sinc_s(kPi * d);
}

double theorem2_rhs(double mu, double nu) {
  return 1.5 / (kPi * kPi) * kernel_t(kPi * (mu - nu));
}

namespace {

double vandermonde(const std::vector<double>& x, std::size_t begin, std::size_t end) {
  double prod = 1.0;
  for (std::size_t j = begin; j < end; ++j) {
    for (std::size_t k = j + 1; k < end; ++k) prod *= kTwoPi * (x[k] - x[j]);
  }
  return prod;
}

// x = (mu, nu) joined.
Complex raw_ratio(const std::vector<double>& x) {
  const auto M = static_cast<Eigen::Index>(x.size() / 2);
  Eigen::MatrixXd K(M, M);
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index k = 0; k < M; ++k) K(j, k) = sinc_s(kPi * (x[j] - x[M + k]));
  }
  const double det = M == 1 ? K(0, 0) : K.partialPivLu().determinant();
  return det / (vandermonde(x, 0, M) * vandermonde(x, M, 2 * M));
}

}  // namespace

PredictionResult sine_kernel_ratio(const ShiftConfig& cfg) {
  cfg.validate();
  const auto M = static_cast<std::size_t>(cfg.order());
  if (M == 1) return {sinc_s(kPi * (cfg.mu[0] - cfg.nu[0])), PredictionMethod::closed_form, false};
  const auto r = evaluate_confluent(cfg.joined(), {{0, M}, {M, 2 * M}}, kRatioCoalescence, raw_ratio);
  return {r.value, r.coalesced ? PredictionMethod::confluent_limit : PredictionMethod::det_ratio,
          r.coalesced};
}

PredictionResult perm_sum(const ShiftConfig& cfg) {
  cfg.validate();
  const auto x = cfg.joined();
  if (min_separation(x) < kPermCoalescence) {
    throw CoalescenceError("perm_sum: two shifts coincide within 1e-8");
  }
  const int M = cfg.order();
  std::vector<Complex> xi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xi[i] = Complex(0.0, kTwoPi * x[i]);

  CompensatedSum<Complex> sum;
  for (const auto& sigma : shuffle_permutations(M)) {
    Complex exponent = 0.0;
    Complex denom = 1.0;
    for (int j = 0; j < M; ++j) {
      exponent += 0.5 * (xi[sigma[j]] - xi[sigma[M + j]]);
      for (int k = 0; k < M; ++k) denom *= xi[sigma[j]] - xi[sigma[M + k]];
    }
    sum += std::exp(exponent) / denom;
  }
  return {sum.value(), PredictionMethod::perm_sum, false};
}

PredictionResult conjecture_rhs(const ShiftConfig& cfg, double aM) {
  if (!(aM > 0.0)) throw std::invalid_argument("conjecture_rhs: aM must be positive");
  auto result = sine_kernel_ratio(cfg);
  double phase = 0.0;
  for (int j = 0; j < cfg.order(); ++j) phase += cfg.mu[j] - cfg.nu[j];
  result.value *= aM * std::polar(1.0, -kPi * phase);
  return result;
}

double verify_cue6(const ShiftConfig& cfg) {
  const Complex ratio = sine_kernel_ratio(cfg).value;
  const Complex perm = perm_sum(cfg).value;
  return std::abs(perm - ratio) / std::abs(ratio);
}

}  // namespace sine_moments
