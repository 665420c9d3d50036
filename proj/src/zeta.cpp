#include "sine_moments/zeta.hpp"

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "sine_moments/arithmetic.hpp"
#include "sine_moments/errors.hpp"
#include "sine_moments/special_functions.hpp"

namespace sine_moments {
namespace {

#include "rs_coefficients.inc"

// B_{2k} / (2k)! for k = 1..10.
constexpr double kBernoulliOverFactorial[10] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double rs_correction(int k, double x) {
  switch (k) {
    case 0: return horner(kRsC0, x);
    case 1: return horner(kRsC1, x);
    case 2: return horner(kRsC2, x);
    case 3: return horner(kRsC3, x);
    default: return horner(kRsC4, x);
  }
}

}  // namespace

void ZetaEvalConfig::validate() const {
  if (rs_correction_terms < 0 || rs_correction_terms > 4) {
    throw std::invalid_argument("rs_correction_terms must lie in [0, 4]");
  }
  if (!(em_cutoff >= 2.0)) throw std::invalid_argument("em_cutoff must be >= 2");
  if (em_terms < 1) throw std::invalid_argument("em_terms must be >= 1");
  if (em_bernoulli < 1 || em_bernoulli > 10) {
    throw std::invalid_argument("em_bernoulli must lie in [1, 10]");
  }
}

Complex zeta_em(Complex s, const ZetaEvalConfig& cfg) {
  if (std::abs(s - 1.0) < 1e-12) throw PoleError("zeta: pole at s = 1");
  const auto n_terms = static_cast<long>(
      std::max<double>(cfg.em_terms, std::ceil(2.0 * std::abs(s))));

  CompensatedSum<Complex> direct;
  for (long n = 1; n < n_terms; ++n) {
    direct += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double big_n = static_cast<double>(n_terms);
  const double log_n = std::log(big_n);
  const Complex n_pow = std::exp(-s * log_n);  // N^{-s}

  Complex tail = n_pow * big_n / (s - 1.0) + 0.5 * n_pow;
  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  Complex rising = s;
  Complex power = n_pow / big_n;
  const double inv_n2 = 1.0 / (big_n * big_n);
  for (int k = 1; k <= cfg.em_bernoulli; ++k) {
    tail += kBernoulliOverFactorial[k - 1] * rising * power;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power *= inv_n2;
  }
  return direct.value() + tail;
}

double riemann_siegel_z(double t, int correction_terms) {
  const double a = std::sqrt(t / kTwoPi);
  const auto n_max = static_cast<long>(std::floor(a));
  const double th = theta(t);

  // log n and n^{-1/2}, enough for t up to ~1e8
  static const auto table = [] {
    std::array<std::pair<double, double>, 4096> v{};
    for (std::size_t n = 1; n < v.size(); ++n) {
      const double dn = static_cast<double>(n);
      v[n] = {std::log(dn), 1.0 / std::sqrt(dn)};
    }
    return v;
  }();

  double main_sum = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    if (static_cast<std::size_t>(n) < table.size()) {
      const auto& [log_n, inv_sqrt] = table[n];
      main_sum += std::cos(th - t * log_n) * inv_sqrt;
    } else {
      const double dn = static_cast<double>(n);
      main_sum += std::cos(th - t * std::log(dn)) / std::sqrt(dn);
    }
  }

  const double x = (a - static_cast<double>(n_max)) - 0.5;
  double remainder = 0.0;
  double scale = 1.0;
  for (int k = 0; k <= correction_terms; ++k) {
    remainder += rs_correction(k, x) * scale;
    scale /= a;
  }
  const double sign = (n_max - 1) % 2 == 0 ? 1.0 : -1.0;
  return 2.0 * main_sum + sign * remainder / std::sqrt(a);
}

Complex zeta_critical(double t, const ZetaEvalConfig& cfg) {
  if (t < cfg.em_cutoff) return zeta_em(Complex(0.5, t), cfg);
  return riemann_siegel_z(t, cfg.rs_correction_terms) * std::polar(1.0, -theta(t));
}

double hardy_z(double t, const ZetaEvalConfig& cfg) {
  if (t >= cfg.em_cutoff) return riemann_siegel_z(t, cfg.rs_correction_terms);
  return (std::polar(1.0, theta(t)) * zeta_em(Complex(0.5, t), cfg)).real();
}

Complex zeta_one_plus(Complex s, const ZetaEvalConfig& cfg) {
  if (s == Complex(0.0, 0.0)) throw PoleError("zeta_one_plus: pole at s = 0");
  if (std::abs(s) >= 1e-3) return zeta_em(1.0 + s, cfg);
  // 1/s + sum_n (-1)^n gamma_n s^n / n!
  const Complex s2 = s * s;
  return 1.0 / s + kStieltjes[0] - kStieltjes[1] * s + 0.5 * kStieltjes[2] * s2 -
         kStieltjes[3] * s2 * s / 6.0;
}

Complex approx_s(double lambda, double t, const DivisorTable& table) {
  if (!(t > kTwoPi)) throw std::invalid_argument("approx_s: t must exceed 2 pi");
  const auto n_max = static_cast<std::uint64_t>(std::floor(t / kTwoPi));
  if (n_max > table.limit()) {
    throw SieveTooSmall("approx_s: divisor table limit " + std::to_string(table.limit()) +
                        " < " + std::to_string(n_max));
  }
  const double log_t = std::log(t);
  const double shift = kTwoPi * lambda / log_t;
  const double freq = t + shift;

  CompensatedSum<Complex> sum;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double ln = std::log(dn);
    sum += std::polar(table[n] / std::sqrt(dn), freq * ln);
  }
  const double phase = kPi / 4.0 + t * (std::log(kTwoPi / t) + 1.0) + shift * std::log(kTwoPi / t);
  return std::polar(1.0, phase) * sum.value();
}

}  // namespace sine_moments
