#include "sine_moments/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sine_moments/errors.hpp"

namespace sine_moments {
namespace {

constexpr double kLanczosG = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128.
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

const double kHalfLogTwoPi = 0.5 * std::log(kTwoPi);
const double kLogPi = std::log(kPi);

bool near_nonpositive_integer(Complex z) {
  if (z.real() > 0.5) return false;
  const double nearest = std::round(z.real());
  return std::abs(z - Complex(nearest, 0.0)) < 1e-14;
}

Complex lanczos_ln_gamma(Complex z) {
  // Gamma(w + 1) = sqrt(2 pi) (w + g + 1/2)^(w + 1/2) e^-(w + g + 1/2) A_g(w)
  const Complex w = z - 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    series += kLanczos[k] / (w + static_cast<double>(k));
  }
  const Complex base = w + kLanczosG + 0.5;
  return kHalfLogTwoPi + (w + 0.5) * std::log(base) - base + std::log(series);
}

// sin(pi z) with exact zeros at integers.
Complex sin_pi(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double r = std::remainder(x, 2.0);
  const double s = (r == 0.0 || std::abs(r) == 1.0) ? 0.0 : std::sin(kPi * r);
  const double c = std::abs(r) == 0.5 ? 0.0 : std::cos(kPi * r);
  return {s * std::cosh(kPi * y), c * std::sinh(kPi * y)};
}

// Principal log sin(pi z). Far from the real axis sin(pi z) overflows, so use
// sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}) for Im z > 0 and conjugate.
Complex log_sin_pi(Complex z) {
  if (std::abs(z.imag()) < 20.0) return std::log(sin_pi(z));
  const bool upper = z.imag() > 0.0;
  const Complex w = upper ? z : std::conj(z);
  const Complex tiny = std::exp(Complex(0.0, kTwoPi) * w);
  Complex L = Complex(0.0, -kPi) * w + Complex(-std::log(2.0), 0.5 * kPi) - tiny;
  L.imag(std::remainder(L.imag(), kTwoPi));
  return upper ? L : std::conj(L);
}

}  // namespace

Complex ln_gamma(Complex z) {
  if (near_nonpositive_integer(z)) {
    throw PoleError("ln_gamma: pole at non-positive integer " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) return lanczos_ln_gamma(z);
  // Reflection; the 2 pi i floor term keeps the result on the branch that is
  // continuous across the imaginary axis.
  const double branch = std::copysign(kTwoPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
  return Complex(kLogPi, branch) - log_sin_pi(z) - lanczos_ln_gamma(1.0 - z);
}

Complex chi(Complex s) {
  const Complex half_s = 0.5 * s;
  if (near_nonpositive_integer(half_s)) return {0.0, 0.0};
  const Complex log_chi = (s - 0.5) * kLogPi + ln_gamma(0.5 - half_s) - ln_gamma(half_s);
  return std::exp(log_chi);
}

double theta(double t) {
  if (t == 0.0) return 0.0;
  return ln_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * kLogPi;
}

double theta_asymptotic(double t) {
  const double inv = 1.0 / t;
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + inv / 48.0 +
         7.0 * inv * inv * inv / 5760.0;
}

}  // namespace sine_moments
