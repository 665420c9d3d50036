#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sine_moments/cfkrs.hpp"
#include "sine_moments/errors.hpp"
#include "sine_moments/predictions.hpp"

using namespace sine_moments;

namespace {

const double kA2 = 0.60792710185402662866;
const double kA3 = 0.049321673579400091762;

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("wm_leading M = 1 reference") {
  const auto r = wm_leading(1e6, {{0.5}, {0.0}}, 1.0);
  CHECK(r.mode == WmMode::zeta_factors);
  CHECK(r.aM_used == 1.0);
  CHECK(rel_err(r.value, {1.8278201257806919227, -8.6194115722404972332}) < 1e-12);
}

TEST_CASE("wm_leading at coincident shifts") {
  // zeta(1+x) + e^{-lx/L} zeta(1-x) tends to log(t / 2 pi) + 2 gamma.
  for (double t : {1e3, 1e6}) {
    const auto r = wm_leading(t, {{0.0}, {0.0}}, 1.0);
    const double want = std::log(t / kTwoPi) + 2.0 * kEulerGamma;
    CHECK(std::abs(r.value - want) < 1e-8 * want);
  }
  const auto diag = wm_leading(1e5, {{0.1, 0.7}, {0.1, 0.7}}, kA2);
  CHECK(diag.value.real() > 0.0);
  CHECK(std::abs(diag.value.imag()) < 1e-9 * diag.value.real());
}

TEST_CASE("pole approximation is the scaled conjecture") {
  for (int M = 1; M <= 3; ++M) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      const auto cfg = random_shift_config(M, 23, i);
      const double t = 1e8;
      const double scale = std::pow(std::log(t), M * M);
      const auto pole = wm_pole(t, cfg, 0.5);
      CHECK(pole.mode == WmMode::pole_approx);
      CHECK(rel_err(pole.value, scale * conjecture_rhs(cfg, 0.5).value) < 1e-10);
    }
  }
  const auto m1 = wm_pole(std::exp(10.0), {{0.5}, {0.0}}, 1.0);
  CHECK(std::abs(m1.value - Complex(0.0, -20.0 / kPi)) < 1e-12);
  CHECK_THROWS_AS(wm_pole(1e6, {{0.1, 0.1 + 1e-9}, {0.3, 0.5}}, 1.0), CoalescenceError);
}

TEST_CASE("M = 3 pole reference") {
  const ShiftConfig cfg{{0.1, 0.4, -0.3}, {0.2, -0.15, 0.35}};
  const double t = 1e7;
  const Complex want = std::pow(std::log(t), 9) * Complex(3.3273221367406793197e-6, 2.4174410367157697453e-6);
  CHECK(rel_err(wm_pole(t, cfg, kA3).value, want) < 1e-9);
}

TEST_CASE("zeta factors approach the pole form as t grows") {
  for (const auto& cfg : {ShiftConfig{{0.5}, {0.0}}, ShiftConfig{{0.3, -0.6}, {0.1, 0.8}}}) {
    double prev = INFINITY;
    for (double t : {1e3, 1e6, 1e9}) {
      const double aM = cfg.order() == 1 ? 1.0 : kA2;
      const double dev = rel_err(wm_leading(t, cfg, aM).value, wm_pole(t, cfg, aM).value);
      CHECK(dev < prev);
      prev = dev;
    }
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(wm_leading(5.0, {{0.1}, {0.2}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(wm_leading(1e4, {{0.1}, {0.2}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(wm_leading(1e4, {{0.1}, {0.2, 0.3}}, 1.0), std::invalid_argument);
}
