#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sine_moments/cue.hpp"
#include "sine_moments/errors.hpp"
#include "sine_moments/predictions.hpp"

using namespace sine_moments;

namespace {

const double kA3 = 0.049321673579400091762;

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST_CASE("sinc_s") {
  CHECK(sinc_s(0.0) == 1.0);
  CHECK(std::abs(sinc_s(kPi)) < 1e-16);
  CHECK(std::abs(sinc_s(kPi / 2) - 2.0 / kPi) < 1e-16);
  for (double x : {9e-5, 1.1e-4, -3e-5}) CHECK(std::abs(sinc_s(x) - std::sin(x) / x) <= 2.3e-16);
}

TEST_CASE("kernel_t") {
  CHECK(kernel_t(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(std::abs(kernel_t(kPi) - 1.0 / (kPi * kPi)) < 1e-16);
  for (double x : {0.01, 0.3, 0.7, 2.5, 11.0}) CHECK(kernel_t(-x) == kernel_t(x));
  // The series branch and the direct formula agree where both are accurate.
  const double x = 0.4999999;
  const double s = std::sin(x) / x;
  CHECK(std::abs(kernel_t(x) - (1.0 - s * s) / (x * x)) < 1e-14);
  CHECK(std::abs(kernel_t(1e-3) - (1.0 / 3.0 - 2e-6 / 45.0 + 1e-12 / 315.0)) < 1e-16);
}

TEST_CASE("theorem1_rhs and theorem2_rhs") {
  CHECK(std::abs(theorem1_rhs(0.3, 0.3) - 1.0) < 1e-16);
  CHECK(std::abs(theorem1_rhs(1.25, 0.25)) < 1e-15);
  CHECK(std::abs(theorem1_rhs(0.5, 0.0) - Complex(0.0, -2.0 / kPi)) < 1e-15);
  CHECK(std::abs(theorem2_rhs(0.2, 0.2) - 1.0 / (2 * kPi * kPi)) < 1e-16);
  CHECK(std::abs(theorem2_rhs(1.0, 0.0) - 3.0 / (2 * std::pow(kPi, 4))) < 1e-16);
  CHECK(theorem2_rhs(0.1, 0.75) == theorem2_rhs(0.75, 0.1));
}

TEST_CASE("shuffle_permutations") {
  CHECK(shuffle_permutations(1) == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(shuffle_permutations(2).size() == 6);
  CHECK(shuffle_permutations(3).size() == 20);
  CHECK(shuffle_permutations(6).size() == 924);
  const auto p = shuffle_permutations(2);
  CHECK(p[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(p[1] == std::vector<int>{0, 2, 1, 3});
  CHECK(p[5] == std::vector<int>{2, 3, 0, 1});
}

TEST_CASE("ShiftConfig validation") {
  CHECK_THROWS_AS((ShiftConfig{{}, {}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ShiftConfig{{0.1}, {0.1, 0.2}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ShiftConfig{std::vector<double>(7, 0.0), std::vector<double>(7, 0.0)}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ShiftConfig{{NAN}, {0.0}}.validate()), std::invalid_argument);
}

TEST_CASE("sine_kernel_ratio M = 1 is the sine kernel") {
  const auto r = sine_kernel_ratio({{0.4}, {-0.35}});
  CHECK(r.value == Complex(sinc_s(0.75 * kPi)));
  CHECK_FALSE(r.coalescence_detected);
}

TEST_CASE("sine_kernel_ratio M = 2 diagonal closed form") {
  for (auto [a, b] : {std::pair{0.0, 0.5}, {0.1, 1.1}, {-0.3, 0.45}, {0.2, 2.2}}) {
    const auto r = sine_kernel_ratio({{a, b}, {a, b}});
    const double d = b - a;
    const double s = sinc_s(kPi * d);
    const double closed = (1.0 - s * s) / std::pow(kTwoPi * d, 2);
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::abs(r.value - closed) < 1e-14);
    CHECK(std::abs(6.0 / (kPi * kPi) * r.value.real() - theorem2_rhs(a, b)) < 1e-15);
  }
}

TEST_CASE("sine_kernel_ratio M = 3 against a cofactor-expansion oracle") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto cfg = random_shift_config(3, 99, i);
    double k[3][3];
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) {
        const double x = kPi * (cfg.mu[j] - cfg.nu[l]);
        k[j][l] = std::sin(x) / x;
      }
    }
    auto vdm = [](const std::vector<double>& v) {
      return kTwoPi * (v[1] - v[0]) * kTwoPi * (v[2] - v[0]) * kTwoPi * (v[2] - v[1]);
    };
    const double oracle = det3(k) / (vdm(cfg.mu) * vdm(cfg.nu));
    CAPTURE(i);
    CHECK(std::abs(sine_kernel_ratio(cfg).value.real() - oracle) < 1e-11 * std::abs(oracle));
  }
}

TEST_CASE("perm_sum") {
  const ShiftConfig one{{0.7}, {0.15}};
  CHECK(std::abs(perm_sum(one).value - sinc_s(kPi * 0.55)) < 1e-15);
  CHECK(perm_sum(one).method == PredictionMethod::perm_sum);
  CHECK_THROWS_AS(perm_sum({{0.1, 0.2}, {0.3, 0.2 + 1e-9}}), CoalescenceError);
  CHECK_THROWS_AS(perm_sum({{0.1}, {0.1}}), CoalescenceError);
}

TEST_CASE("verify_cue6 on random configurations") {
  CHECK(verify_cue6({{0.3}, {-0.45}}) <= 1e-12);
  for (int M = 2; M <= 4; ++M) {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const auto cfg = random_shift_config(M, 314, i);
      CAPTURE(M);
      CAPTURE(i);
      CHECK(verify_cue6(cfg) <= 1e-9);
    }
  }
}

TEST_CASE("conjecture_rhs reduces to the theorems") {
  for (double d : {0.0, 0.25, 0.5, 1.0, 1.7}) {
    const auto m1 = conjecture_rhs({{d + 0.1}, {0.1}}, 1.0);
    CHECK(std::abs(m1.value - theorem1_rhs(d + 0.1, 0.1)) < 1e-15);
  }
  const double a2 = 6.0 / (kPi * kPi);
  for (double d : {0.3, 1.0, 2.0}) {
    const auto m2 = conjecture_rhs({{0.2, 0.2 + d}, {0.2, 0.2 + d}}, a2);
    CHECK(std::abs(m2.value - theorem2_rhs(0.2, 0.2 + d)) < 1e-15);
    CHECK(m2.method == PredictionMethod::det_ratio);
  }
  // Coincident pair: only the confluent procedure reaches 1/(2 pi^2).
  const auto confluent = conjecture_rhs({{0.0, 0.0}, {0.0, 0.0}}, a2);
  CHECK(confluent.coalescence_detected);
  CHECK(confluent.method == PredictionMethod::confluent_limit);
  CHECK(std::abs(confluent.value - theorem2_rhs(0.0, 0.0)) < 1e-10 * theorem2_rhs(0.0, 0.0));
  const auto near = conjecture_rhs({{0.3, 0.3 + 4e-5}, {0.3 + 4e-5, 0.3}}, a2);
  CHECK(near.coalescence_detected);
  CHECK(std::abs(near.value - theorem2_rhs(0.3, 0.3 + 4e-5)) < 1e-10 * theorem2_rhs(0.0, 0.0));
  CHECK_THROWS_AS(conjecture_rhs({{0.1}, {0.2}}, 0.0), std::invalid_argument);
}

TEST_CASE("conjecture_rhs M = 3 references") {
  struct Case {
    std::vector<double> mu, nu;
    Complex want;
  };
  const Case cases[] = {
      {{0.1, 0.4, -0.3}, {0.2, -0.15, 0.35}, {3.3273221367406793197e-6, 2.4174410367157697453e-6}},
      {{0, 0.5, 1}, {0.25, 0.75, -0.5}, {-1.5687912252821915749e-6, 0.0}},
      {{-0.7, 0.2, 0.9}, {0.6, -0.4, 0.05}, {1.0582835414983518203e-6, -5.3922239717450473947e-7}},
      {{0.33, -0.21, 0.48}, {-0.05, 0.12, 0.27}, {2.9603983542540200724e-6, -3.1525040515560487471e-6}},
      {{1.2, -1.1, 0.3}, {0.8, -0.6, -0.2}, {5.7374481691931673434e-8, -1.7658049775722071298e-7}},
  };
  for (const auto& c : cases) {
    const auto r = conjecture_rhs({c.mu, c.nu}, kA3);
    CHECK(rel_err(r.value, c.want) < 1e-9);
  }
}

TEST_CASE("confluent values are continuous") {
  // M = 3 with a triple coincidence in mu: approach along a symmetric spread.
  const auto at = [](double eps) {
    return sine_kernel_ratio({{0.2 - eps, 0.2, 0.2 + eps}, {-0.4, 0.1, 0.6}}).value.real();
  };
  const double limit = at(0.0);
  CHECK(sine_kernel_ratio({{0.2, 0.2, 0.2}, {-0.4, 0.1, 0.6}}).coalescence_detected);
  const double e1 = std::abs(at(0.02) - limit);
  const double e2 = std::abs(at(0.01) - limit);
  CHECK(e2 < e1);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));  // O(eps^2) approach
}

TEST_CASE("phase conventions") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto cfg = random_shift_config(2, 55, i);
    ShiftConfig negated = cfg;
    for (auto& v : negated.mu) v = -v;
    for (auto& v : negated.nu) v = -v;
    CHECK(std::abs(conjecture_rhs(negated, 1.0).value - cue_limit(cfg)) < 1e-14);
    CHECK(std::abs(std::conj(conjecture_rhs(cfg, 1.0).value) - cue_limit(cfg)) < 1e-14);
    const ShiftConfig swapped{cfg.nu, cfg.mu};
    CHECK(std::abs(std::abs(sine_kernel_ratio(swapped).value) - std::abs(sine_kernel_ratio(cfg).value)) <
          1e-14);
  }
}
