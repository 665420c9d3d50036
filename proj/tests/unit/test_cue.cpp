#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sine_moments/cue.hpp"
#include "sine_moments/errors.hpp"
#include "sine_moments/predictions.hpp"

using namespace sine_moments;

namespace {

Complex det3(const Eigen::Matrix3cd& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("haar samples are unitary and reproducible") {
  for (int N : {1, 2, 7, 64, 200}) {
    const auto U = haar_sample(N, 11, 3);
    CHECK(U.N == N);
    CHECK(U.unitarity_residual() <= 1e-12);
    CHECK(std::abs(std::abs(U.entries.determinant()) - 1.0) < 1e-12);
  }
  const auto a = haar_sample(16, 5, 9);
  const auto b = haar_sample(16, 5, 9);
  const auto c = haar_sample(16, 5, 10);
  CHECK(a.entries == b.entries);
  CHECK(a.entries != c.entries);
  CHECK_THROWS_AS(haar_sample(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(haar_sample(kMaxSampleDimension + 1, 1, 0), std::invalid_argument);
}

TEST_CASE("haar moments: E|tr U|^2 = 1 and E tr U = 0") {
  const int n = 10000;
  double sum = 0.0, sum_sq = 0.0;
  Complex tr_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex tr = haar_sample(8, 2024, i).entries.trace();
    const double v = std::norm(tr);
    sum += v;
    sum_sq += v * v;
    tr_sum += tr;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
  CHECK(std::abs(mean - 1.0) < 4.0 * se);
  CHECK(std::abs(tr_sum / double(n)) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("charpoly_product") {
  const auto U = haar_sample(3, 1, 1);
  CHECK(charpoly_product(U, {}, false) == Complex(1.0));

  const double mu = 0.4, nu = -1.3;
  const Eigen::Matrix3cd I = Eigen::Matrix3cd::Identity();
  const Eigen::Matrix3cd A = U.entries;
  const Complex want = det3(A - std::polar(1.0, mu) * I) * std::conj(det3(A - std::polar(1.0, nu) * I));
  CHECK(rel_err(charpoly_product(U, {{mu}, {nu}}, false), want) < 1e-13);

  const auto V = haar_sample(12, 4, 4);
  const ShiftConfig cfg{{0.3, -0.6}, {0.1, 0.8}};
  const Complex base = charpoly_product(V, cfg, true);
  CHECK(rel_err(charpoly_product(V, {cfg.nu, cfg.mu}, true), std::conj(base)) < 1e-12);
  UnitaryMatrix W{V.N, V.entries.conjugate()};
  CHECK(rel_err(charpoly_product(W, {{-0.3, 0.6}, {-0.1, -0.8}}, true), std::conj(base)) < 1e-12);
  // Scaled angles are 2 pi x / N.
  const double s = kTwoPi / 12.0;
  CHECK(rel_err(charpoly_product(V, {{0.3 * s, -0.6 * s}, {0.1 * s, 0.8 * s}}, false), base) < 1e-12);
}

TEST_CASE("cue_exact_det closed forms") {
  // M = 1 on the diagonal: the kernel at coincident points is N + 1.
  for (int N : {1, 5, 40}) CHECK(std::abs(cue_exact_det(N, {{0.2}, {0.2}}).value - double(N + 1)) < 1e-12 * N);
  const auto g = cue_exact_det(16, {{0.3}, {0.0}});
  CHECK(g.method == CueMethod::exact_det);
  CHECK(rel_err(g.value, {8.4089708055989441, 11.573955386596305}) < 1e-13);
  const auto diag = cue_exact_det(20, {{0.1, 0.7}, {0.1, 0.7}});
  CHECK(diag.value.real() > 0.0);
  CHECK(std::abs(diag.value.imag()) < 1e-10 * diag.value.real());
}

TEST_CASE("determinant and permutation formulas agree") {
  for (int M = 2; M <= 3; ++M) {
    for (std::uint64_t i = 0; i < 8; ++i) {
      const auto cfg = random_shift_config(M, 17, i);
      for (int N : {6, 25}) {
        const Complex d = cue_exact_det(N, cfg).value;
        const Complex p = cue_exact_perm(N, cfg).value;
        CAPTURE(M);
        CAPTURE(i);
        CHECK(rel_err(p, d) < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(cue_exact_perm(10, {{0.1, 0.2}, {0.2, 0.5}}), CoalescenceError);
}

TEST_CASE("Monte Carlo agrees with the exact value") {
  const ShiftConfig one{{0.5}, {0.0}};
  const auto mc1 = cue_mc(10, one, 4000, 77);
  const Complex ex1 = cue_exact_det(10, one).value;
  CHECK(mc1.method == CueMethod::mc);
  CHECK(mc1.samples == 4000);
  CHECK(std::abs(mc1.value - ex1) < 3.0 * mc1.std_error);

  const ShiftConfig two{{0.3, -0.6}, {0.1, 0.8}};
  const auto mc2 = cue_mc(6, two, 4000, 78);
  CHECK(std::abs(mc2.value - cue_exact_det(6, two).value) < 3.0 * mc2.std_error);

  CHECK_THROWS_AS(cue_mc(10, one, 99, 1), std::invalid_argument);
}

TEST_CASE("Monte Carlo is seeded") {
  const ShiftConfig cfg{{0.25}, {-0.5}};
  const auto a = cue_mc(8, cfg, 400, 3, Execution::parallel);
  const auto b = cue_mc(8, cfg, 400, 3, Execution::serial);
  const auto c = cue_mc(8, cfg, 400, 4, Execution::serial);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value != c.value);
}

TEST_CASE("scaling toward the sine-kernel limit") {
  const auto rows = scaling_check({8, 32, 128, 512}, {{0.5}, {0.0}});
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].deviation < rows[i - 1].deviation);
  CHECK(rows.back().deviation < 1e-3);
  CHECK(rows[0].limit == cue_limit({{0.5}, {0.0}}));

  const auto cfg = random_shift_config(2, 7, 0);
  const Complex scaled = cue_exact_perm(2048, cfg).value / std::pow(2048.0, 4);
  CHECK(rel_err(scaled, cue_limit(cfg)) < 5e-3);
}
