#include "sine_moments/cue.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "sine_moments/errors.hpp"
#include "sine_moments/predictions.hpp"

namespace sine_moments {

double UnitaryMatrix::unitarity_residual() const {
  const Eigen::MatrixXcd r = entries.adjoint() * entries - Eigen::MatrixXcd::Identity(N, N);
  return r.cwiseAbs().maxCoeff();
}

UnitaryMatrix haar_sample(int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1 || N > kMaxSampleDimension) {
    throw std::invalid_argument("haar_sample: N must lie in [1, 512]");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  const double scale = std::sqrt(0.5);

  Eigen::MatrixXcd Z(N, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      Z(i, j) = Complex(re, im) * scale;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const auto& R = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const Complex r = R(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) Q.col(j) *= r / mag;
  }
  return {N, std::move(Q)};
}

Complex charpoly_product(const UnitaryMatrix& U, const ShiftConfig& cfg, bool scaled) {
  if (cfg.mu.size() != cfg.nu.size()) {
    throw std::invalid_argument("charpoly_product: mu and nu differ in length");
  }
  const double factor = scaled ? kTwoPi / U.N : 1.0;
  auto det_at = [&](double angle) {
    Eigen::MatrixXcd A = U.entries;
    A.diagonal().array() -= std::polar(1.0, factor * angle);
    return A.partialPivLu().determinant();
  };
  Complex prod = 1.0;
  for (double m : cfg.mu) prod *= det_at(m);
  for (double n : cfg.nu) prod *= std::conj(det_at(n));
  return prod;
}

std::string_view to_string(CueMethod method) {
  switch (method) {
    case CueMethod::mc: return "mc";
    case CueMethod::exact_det: return "exact_det";
    case CueMethod::exact_perm: return "exact_perm";
  }
  return "unknown";
}

CueEstimate cue_mc(int N, const ShiftConfig& cfg, long samples, std::uint64_t seed,
                   Execution exec) {
  cfg.validate();
  if (samples < 100) throw std::invalid_argument("cue_mc: samples must be >= 100");
  const auto values = map_indexed<Complex>(static_cast<std::size_t>(samples), exec,
                                           [&](std::size_t i) {
                                             const auto U = haar_sample(N, seed, i);
                                             return charpoly_product(U, cfg, true);
                                           });

  CompensatedSum<Complex> total;
  std::vector<Complex> batch_means(kMcBatches);
  for (int b = 0; b < kMcBatches; ++b) {
    const auto begin = static_cast<std::size_t>(samples * b / kMcBatches);
    const auto end = static_cast<std::size_t>(samples * (b + 1) / kMcBatches);
    CompensatedSum<Complex> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch += values[i];
      total += values[i];
    }
    batch_means[b] = batch.value() / static_cast<double>(end - begin);
  }
  Complex centre = 0.0;
  for (const auto& m : batch_means) centre += m;
  centre /= static_cast<double>(kMcBatches);
  double spread = 0.0;
  for (const auto& m : batch_means) spread += std::norm(m - centre);

  CueEstimate est;
  est.N = N;
  est.M = cfg.order();
  est.shifts = cfg;
  est.value = total.value() / static_cast<double>(samples);
  est.std_error = std::sqrt(spread / (kMcBatches * (kMcBatches - 1.0)));
  est.samples = samples;
  est.method = CueMethod::mc;
  return est;
}

namespace {

// sum_{k<n} e^{ikd}
Complex geometric_kernel(int n, double d) {
  const double half = 0.5 * d;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-8) {
    CompensatedSum<Complex> sum;
    for (int k = 0; k < n; ++k) sum += std::polar(1.0, k * d);
    return sum.value();
  }
  return std::sin(n * half) / s * std::polar(1.0, (n - 1) * half);
}

// e^{iy} - e^{ix}
Complex unit_difference(double x, double y) {
  return Complex(0.0, 2.0 * std::sin(0.5 * (y - x))) * std::polar(1.0, 0.5 * (x + y));
}

Complex exact_det_raw(int N, const std::vector<double>& x) {
  const auto M = static_cast<Eigen::Index>(x.size() / 2);
  std::vector<double> angle(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) angle[i] = kTwoPi * x[i] / N;

  Eigen::MatrixXcd S(M, M);
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index l = 0; l < M; ++l) S(j, l) = geometric_kernel(N + static_cast<int>(M), angle[j] - angle[M + l]);
  }
  Complex c = 1.0;
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index k = j + 1; k < M; ++k) {
      c *= unit_difference(angle[j], angle[k]);
      c *= unit_difference(-angle[M + j], -angle[M + k]);
    }
  }
  const Complex det = M == 1 ? S(0, 0) : S.partialPivLu().determinant();
  return det / c;
}

void check_dimension(int N) {
  if (N < 1) throw std::invalid_argument("CUE dimension N must be >= 1");
}

}  // namespace

CueEstimate cue_exact_det(int N, const ShiftConfig& cfg) {
  cfg.validate();
  check_dimension(N);
  const auto M = static_cast<std::size_t>(cfg.order());
  const auto r = evaluate_confluent(cfg.joined(), {{0, M}, {M, 2 * M}}, kCueCoalescence,
                                    [N](const std::vector<double>& x) { return exact_det_raw(N, x); });
  CueEstimate est;
  est.N = N;
  est.M = cfg.order();
  est.shifts = cfg;
  est.value = r.value;
  est.method = CueMethod::exact_det;
  return est;
}

CueEstimate cue_exact_perm(int N, const ShiftConfig& cfg) {
  cfg.validate();
  check_dimension(N);
  const int M = cfg.order();
  const auto x = cfg.joined();
  std::vector<double> angle(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) angle[i] = kTwoPi * x[i] / N;
  for (std::size_t i = 0; i < angle.size(); ++i) {
    for (std::size_t j = i + 1; j < angle.size(); ++j) {
      if (std::abs(2.0 * std::sin(0.5 * (angle[i] - angle[j]))) < 1e-8) {
        throw CoalescenceError("cue_exact_perm: two points coincide within 1e-8");
      }
    }
  }

  // 1 - e^{i theta} = 2 sin^2(theta/2) - i sin(theta)
  auto one_minus = [](double theta) {
    const double s = std::sin(0.5 * theta);
    return Complex(2.0 * s * s, -std::sin(theta));
  };
  const double half_n = 0.5 * N;
  double prefactor_phase = 0.0;
  for (int j = 0; j < M; ++j) prefactor_phase += half_n * (angle[j] - angle[M + j]);

  CompensatedSum<Complex> sum;
  for (const auto& sigma : shuffle_permutations(M)) {
    double phase = 0.0;
    Complex denom = 1.0;
    for (int j = 0; j < M; ++j) {
      phase += half_n * (angle[sigma[j]] - angle[sigma[M + j]]);
      for (int k = 0; k < M; ++k) denom *= one_minus(angle[sigma[M + k]] - angle[sigma[j]]);
    }
    sum += std::polar(1.0, phase) / denom;
  }

  CueEstimate est;
  est.N = N;
  est.M = M;
  est.shifts = cfg;
  est.value = std::polar(1.0, prefactor_phase) * sum.value();
  est.method = CueMethod::exact_perm;
  return est;
}

Complex cue_limit(const ShiftConfig& cfg) {
  double phase = 0.0;
  for (int j = 0; j < cfg.order(); ++j) phase += cfg.mu[j] - cfg.nu[j];
  return std::polar(1.0, kPi * phase) * sine_kernel_ratio(cfg).value;
}

std::vector<ScalingRow> scaling_check(const std::vector<int>& N_list, const ShiftConfig& cfg) {
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (N_list[i] <= N_list[i - 1]) throw std::invalid_argument("scaling_check: N_list must increase");
  }
  const Complex limit = cue_limit(cfg);
  const int m2 = cfg.order() * cfg.order();
  std::vector<ScalingRow> rows;
  for (int N : N_list) {
    ScalingRow row;
    row.N = N;
    row.scaled = cue_exact_det(N, cfg).value / std::pow(static_cast<double>(N), m2);
    row.limit = limit;
    row.deviation = std::abs(row.scaled - limit) / std::abs(limit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sine_moments
