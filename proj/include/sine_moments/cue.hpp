#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sine_moments/numeric.hpp"
#include "sine_moments/parallel.hpp"
#include "sine_moments/shifts.hpp"

namespace sine_moments {

inline constexpr int kMaxSampleDimension = 512;

struct UnitaryMatrix {
  int N = 0;
  Eigen::MatrixXcd entries;

  /// max |(U^* U - I)_{jk}|.
  double unitarity_residual() const;
};

/// Haar-distributed U(N) sample for stream (seed, index): QR of a complex
/// Ginibre matrix with the columns of Q rotated by R_jj / |R_jj|. The stream is
/// a mt19937_64 seeded from both words, so samples do not depend on the order
/// in which they are drawn.
UnitaryMatrix haar_sample(int N, std::uint64_t seed, std::uint64_t index);

/// prod_j det(U - z_j I) * prod_j conj(det(U - w_j I)) with z_j = e^{i mu_j},
/// w_j = e^{i nu_j}; with `scaled` the angles are 2 pi mu_j / N and 2 pi nu_j / N.
/// Empty shift vectors give 1.
Complex charpoly_product(const UnitaryMatrix& U, const ShiftConfig& cfg, bool scaled);

enum class CueMethod { mc, exact_det, exact_perm };

std::string_view to_string(CueMethod method);

struct CueEstimate {
  int N = 0;
  int M = 0;
  ShiftConfig shifts;
  Complex value;
  /// Standard error of `value` (Monte Carlo only, else 0).
  double std_error = 0.0;
  long samples = 0;
  CueMethod method = CueMethod::exact_det;
};

inline constexpr int kMcBatches = 20;

/// Mean of charpoly_product(scaled = true) over `samples` Haar draws with
/// streams (seed, 0), (seed, 1), ... The standard error comes from 20 batch
/// means. Requires samples >= 100.
CueEstimate cue_mc(int N, const ShiftConfig& cfg, long samples, std::uint64_t seed,
                   Execution exec = Execution::parallel);

/// Shifts closer than this inside mu or inside nu send cue_exact_det through
/// the confluent procedure.
inline constexpr double kCueCoalescence = 1e-6;

/// det[S_{N+M}(a_j, b_l)] / (Delta(e^{ia}) Delta(e^{-ib})) with a_j = 2 pi mu_j / N,
/// b_l = 2 pi nu_l / N and S_n(a, b) = sum_{k<n} e^{ik(a-b)}.
CueEstimate cue_exact_det(int N, const ShiftConfig& cfg);

/// The binom(2M, M)-term finite-N permutation formula at the same points.
/// Throws CoalescenceError when two points nearly coincide.
CueEstimate cue_exact_perm(int N, const ShiftConfig& cfg);

/// lim N^{-M^2} f = e^{+pi i sum (mu_j - nu_j)} sine_kernel_ratio(cfg).
Complex cue_limit(const ShiftConfig& cfg);

struct ScalingRow {
  int N = 0;
  Complex scaled;  // N^{-M^2} cue_exact_det
  Complex limit;
  double deviation = 0.0;  // |scaled - limit| / |limit|
};

std::vector<ScalingRow> scaling_check(const std::vector<int>& N_list, const ShiftConfig& cfg);

}  // namespace sine_moments
