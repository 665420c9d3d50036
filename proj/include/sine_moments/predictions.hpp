#pragma once

#include <string_view>

#include "sine_moments/numeric.hpp"
#include "sine_moments/shifts.hpp"

namespace sine_moments {

enum class PredictionMethod { closed_form, det_ratio, perm_sum, confluent_limit };

std::string_view to_string(PredictionMethod method);

struct PredictionResult {
  Complex value;
  PredictionMethod method = PredictionMethod::closed_form;
  bool coalescence_detected = false;
};

/// Shifts closer than this inside mu or inside nu switch sine_kernel_ratio to
/// the confluent procedure.
inline constexpr double kRatioCoalescence = 1e-4;
/// perm_sum refuses shifts closer than this (its terms have poles there).
inline constexpr double kPermCoalescence = 1e-8;

/// sin(x)/x with value 1 at 0.
double sinc_s(double x);

/// (1 - (sin x/x)^2) / x^2 with value 1/3 at 0.
double kernel_t(double x);

/// e^{-i pi (mu - nu)} S(pi (mu - nu)).
Complex theorem1_rhs(double mu, double nu);

/// 3/(2 pi^2) T(pi (mu - nu)).
double theorem2_rhs(double mu, double nu);

/// det[S(pi (mu_j - nu_k))] / (Delta(2 pi mu) Delta(2 pi nu)), Delta(x) =
/// prod_{j<k} (x_k - x_j). Extended continuously through coincident shifts.
PredictionResult sine_kernel_ratio(const ShiftConfig& cfg);

/// sum over shuffles sigma of
///   exp(1/2 sum_j (xi_sigma(j) - xi_sigma(M+j))) / prod_{j,k} (xi_sigma(j) - xi_sigma(M+k))
/// with xi = 2 pi i (mu, nu). Throws CoalescenceError if two of the 2M shifts
/// are within 1e-8.
PredictionResult perm_sum(const ShiftConfig& cfg);

/// aM e^{-pi i sum (mu_j - nu_j)} sine_kernel_ratio(cfg).
PredictionResult conjecture_rhs(const ShiftConfig& cfg, double aM);

/// |perm_sum - sine_kernel_ratio| / |sine_kernel_ratio|.
double verify_cue6(const ShiftConfig& cfg);

}  // namespace sine_moments
