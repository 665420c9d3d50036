#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sine_moments/numeric.hpp"

namespace sine_moments {

inline constexpr int kMaxShiftOrder = 6;

/// Shift vectors mu[0..M), nu[0..M) of a 2M-fold moment.
struct ShiftConfig {
  std::vector<double> mu;
  std::vector<double> nu;

  int order() const { return static_cast<int>(mu.size()); }
  /// mu then nu, length 2M.
  std::vector<double> joined() const;
  /// Throws std::invalid_argument unless 1 <= M <= 6, |mu| == |nu| and all
  /// entries are finite.
  void validate() const;

  friend bool operator==(const ShiftConfig&, const ShiftConfig&) = default;
};

/// Permutations sigma of {0, ..., 2M-1} increasing on the first M and on the
/// last M positions, ordered lexicographically by their first M entries.
/// binom(2M, M) entries.
std::vector<std::vector<int>> shuffle_permutations(int M);

/// Shifts drawn uniformly from [-span, span] for stream (seed, index),
/// redrawn until all 2M values are at least `min_gap` apart.
ShiftConfig random_shift_config(int M, std::uint64_t seed, std::uint64_t index,
                                double span = 1.0, double min_gap = 0.05);

/// Smallest |x_i - x_j| over i < j; +inf for fewer than two values.
double min_separation(const std::vector<double>& x);

struct ConfluentValue {
  Complex value;
  bool coalesced = false;
};

using IndexRange = std::pair<std::size_t, std::size_t>;

inline constexpr double kConfluentStep = 1e-2;

/// Evaluates a function that extends continuously across coincident
/// arguments. Within each [begin, end) range of `x`, values closer than
/// `threshold` (chained) form a cluster. If no cluster exists this returns f(x).
/// Otherwise a cluster of size k is spread by offsets o_j = h (2j - k + 1),
/// R(h) = (f(x + o) + f(x - o)) / 2 is formed at h, h/2, h/4 and extrapolated
/// to h = 0 in h^2, leaving an O(h^6) error. h starts at `step` and is reduced
/// so that no spread point approaches an unclustered neighbour.
ConfluentValue evaluate_confluent(const std::vector<double>& x,
                                  const std::vector<IndexRange>& groups, double threshold,
                                  const std::function<Complex(const std::vector<double>&)>& f,
                                  double step = kConfluentStep);

}  // namespace sine_moments
