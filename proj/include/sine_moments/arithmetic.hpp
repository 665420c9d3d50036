#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sine_moments/parallel.hpp"

namespace sine_moments {

/// d(n) for 1 <= n <= limit.
class DivisorTable {
 public:
  DivisorTable() = default;
  DivisorTable(std::uint64_t limit, std::vector<std::uint32_t> counts);

  std::uint64_t limit() const { return limit_; }
  /// d(n); n must lie in [1, limit].
  std::uint32_t operator[](std::uint64_t n) const { return counts_[n - 1]; }
  /// Counts for n = 1..limit.
  std::span<const std::uint32_t> counts() const { return counts_; }

  friend bool operator==(const DivisorTable&, const DivisorTable&) = default;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> counts_;
};

inline constexpr std::uint64_t kDefaultSieveBudgetBytes = std::uint64_t{4} << 30;
inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 31;

/// Increment-by-multiples sieve. Throws MemoryBudgetError when 4*limit bytes
/// exceed `memory_budget_bytes`, std::invalid_argument outside [1, 2^31].
DivisorTable divisor_sieve(std::uint64_t limit,
                           std::uint64_t memory_budget_bytes = kDefaultSieveBudgetBytes);

/// Exact sum_{n <= T} d(n)^2.
std::uint64_t sum_d2(std::uint64_t T, const DivisorTable& table);

/// sum_{n <= T} d(n)^2 / n, compensated.
double sum_d2_over_n(std::uint64_t T, const DivisorTable& table);

inline constexpr std::uint64_t kOffdiagMaxT = 5000;

/// sum_{1 <= m < n <= T} w(m) w(n) / (sqrt(mn) log(n/m)) with w = d when
/// `weighted`, else w = 1. O(T^2); throws TooLarge above T = 5000.
double offdiag_sum(std::uint64_t T, bool weighted, const DivisorTable& table,
                   Execution exec = Execution::parallel);

/// Primes p <= limit (plain Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

struct EulerProductResult {
  int M = 0;
  double value = 0.0;
  std::uint64_t prime_limit = 0;
  int j_terms = 0;
  /// Bound on |log(value) - log(a_M)| from the primes above prime_limit.
  double tail_bound = 0.0;
};

/// a_M = prod_p (1 - 1/p)^{M^2} sum_j binom(j+M-1, j)^2 p^{-j}.
///
/// Exact per-prime factors for p <= prime_limit, accumulated in log space.
/// The remaining primes enter through the expansion
/// log(factor_p) = h_2/p^2 + h_3/p^3 + ... whose h_2 = -M^2 (M-1)^2 / 4 term is
/// summed with explicit prime-counting bounds; `tail_bound` is the half-width
/// of that bracket plus bounds on the higher-order terms.
///
/// `j_terms == 0` picks the inner-series length automatically. Throws
/// ConvergenceError if `j_terms` cannot reach 1e-15 at p = 2 or if the tail
/// bound exceeds 1e-6.
EulerProductResult a_m(int M, std::uint64_t prime_limit, int j_terms = 0,
                       Execution exec = Execution::parallel);

/// Coefficients h_0..h_K of log[(1-x)^{M^2} sum_j binom(j+M-1,j)^2 x^j].
std::vector<double> euler_factor_log_series(int M, int K);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const std::byte> bytes);

/// Sieve cache: "ZMD2", u32 version = 1, u64 limit, limit x u32 counts,
/// u64 FNV-1a of the counts. All little-endian.
void save_sieve_cache(const DivisorTable& table, const std::filesystem::path& path);

/// Throws FormatError on bad magic, version or checksum; TruncationError on a
/// short file.
DivisorTable load_sieve_cache(const std::filesystem::path& path);

}  // namespace sine_moments
