#include "sine_moments/arithmetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "sine_moments/errors.hpp"
#include "sine_moments/numeric.hpp"
#include "sine_moments/special_functions.hpp"

namespace sine_moments {

DivisorTable::DivisorTable(std::uint64_t limit, std::vector<std::uint32_t> counts)
    : limit_(limit), counts_(std::move(counts)) {
  if (counts_.size() != limit_) {
    throw std::invalid_argument("DivisorTable: counts size does not match limit");
  }
}

DivisorTable divisor_sieve(std::uint64_t limit, std::uint64_t memory_budget_bytes) {
  if (limit < 1 || limit > kMaxSieveLimit) {
    throw std::invalid_argument("divisor_sieve: limit must lie in [1, 2^31]");
  }
  if (limit * sizeof(std::uint32_t) > memory_budget_bytes) {
    throw MemoryBudgetError("divisor_sieve: " + std::to_string(limit * 4) +
                            " bytes exceed budget of " + std::to_string(memory_budget_bytes));
  }
  std::vector<std::uint32_t> counts(limit, 0);
  for (std::uint64_t k = 1; k <= limit; ++k) {
    for (std::uint64_t m = k; m <= limit; m += k) ++counts[m - 1];
  }
  return DivisorTable(limit, std::move(counts));
}

namespace {

void require_covered(std::uint64_t T, const DivisorTable& table) {
  if (T > table.limit()) {
    throw SieveTooSmall("divisor table limit " + std::to_string(table.limit()) + " < T = " +
                        std::to_string(T));
  }
}

}  // namespace

std::uint64_t sum_d2(std::uint64_t T, const DivisorTable& table) {
  require_covered(T, table);
  std::uint64_t total = 0;
  for (std::uint64_t n = 1; n <= T; ++n) {
    const std::uint64_t d = table[n];
    total += d * d;
  }
  return total;
}

double sum_d2_over_n(std::uint64_t T, const DivisorTable& table) {
  require_covered(T, table);
  CompensatedSum<double> total;
  for (std::uint64_t n = 1; n <= T; ++n) {
    const double d = table[n];
    total += d * d / static_cast<double>(n);
  }
  return total.value();
}

double offdiag_sum(std::uint64_t T, bool weighted, const DivisorTable& table, Execution exec) {
  if (T > kOffdiagMaxT) {
    throw TooLarge("offdiag_sum: T = " + std::to_string(T) + " exceeds guard " +
                   std::to_string(kOffdiagMaxT));
  }
  if (weighted) require_covered(T, table);
  if (T < 2) return 0.0;

  std::vector<double> weight(T + 1, 0.0);
  for (std::uint64_t n = 1; n <= T; ++n) {
    weight[n] = (weighted ? static_cast<double>(table[n]) : 1.0) / std::sqrt(static_cast<double>(n));
  }
  const auto rows = map_indexed<double>(T - 1, exec, [&](std::size_t i) {
    const std::uint64_t m = i + 1;
    const double dm = static_cast<double>(m);
    CompensatedSum<double> row;
    for (std::uint64_t n = m + 1; n <= T; ++n) {
      row += weight[n] / std::log1p(static_cast<double>(n - m) / dm);
    }
    return weight[m] * row.value();
  });
  CompensatedSum<double> total;
  for (double r : rows) total += r;
  return total.value();
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

namespace {

// binom(j + M - 1, j)^2, exact in 64-bit while j + M <= 60.
double squared_binomial(int j, int M) {
  if (j + M <= 60) {
    const int n = j + M - 1;
    const int k = std::min(j, M - 1);
    std::uint64_t b = 1;
    for (int i = 0; i < k; ++i) b = b * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    const double bd = static_cast<double>(b);
    return bd * bd;
  }
  const double log_b = ln_gamma(Complex(j + M, 0)).real() - ln_gamma(Complex(j + 1, 0)).real() -
                       ln_gamma(Complex(M, 0)).real();
  return std::exp(2.0 * log_b);
}

// Smallest J with sum_{j > J} c_j 2^{-j} < 1e-15.
int required_inner_terms(int M) {
  double sum = 1.0;
  for (int j = 1; j < 100000; ++j) {
    const double term = squared_binomial(j, M) * std::ldexp(1.0, -j);
    sum += term;
    const double ratio = squared_binomial(j + 1, M) / squared_binomial(j, M) * 0.5;
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-15) return j;
  }
  throw ConvergenceError("a_m: inner series does not converge at p = 2");
}

double exponential_integral_e1(double x) { return -std::expint(-x); }

}  // namespace

std::vector<double> euler_factor_log_series(int M, int K) {
  std::vector<double> c(K + 1);
  for (int j = 0; j <= K; ++j) c[j] = squared_binomial(j, M);
  // log F with F(0) = 1: k g_k = k c_k - sum_{i<k} i g_i c_{k-i}
  std::vector<double> h(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    double acc = k * c[k];
    for (int i = 1; i < k; ++i) acc -= i * h[i] * c[k - i];
    h[k] = acc / k;
  }
  const double m2 = static_cast<double>(M) * M;
  for (int k = 1; k <= K; ++k) h[k] -= m2 / k;
  h[0] = 0.0;
  return h;
}

EulerProductResult a_m(int M, std::uint64_t prime_limit, int j_terms, Execution exec) {
  if (M < 1) throw std::invalid_argument("a_m: M must be >= 1");
  if (prime_limit < 100) throw std::invalid_argument("a_m: prime_limit must be >= 100");
  const int needed = required_inner_terms(M);
  if (j_terms == 0) j_terms = needed;
  if (j_terms < needed) {
    throw ConvergenceError("a_m: j_terms = " + std::to_string(j_terms) +
                           " leaves an inner tail above 1e-15 at p = 2 (need " +
                           std::to_string(needed) + ")");
  }

  std::vector<double> coeff(static_cast<std::size_t>(j_terms) + 2);
  for (int j = 0; j <= j_terms + 1; ++j) coeff[j] = squared_binomial(j, M);
  const double m2 = static_cast<double>(M) * M;

  auto log_factor = [&](double p) {
    const double x = 1.0 / p;
    double s = 0.0;
    double xp = 1.0;
    for (int j = 1; j <= j_terms; ++j) {
      xp *= x;
      const double term = coeff[j] * xp;
      s += term;
      if (term < 1e-18 * (1.0 + s) && coeff[j + 1] / coeff[j] * x < 0.5) break;
    }
    return m2 * std::log1p(-x) + std::log1p(s);
  };

  const auto primes = primes_up_to(prime_limit);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  const auto partial = map_indexed<double>(blocks, exec, [&](std::size_t b) {
    CompensatedSum<double> acc;
    const std::size_t end = std::min(primes.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) acc += log_factor(primes[i]);
    return acc.value();
  });
  CompensatedSum<double> log_sum;
  for (double v : partial) log_sum += v;

  // sum_{p > P} p^-2 = -pi(P)/P^2 + 2 int_P^inf pi(u) u^-3 du, with
  // u/log u (1 + a/log u) bracketing pi(u): a >= 1 for u >= 599 and
  // a <= 1.2762 for u > 1 (Dusart).
  const double P = static_cast<double>(prime_limit);
  const double L = std::log(P);
  const double e1 = exponential_integral_e1(L);
  const double j2 = std::exp(-L) / L - e1;
  const double a_lo = prime_limit >= 599 ? 1.0 : 0.0;
  const double a_hi = 1.2762;
  const double base = -static_cast<double>(primes.size()) / (P * P) + 2.0 * e1;
  const double lo = base + 2.0 * a_lo * j2;
  const double hi = base + 2.0 * a_hi * j2;

  constexpr int kSeriesOrder = 12;
  const auto h = euler_factor_log_series(M, kSeriesOrder);
  const double tail_estimate = h[2] * 0.5 * (lo + hi);
  double tail_bound = std::abs(h[2]) * 0.5 * (hi - lo);
  for (int k = 3; k <= kSeriesOrder; ++k) {
    tail_bound += std::abs(h[k]) * std::pow(P, 1.0 - k) / (k - 1);
  }
  if (!(tail_bound <= 1e-6)) {
    throw ConvergenceError("a_m: tail bound " + std::to_string(tail_bound) + " exceeds 1e-6");
  }

  EulerProductResult result;
  result.M = M;
  result.value = std::exp(log_sum.value() + tail_estimate);
  result.prime_limit = prime_limit;
  result.j_terms = j_terms;
  result.tail_bound = tail_bound;
  return result;
}

std::uint64_t fnv1a64(std::span<const std::byte> bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::byte b : bytes) {
    hash ^= static_cast<std::uint64_t>(b);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

constexpr std::array<char, 4> kCacheMagic = {'Z', 'M', 'D', '2'};
constexpr std::uint32_t kCacheVersion = 1;

template <class U>
void put_le(std::vector<std::byte>& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::byte>((value >> (8 * i)) & 0xFF));
  }
}

template <class U>
U get_le(const std::byte* in) {
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(std::to_integer<std::uint8_t>(in[i])) << (8 * i);
  }
  return value;
}

}  // namespace

void save_sieve_cache(const DivisorTable& table, const std::filesystem::path& path) {
  std::vector<std::byte> buf;
  buf.reserve(24 + table.limit() * 4);
  for (char c : kCacheMagic) buf.push_back(static_cast<std::byte>(c));
  put_le<std::uint32_t>(buf, kCacheVersion);
  put_le<std::uint64_t>(buf, table.limit());
  const std::size_t payload_start = buf.size();
  for (std::uint32_t d : table.counts()) put_le<std::uint32_t>(buf, d);
  const auto checksum =
      fnv1a64(std::span(buf).subspan(payload_start, buf.size() - payload_start));
  put_le<std::uint64_t>(buf, checksum);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

DivisorTable load_sieve_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* bytes = reinterpret_cast<const std::byte*>(raw.data());

  if (raw.size() < 16) throw TruncationError("sieve cache: header truncated");
  if (!std::equal(kCacheMagic.begin(), kCacheMagic.end(), raw.begin())) {
    throw FormatError("sieve cache: bad magic");
  }
  const auto version = get_le<std::uint32_t>(bytes + 4);
  if (version != kCacheVersion) {
    throw FormatError("sieve cache: unsupported version " + std::to_string(version));
  }
  const auto limit = get_le<std::uint64_t>(bytes + 8);
  if (limit > kMaxSieveLimit) throw FormatError("sieve cache: implausible limit");
  const std::uint64_t expected = 16 + limit * 4 + 8;
  if (raw.size() < expected) throw TruncationError("sieve cache: payload truncated");
  if (raw.size() > expected) throw FormatError("sieve cache: trailing bytes");

  const std::span<const std::byte> payload(bytes + 16, limit * 4);
  if (fnv1a64(payload) != get_le<std::uint64_t>(bytes + 16 + limit * 4)) {
    throw FormatError("sieve cache: checksum mismatch");
  }
  std::vector<std::uint32_t> counts(limit);
  for (std::uint64_t i = 0; i < limit; ++i) counts[i] = get_le<std::uint32_t>(bytes + 16 + 4 * i);
  return DivisorTable(limit, std::move(counts));
}

}  // namespace sine_moments
