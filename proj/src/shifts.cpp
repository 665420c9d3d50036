#include "sine_moments/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace sine_moments {

std::vector<double> ShiftConfig::joined() const {
  std::vector<double> x(mu);
  x.insert(x.end(), nu.begin(), nu.end());
  return x;
}

void ShiftConfig::validate() const {
  if (mu.size() != nu.size()) {
    throw std::invalid_argument("shift vectors mu and nu differ in length (" +
                                std::to_string(mu.size()) + " vs " + std::to_string(nu.size()) +
                                ")");
  }
  if (mu.empty() || order() > kMaxShiftOrder) {
    throw std::invalid_argument("shift order M must lie in [1, 6], got " +
                                std::to_string(order()));
  }
  for (double v : joined()) {
    if (!std::isfinite(v)) throw std::invalid_argument("shift values must be finite");
  }
}

std::vector<std::vector<int>> shuffle_permutations(int M) {
  std::vector<std::vector<int>> out;
  const int n = 2 * M;
  std::vector<int> subset(M);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    std::vector<int> sigma(subset);
    std::vector<bool> used(n, false);
    for (int i : subset) used[i] = true;
    for (int i = 0; i < n; ++i) {
      if (!used[i]) sigma.push_back(i);
    }
    out.push_back(std::move(sigma));

    int pos = M - 1;
    while (pos >= 0 && subset[pos] == n - M + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int i = pos + 1; i < M; ++i) subset[i] = subset[i - 1] + 1;
  }
  return out;
}

ShiftConfig random_shift_config(int M, std::uint64_t seed, std::uint64_t index, double span,
                                double min_gap) {
  if (M < 1 || M > kMaxShiftOrder) throw std::invalid_argument("random_shift_config: M out of range");
  if (!(2.0 * span > (2 * M - 1) * min_gap)) {
    throw std::invalid_argument("random_shift_config: span too small for min_gap");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(-span, span);
  ShiftConfig cfg;
  do {
    cfg.mu.clear();
    cfg.nu.clear();
    for (int j = 0; j < M; ++j) cfg.mu.push_back(uniform(rng));
    for (int j = 0; j < M; ++j) cfg.nu.push_back(uniform(rng));
  } while (min_separation(cfg.joined()) < min_gap);
  return cfg;
}

double min_separation(const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::min(best, std::abs(x[i] - x[j]));
  }
  return best;
}

ConfluentValue evaluate_confluent(const std::vector<double>& x,
                                  const std::vector<IndexRange>& groups, double threshold,
                                  const std::function<Complex(const std::vector<double>&)>& f,
                                  double step) {
  // Unit offsets per index; zero outside clusters.
  std::vector<double> unit(x.size(), 0.0);
  std::vector<int> cluster_of(x.size(), -1);
  int clusters = 0;
  for (const auto& [begin, end] : groups) {
    std::vector<std::size_t> idx(end - begin);
    std::iota(idx.begin(), idx.end(), begin);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    std::size_t start = 0;
    for (std::size_t i = 1; i <= idx.size(); ++i) {
      if (i < idx.size() && x[idx[i]] - x[idx[i - 1]] < threshold) continue;
      const std::size_t k = i - start;
      if (k >= 2) {
        for (std::size_t j = 0; j < k; ++j) {
          unit[idx[start + j]] = 2.0 * static_cast<double>(j) - static_cast<double>(k - 1);
          cluster_of[idx[start + j]] = clusters;
        }
        ++clusters;
      }
      start = i;
    }
  }
  if (clusters == 0) return {f(x), false};

  // Keep spread points well away from values outside their cluster.
  double h = step;
  for (const auto& [begin, end] : groups) {
    for (std::size_t i = begin; i < end; ++i) {
      if (cluster_of[i] < 0) continue;
      for (std::size_t j = begin; j < end; ++j) {
        if (cluster_of[j] == cluster_of[i]) continue;
        const double gap = std::abs(x[i] - x[j]);
        const double reach = std::abs(unit[i]) + std::abs(unit[j]) + 1.0;
        h = std::min(h, 0.25 * gap / reach);
      }
    }
  }

  auto symmetric = [&](double hh) {
    std::vector<double> plus(x), minus(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      plus[i] += hh * unit[i];
      minus[i] -= hh * unit[i];
    }
    return 0.5 * (f(plus) + f(minus));
  };
  const Complex r0 = symmetric(h);
  const Complex r1 = symmetric(0.5 * h);
  const Complex r2 = symmetric(0.25 * h);
  const Complex e01 = (4.0 * r1 - r0) / 3.0;
  const Complex e12 = (4.0 * r2 - r1) / 3.0;
  return {(16.0 * e12 - e01) / 15.0, true};
}

}  // namespace sine_moments
