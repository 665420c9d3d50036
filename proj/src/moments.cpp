#include "sine_moments/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "sine_moments/arithmetic.hpp"
#include "sine_moments/errors.hpp"
#include "sine_moments/predictions.hpp"

namespace sine_moments {

std::string_view to_string(Window window) {
  return window == Window::from_T0 ? "from_T0" : "dyadic";
}

Window parse_window(std::string_view text) {
  if (text == "from_T0") return Window::from_T0;
  if (text == "dyadic") return Window::dyadic;
  throw std::invalid_argument("unknown window '" + std::string(text) + "'");
}

void QuadraturePolicy::validate() const {
  if (!(nodes_per_gap >= 2.0)) throw std::invalid_argument("nodes_per_gap must be >= 2");
  if (panel_order < 4 || panel_order > 64) {
    throw std::invalid_argument("panel_order must lie in [4, 64]");
  }
  if (max_nodes < 1) throw std::invalid_argument("max_nodes must be positive");
  zeta.validate();
}

GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

// Cached rule plus P_{n-2}, P_{n-1} at the nodes for the tail coefficients.
struct PanelRule {
  GaussRule rule;
  std::vector<double> p_second_last;
  std::vector<double> p_last;
};

const PanelRule& panel_rule(int order) {
  static std::mutex mutex;
  static std::map<int, PanelRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  PanelRule pr;
  pr.rule = gauss_legendre(order);
  for (double x : pr.rule.nodes) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k < order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    pr.p_second_last.push_back(p0);
    pr.p_last.push_back(p1);
  }
  return cache.emplace(order, std::move(pr)).first->second;
}

struct Panel {
  double a;
  double b;
  int closes_break;  // index into the break list, or -1
};

struct PanelValue {
  Complex integral;
  double error = 0.0;
};

std::vector<Panel> build_panels(double start, const std::vector<double>& breaks,
                                const QuadraturePolicy& policy) {
  std::vector<Panel> panels;
  const long long budget_panels = policy.max_nodes / policy.panel_order;
  double s = start;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double stop = breaks[k];
    while (s < stop) {
      const double width =
          std::min(2.0, kPi * policy.panel_order / (policy.nodes_per_gap * std::log(s)));
      double e = s + width;
      int closes = -1;
      if (e >= stop * (1.0 - 1e-12)) {
        e = stop;
        closes = static_cast<int>(k);
      }
      panels.push_back({s, e, closes});
      if (static_cast<long long>(panels.size()) > budget_panels) {
        throw BudgetExceeded("quadrature would need more than " +
                             std::to_string(policy.max_nodes) + " nodes");
      }
      s = e;
    }
  }
  return panels;
}

struct PrefixIntegral {
  Complex raw;
  double error = 0.0;
  long long nodes = 0;
};

// Integrals over [start, breaks[k]] for every k.
std::vector<PrefixIntegral> integrate_prefixes(const ShiftConfig& cfg, double start,
                                               const std::vector<double>& breaks,
                                               const QuadraturePolicy& policy) {
  const auto panels = build_panels(start, breaks, policy);
  const PanelRule& pr = panel_rule(policy.panel_order);
  const int n = policy.panel_order;

  const auto values = map_indexed<PanelValue>(panels.size(), policy.exec, [&](std::size_t i) {
    const double half = 0.5 * (panels[i].b - panels[i].a);
    const double mid = 0.5 * (panels[i].b + panels[i].a);
    CompensatedSum<Complex> sum;
    Complex c_second_last = 0.0, c_last = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex f = moment_integrand(mid + half * pr.rule.nodes[j], cfg, policy.zeta);
      const double w = pr.rule.weights[j];
      sum += w * f;
      c_second_last += w * pr.p_second_last[j] * f;
      c_last += w * pr.p_last[j] * f;
    }
    const double err = half * (0.5 * (2 * n - 3) * std::abs(c_second_last) +
                               0.5 * (2 * n - 1) * std::abs(c_last));
    return PanelValue{half * sum.value(), err};
  });

  std::vector<PrefixIntegral> out(breaks.size());
  CompensatedSum<Complex> total;
  double error = 0.0;
  long long nodes = 0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    total += values[i].integral;
    error += values[i].error;
    nodes += n;
    if (panels[i].closes_break >= 0) out[panels[i].closes_break] = {total.value(), error, nodes};
  }
  return out;
}

double resolve_am(int M, double aM, Execution exec) {
  if (aM > 0.0) return aM;
  if (M == 1) return 1.0;
  return a_m(M, 1'000'000, 0, exec).value;
}

MomentEstimate make_estimate(const ShiftConfig& cfg, double T0, double T, Window window,
                             const PrefixIntegral& integral, Complex prediction) {
  const int M = cfg.order();
  MomentEstimate est;
  est.cfg = cfg;
  est.T0 = T0;
  est.T = T;
  est.window = window;
  est.raw_integral = integral.raw;
  est.normalized = integral.raw / (T * std::pow(std::log(T), M * M));
  est.prediction = prediction;
  est.nodes_used = integral.nodes;
  est.est_quadrature_error = integral.error / (T * std::pow(std::log(T), M * M));
  return est;
}

}  // namespace

Complex moment_integrand(double t, const ShiftConfig& cfg, const ZetaEvalConfig& zcfg) {
  const double scale = kTwoPi / std::log(t);
  // At most 2M <= 12 distinct shifts; linear lookup.
  double shifts[2 * kMaxShiftOrder];
  Complex values[2 * kMaxShiftOrder];
  int count = 0;
  auto zeta_at = [&](double shift) {
    for (int i = 0; i < count; ++i) {
      if (shifts[i] == shift) return values[i];
    }
    const Complex z = zeta_critical(t + scale * shift, zcfg);
    shifts[count] = shift;
    values[count] = z;
    ++count;
    return z;
  };
  Complex prod = 1.0;
  for (double m : cfg.mu) prod *= zeta_at(m);
  for (double v : cfg.nu) prod *= std::conj(zeta_at(v));
  return prod;
}

std::vector<MomentEstimate> moment_scan(const ShiftConfig& cfg, double T0,
                                        const std::vector<double>& T_list, Window window,
                                        const QuadraturePolicy& policy, double aM) {
  cfg.validate();
  policy.validate();
  if (!(T0 > 1.0)) throw std::invalid_argument("T0 must exceed 1");
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    if (!(T_list[i] > T0)) throw std::invalid_argument("every T must exceed T0");
    if (i > 0 && !(T_list[i] > T_list[i - 1])) {
      throw std::invalid_argument("T list must be strictly increasing");
    }
  }
  if (T_list.empty()) return {};

  const Complex prediction = conjecture_rhs(cfg, resolve_am(cfg.order(), aM, policy.exec)).value;
  std::vector<MomentEstimate> out;
  if (window == Window::from_T0) {
    const auto prefixes = integrate_prefixes(cfg, T0, T_list, policy);
    for (std::size_t i = 0; i < T_list.size(); ++i) {
      out.push_back(make_estimate(cfg, T0, T_list[i], window, prefixes[i], prediction));
    }
  } else {
    for (double T : T_list) {
      const auto prefix = integrate_prefixes(cfg, T, {2.0 * T}, policy);
      out.push_back(make_estimate(cfg, T0, T, window, prefix[0], prediction));
    }
  }
  return out;
}

MomentEstimate shifted_moment(const ShiftConfig& cfg, double T0, double T, Window window,
                              const QuadraturePolicy& policy, double aM) {
  return moment_scan(cfg, T0, {T}, window, policy, aM).front();
}

std::vector<RatioRow> ratio_curve(int M, const std::vector<double>& delta_list, double T,
                                  const QuadraturePolicy& policy, double T0) {
  if (M != 1 && M != 2) throw std::invalid_argument("ratio_curve supports M = 1 or 2");
  auto config_for = [M](double delta) {
    return M == 1 ? ShiftConfig{{delta}, {0.0}} : ShiftConfig{{0.0, delta}, {0.0, delta}};
  };
  const double aM = resolve_am(M, 0.0, policy.exec);
  const Complex base = shifted_moment(config_for(0.0), T0, T, Window::from_T0, policy, aM).normalized;

  std::vector<RatioRow> rows;
  for (double delta : delta_list) {
    RatioRow row;
    row.delta = delta;
    if (delta == 0.0) {
      row.empirical = 1.0;
    } else {
      row.empirical =
          shifted_moment(config_for(delta), T0, T, Window::from_T0, policy, aM).normalized / base;
    }
    row.predicted = M == 1 ? theorem1_rhs(delta, 0.0) : Complex(3.0 * kernel_t(kPi * delta));
    row.deviation = std::abs(row.empirical - row.predicted);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sine_moments
