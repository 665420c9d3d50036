#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

namespace sine_moments {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Kahan-Babuska (Neumaier) compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, Complex>) {
      add_component(re_, re_c_, x.real());
      add_component(im_, im_c_, x.imag());
    } else {
      add_component(re_, re_c_, x);
    }
  }

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return {re_ + re_c_, im_ + im_c_};
    } else {
      return re_ + re_c_;
    }
  }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0;
  double re_c_ = 0.0;
  double im_ = 0.0;
  double im_c_ = 0.0;
};

}  // namespace sine_moments
