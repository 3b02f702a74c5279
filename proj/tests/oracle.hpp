#pragma once

// Test-side reference routes, independent of the library's quadrature and
// sampling code.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

/// Composite Simpson rule on the whole real line after x = center + scale tan(t).
/// Suits integrands decaying at least like 1/x^2.
template <class F>
auto real_line(F f, double center = 0.0, double scale = 1.0, int panels = 400000) {
  using R = decltype(f(0.0));
  const double a = -std::numbers::pi / 2, b = std::numbers::pi / 2;
  const double h = (b - a) / panels;
  R sum{};
  for (int i = 1; i < panels; ++i) {
    const double t = a + i * h;
    const double c = std::cos(t);
    const R v = f(center + scale * std::tan(t)) * (scale / (c * c));
    sum += v * (i % 2 ? 4.0 : 2.0);
  }
  return sum * (h / 3.0);
}

/// |K(x)|^2 with K(x) = 1/(d + x + i/2) + 1/(d - x + i/2), Gamma = 1.
inline double kernel_sq(double x, double d) {
  const std::complex<double> k = 1.0 / std::complex<double>(d + x, 0.5) + 1.0 / std::complex<double>(d - x, 0.5);
  return std::norm(k);
}

}  // namespace oracle
