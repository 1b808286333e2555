#pragma once

// Quadrature helpers shared by the kernel discretisations and the Schauder
// scale factors. Internal to the library.

#include <array>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fracdev::detail {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 4> kGl8Nodes = {0.1834346424956498, 0.5255324099163290,
                                                    0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 4> kGl8Weights = {0.3626837833783620, 0.3137066458778873,
                                                      0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss_legendre8(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    sum += kGl8Weights[i] * (f(mid - half * kGl8Nodes[i]) + f(mid + half * kGl8Nodes[i]));
  }
  return half * sum;
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Integral of f over [0, length] where f may have an integrable singularity
// at 0. The integrand receives the offset from the singular point itself, so
// no precision is lost to cancellation there.
inline QuadResult integrate_from_singularity(const std::function<double(double)>& f, double length,
                                             double tolerance) {
  thread_local boost::math::quadrature::tanh_sinh<double> engine(15);
  QuadResult r;
  double l1 = 0.0;
  r.value = engine.integrate(f, 0.0, length, tolerance, &r.error, &l1);
  return r;
}

}  // namespace fracdev::detail
