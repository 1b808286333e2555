#include "oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

double pvar_brute(std::span<const double> values, double p) {
  const std::size_t m = values.size();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double sum = 0.0;
    int prev = -1;
    int count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (1u << i))) continue;
      if (prev >= 0) sum += std::pow(std::abs(values[i] - values[static_cast<std::size_t>(prev)]), p);
      prev = static_cast<int>(i);
      ++count;
    }
    if (count >= 2 && sum > best) best = sum;
  }
  return std::pow(best, 1.0 / p);
}

double stable_two_sided_tail(double alpha, double r) {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](double l) {
    if (l == 0.0) return r;
    return std::sin(r * l) / l * std::exp(-std::pow(l, alpha));
  };
  // exp(-l^alpha) is below 1e-17 past this point for alpha >= 1
  const double upper = 45.0;
  const double piece = std::numbers::pi / r;
  double inside = 0.0;
  for (double a = 0.0; a < upper; a += piece) {
    inside += gauss_kronrod<double, 61>::integrate(f, a, a + piece, 10, 1e-15);
  }
  return 1.0 - 2.0 / std::numbers::pi * inside;
}

namespace {

double pos_pow(double x, double e) {
  if (x <= 0.0) return 0.0;
  return e == 0.0 ? 1.0 : std::pow(x, e);
}

}  // namespace

double sigma_rlp_brute(unsigned j, std::size_t n, double alpha, double hurst) {
  const double hp = hurst - 1.0 / alpha;
  const double w = std::ldexp(1.0, -static_cast<int>(j));
  const double t0 = (static_cast<double>(n) - 1.0) * w;
  const double t1 = (static_cast<double>(n) - 0.5) * w;
  const double t2 = static_cast<double>(n) * w;
  const auto f = [&](double s) {
    const double k = 2.0 * pos_pow(t1 - s, hp) - pos_pow(t0 - s, hp) - pos_pow(t2 - s, hp);
    return std::pow(std::abs(k), alpha);
  };
  constexpr std::size_t m = 400000;
  double total = 0.0;
  if (t0 > 0.0) total += graded_midpoint(f, 0.0, t0, m);
  total += graded_midpoint(f, t0, t1, m);
  total += graded_midpoint(f, t1, t2, m);
  return std::pow(total, 1.0 / alpha);
}

double sigma_lmp_brute(unsigned j, std::size_t n, double alpha, double hurst) {
  const double hp = hurst - 1.0 / alpha;
  const double nn = static_cast<double>(n);
  const auto g = [&](double u) {
    const double k = 2.0 * std::pow(u + nn - 0.5, hp) - pos_pow(u + nn - 1.0, hp) - std::pow(u + nn, hp);
    return std::pow(std::abs(k), alpha);
  };
  constexpr std::size_t m = 400000;
  double total = graded_midpoint(g, 0.0, 1.0, m);
  // u = 1/x on [1, inf)
  total += graded_midpoint([&](double x) { return x > 0.0 ? g(1.0 / x) / (x * x) : 0.0; }, 0.0, 1.0, m);
  return std::pow(2.0, -hurst * static_cast<double>(j)) * std::pow(total, 1.0 / alpha);
}

double lmp_gaussian_variance(double hurst, double t) {
  const double hp = hurst - 0.5;
  const auto g = [&](double s) {
    const double k = std::pow(t + s, hp) - pos_pow(s, hp);
    return k * k;
  };
  constexpr std::size_t m = 400000;
  double total = graded_midpoint(g, 0.0, 1.0, m);
  total += graded_midpoint([&](double x) { return x > 0.0 ? g(1.0 / x) / (x * x) : 0.0; }, 0.0, 1.0, m);
  return 2.0 * total;
}

std::vector<std::size_t> random_walk_sup_hits(std::span<const double> eps, std::size_t n, unsigned level,
                                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const std::size_t steps = std::size_t{1} << level;
  std::normal_distribution<double> step(0.0, std::sqrt(1.0 / static_cast<double>(steps)));
  std::vector<std::size_t> hits(eps.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 0.0;
    double top = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      w += step(gen);
      top = std::max(top, std::abs(w));
    }
    for (std::size_t e = 0; e < eps.size(); ++e) {
      if (top <= eps[e]) ++hits[e];
    }
  }
  return hits;
}

}  // namespace oracle
