#include "fracdev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracdev/error.hpp"

namespace fracdev::stats {

double kolmogorov_survival(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

KsResult finish(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), errc::empty_sample, "KS test needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return finish(d, na * nb / (na + nb));
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), errc::empty_sample, "KS test needs a non-empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return finish(d, n);
}

double mean(std::span<const double> x) {
  require(!x.empty(), errc::empty_sample, "mean of empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  require(x.size() > 1, errc::empty_sample, "variance needs at least two values");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double median(std::vector<double> x) {
  require(!x.empty(), errc::empty_sample, "median of empty sample");
  const std::size_t mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + mid, x.end());
  const double upper = x[mid];
  if (x.size() % 2 == 1) return upper;
  const double lower = *std::max_element(x.begin(), x.begin() + mid);
  return 0.5 * (lower + upper);
}

double quantile_sorted(std::span<const double> sorted, double prob) {
  require(!sorted.empty(), errc::empty_sample, "quantile of empty sample");
  const double pos = std::clamp(prob, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double dkw_epsilon(std::size_t n, double delta) {
  require(n > 0, errc::empty_sample, "DKW band needs n > 0");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

Interval wilson_interval(double k, std::size_t n, double z) {
  require(n > 0, errc::empty_sample, "empty sample");
  const double nn = static_cast<double>(n);
  const double p = k / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                     std::span<const double> weights) {
  require(x.size() == y.size(), errc::invalid_argument, "linear_fit: x and y differ in length");
  require(weights.empty() || weights.size() == x.size(), errc::invalid_argument,
          "linear_fit: weights differ in length");
  require(x.size() >= 2, errc::degenerate_design, "linear_fit needs at least two points");
  const bool weighted = !weights.empty();
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weighted ? weights[i] : 1.0;
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
    sxx += w * x[i] * x[i];
    sxy += w * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  require(det > 1e-300 * std::max(1.0, sw * sxx), errc::degenerate_design,
          "linear_fit: design is degenerate (all x equal)");
  LinearFit fit;
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    fit.residual_ss += (weighted ? weights[i] : 1.0) * r * r;
  }
  double scale = 1.0;
  if (!weighted) scale = x.size() > 2 ? fit.residual_ss / static_cast<double>(x.size() - 2) : 0.0;
  fit.var_slope = scale * sw / det;
  fit.var_intercept = scale * sxx / det;
  fit.cov = -scale * sx / det;
  return fit;
}

}  // namespace fracdev::stats
