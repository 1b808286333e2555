#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdev::stats {

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov test (Stephens' small-sample correction).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS test against a continuous CDF.
KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased
double median(std::vector<double> x);
/// Linear-interpolated quantile of an already sorted sample.
double quantile_sorted(std::span<const double> sorted, double prob);

double normal_cdf(double x);

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(log(2/delta) / (2n)).
double dkw_epsilon(std::size_t n, double delta);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for k successes out of n at z standard deviations.
Interval wilson_interval(double k, std::size_t n, double z);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double var_slope = 0.0;
  double var_intercept = 0.0;
  double cov = 0.0;
  double residual_ss = 0.0;
};

/// Weighted least squares y = intercept + slope * x. Empty weights means
/// ordinary least squares, with the covariance scaled by the residual
/// variance; with explicit weights (1/var) the covariance is (X'WX)^{-1}.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y,
                     std::span<const double> weights = {});

}  // namespace fracdev::stats
