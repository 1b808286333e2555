#include "fracdev/smalldev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracdev/error.hpp"
#include "fracdev/parallel.hpp"
#include "fracdev/rates.hpp"
#include "fracdev/stats.hpp"

namespace fracdev::smalldev {

using process::Kind;
using process::ProcessParams;
using seminorm::SemiNormSpec;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZ95 = 1.6448536269514722;  // one-sided 95%

void check_samples(std::size_t n) {
  require(n >= kMinSamples, errc::invalid_argument,
          "n_samples must be at least " + std::to_string(kMinSamples) + ", got " + std::to_string(n));
}

void check_epsilons(const std::vector<double>& epsilons) {
  require(!epsilons.empty(), errc::invalid_argument, "epsilon grid is empty");
  for (double e : epsilons) {
    require(std::isfinite(e) && e > 0.0, errc::invalid_argument, "epsilon must be positive and finite");
  }
}

bool bridge_applicable(const ProcessParams& params, const SemiNormSpec& spec) {
  return spec.kind == seminorm::Kind::sup && params.alpha().gaussian() && params.degenerate_kernel() &&
         (params.kind() == Kind::rlp || params.kind() == Kind::lfsm);
}

// Probability that the Brownian bridge from x to y over one step stays in
// (-eps, eps), for a motion with variance `var` per unit time.
double bridge_weight(std::span<const double> v, double eps, double var_step) {
  double w = 1.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double x = v[k];
    const double y = v[k + 1];
    const double up = 2.0 * (eps - x) * (eps - y) / var_step;
    const double down = 2.0 * (eps + x) * (eps + y) / var_step;
    // exp(-40) is below the resolution of the product.
    if (up < 40.0) w *= -std::expm1(-up);
    if (down < 40.0) w *= -std::expm1(-down);
  }
  return w;
}

SmallBallEstimate counted(double eps, std::size_t hits, std::size_t n) {
  SmallBallEstimate e;
  e.epsilon = eps;
  e.n_samples = n;
  e.hits = hits;
  const double nn = static_cast<double>(n);
  e.p_hat = static_cast<double>(hits) / nn;
  e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / nn);
  e.censored = hits == 0;
  if (e.censored) {
    e.log_p = kNaN;
    e.log_p_stderr = kNaN;
    e.upper_ci = 3.0 / nn;
  } else {
    e.log_p = std::log(e.p_hat);
    e.log_p_stderr = std::sqrt((1.0 - e.p_hat) / (nn * e.p_hat));
    e.upper_ci = stats::wilson_interval(static_cast<double>(hits), n, kZ95).high;
  }
  return e;
}

double q_index(const ProcessParams& params, const seminorm::SemiNormClass& cls) {
  const double gap = params.hurst() - cls.beta;
  require(gap > 0.0, errc::not_applicable, "H must exceed beta for the scaling exponent q");
  return std::isinf(cls.p_index) ? gap : cls.p_index * gap;
}

}  // namespace

std::vector<double> sample_norms(const ProcessParams& params, const SemiNormSpec& spec, std::size_t n_samples,
                                 std::uint64_t seed, const McOptions& options) {
  seminorm::validate(spec);
  require(n_samples > 0, errc::empty_sample, "sample_norms: n_samples must be positive");
  const process::Grid grid(options.level);
  const process::PathSimulator sim(params, grid, options.mesh);
  std::vector<double> norms(n_samples);
  parallel_blocks(n_samples, options.block, resolve_threads(options.threads),
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    process::PathSimulator::Workspace ws;
                    std::vector<double> values(grid.points());
                    for (std::size_t i = begin; i < end; ++i) {
                      sim.simulate_into(seed, options.path_offset + i, values, ws);
                      norms[i] = seminorm::evaluate(spec, values, grid.step());
                    }
                  });
  return norms;
}

std::vector<SmallBallEstimate> estimates_from_norms(const std::vector<double>& norms,
                                                    const std::vector<double>& epsilons) {
  require(!norms.empty(), errc::empty_sample, "no norm values");
  check_epsilons(epsilons);
  std::vector<double> sorted = norms;
  std::sort(sorted.begin(), sorted.end());
  std::vector<SmallBallEstimate> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    const auto hits = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), eps) - sorted.begin());
    out.push_back(counted(eps, hits, norms.size()));
  }
  return out;
}

std::vector<SmallBallEstimate> mc_small_ball(const ProcessParams& params, const SemiNormSpec& spec,
                                             const std::vector<double>& epsilons, std::size_t n_samples,
                                             std::uint64_t seed, const McOptions& options) {
  check_samples(n_samples);
  check_epsilons(epsilons);
  seminorm::validate(spec);
  if (!options.bridge_correction) {
    return estimates_from_norms(sample_norms(params, spec, n_samples, seed, options), epsilons);
  }
  require(bridge_applicable(params, spec), errc::not_applicable,
          "bridge correction needs SUP on Brownian motion (alpha = 2, H = 1/2)");

  const process::Grid grid(options.level);
  const process::PathSimulator sim(params, grid, options.mesh);
  const double var_step = (params.normalize_gaussian() ? 1.0 : 2.0) * grid.step();
  const std::size_t m = epsilons.size();
  const std::size_t block = std::max<std::size_t>(options.block, 1);
  const std::size_t blocks = (n_samples + block - 1) / block;
  // Per block and epsilon: grid hits, sum of weights, sum of squared weights.
  std::vector<std::size_t> hits(blocks * m, 0);
  std::vector<double> sum(blocks * m, 0.0);
  std::vector<double> sum_sq(blocks * m, 0.0);
  parallel_blocks(n_samples, block, resolve_threads(options.threads),
                  [&](std::size_t b, std::size_t begin, std::size_t end) {
                    process::PathSimulator::Workspace ws;
                    std::vector<double> values(grid.points());
                    for (std::size_t i = begin; i < end; ++i) {
                      sim.simulate_into(seed, options.path_offset + i, values, ws);
                      const double norm = seminorm::evaluate(spec, values, grid.step());
                      for (std::size_t e = 0; e < m; ++e) {
                        if (norm > epsilons[e]) continue;
                        const double w = bridge_weight(values, epsilons[e], var_step);
                        ++hits[b * m + e];
                        sum[b * m + e] += w;
                        sum_sq[b * m + e] += w * w;
                      }
                    }
                  });

  const double nn = static_cast<double>(n_samples);
  std::vector<SmallBallEstimate> out;
  out.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t h = 0;
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      h += hits[b * m + e];
      s += sum[b * m + e];
      s2 += sum_sq[b * m + e];
    }
    SmallBallEstimate est = counted(epsilons[e], h, n_samples);
    est.p_hat = s / nn;
    const double var = std::max(0.0, (s2 / nn - est.p_hat * est.p_hat) * nn / (nn - 1.0));
    est.stderr_ = std::sqrt(var / nn);
    if (est.p_hat > 0.0) {
      est.censored = false;
      est.log_p = std::log(est.p_hat);
      est.log_p_stderr = est.stderr_ / est.p_hat;
      est.upper_ci = est.p_hat + kZ95 * est.stderr_;
    }
    out.push_back(est);
  }
  return out;
}

double bm_sup_oracle(double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, errc::invalid_argument, "epsilon must be positive and finite");
  using std::numbers::pi;
  if (epsilon <= 1.5) {
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double m = 2.0 * k + 1.0;
      const double term = std::exp(-m * m * pi * pi / (8.0 * epsilon * epsilon)) / m;
      sum += (k % 2 == 0) ? term : -term;
      if (term < 1e-18) break;
    }
    return 4.0 / pi * sum;
  }
  // sum_k (-1)^k [Phi((2k+1) eps) - Phi((2k-1) eps)], paired in k and -k.
  const double s = epsilon / std::numbers::sqrt2;
  double sum = std::erf(s);
  for (int k = 1; k < 100; ++k) {
    const double term = std::erfc((2.0 * k - 1.0) * s) - std::erfc((2.0 * k + 1.0) * s);
    sum += (k % 2 == 0) ? term : -term;
    if (term < 1e-18) break;
  }
  return sum;
}

RateFit fit_rate(const std::vector<SmallBallEstimate>& estimates, std::optional<double> gamma_fixed) {
  RateFit fit;
  fit.gamma_fixed = gamma_fixed;
  std::vector<const SmallBallEstimate*> usable;
  for (const auto& e : estimates) {
    if (e.p_hat > 0.0 && e.p_hat < 1.0) {
      usable.push_back(&e);
    } else {
      ++fit.censored;
    }
  }
  require(usable.size() >= 3, errc::invalid_argument,
          "fit_rate needs at least 3 estimates with p_hat in (0, 1), got " + std::to_string(usable.size()));
  fit.points = usable.size();
  fit.eps_min = usable.front()->epsilon;
  fit.eps_max = fit.eps_min;
  bool distinct = false;
  bool have_errors = true;
  for (const auto* e : usable) {
    require(std::isfinite(e->epsilon) && e->epsilon > 0.0, errc::invalid_argument, "epsilon must be positive");
    distinct = distinct || e->epsilon != fit.eps_min;
    fit.eps_min = std::min(fit.eps_min, e->epsilon);
    fit.eps_max = std::max(fit.eps_max, e->epsilon);
    have_errors = have_errors && std::isfinite(e->log_p_stderr) && e->log_p_stderr > 0.0;
  }
  require(distinct, errc::degenerate_design, "fit_rate: all epsilons are equal");
  fit.weighted = have_errors;

  if (gamma_fixed) {
    const double gamma = *gamma_fixed;
    require(std::isfinite(gamma) && gamma > 0.0, errc::invalid_argument, "gamma_fixed must be positive");
    double sw = 0.0;
    double swk = 0.0;
    for (const auto* e : usable) {
      const double scale = std::pow(e->epsilon, gamma);
      const double k = -scale * std::log(e->p_hat);
      fit.K_per_point.push_back(k);
      const double w = have_errors ? 1.0 / std::pow(scale * e->log_p_stderr, 2) : 1.0;
      sw += w;
      swk += w * k;
    }
    fit.gamma_hat = gamma;
    fit.K_hat = swk / sw;
    if (have_errors) {
      fit.var_log_K = 1.0 / sw / (fit.K_hat * fit.K_hat);
    } else {
      const auto& ks = fit.K_per_point;
      fit.var_log_K = stats::variance(ks) / static_cast<double>(ks.size()) / (fit.K_hat * fit.K_hat);
    }
    return fit;
  }

  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
  for (const auto* e : usable) {
    const double lp = std::log(e->p_hat);
    x.push_back(-std::log(e->epsilon));
    y.push_back(std::log(-lp));
    if (have_errors) w.push_back(std::pow(lp / e->log_p_stderr, 2));
  }
  const auto lf = stats::linear_fit(x, y, w);
  fit.gamma_hat = lf.slope;
  fit.K_hat = std::exp(lf.intercept);
  fit.var_gamma = lf.var_slope;
  fit.var_log_K = lf.var_intercept;
  fit.cov = lf.cov;
  return fit;
}

double tauberian_constant(double C, double q) {
  require(std::isfinite(q) && q > 1.0, errc::invalid_argument, "tauberian_constant needs q > 1");
  require(std::isfinite(C) && C >= 0.0, errc::invalid_argument, "tauberian_constant needs C >= 0");
  return (q - 1.0) * std::pow(C / q, q / (q - 1.0));
}

LaplaceSummary log_laplace(const ProcessParams& params, const SemiNormSpec& spec, const std::vector<double>& h_grid,
                           std::size_t n_samples, std::uint64_t seed, const McOptions& options) {
  check_samples(n_samples);
  require(!h_grid.empty(), errc::invalid_argument, "h grid is empty");
  for (double h : h_grid) require(std::isfinite(h) && h >= 0.0, errc::invalid_argument, "h must be non-negative");
  const auto cls = seminorm::classify(spec);

  LaplaceSummary out;
  out.q = q_index(params, cls);
  out.indicator_form = std::isinf(cls.p_index);
  out.n_samples = n_samples;

  std::vector<double> grid = h_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  out.h = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) out.h.push_back(grid[i] + grid[j]);
  }
  std::sort(out.h.begin(), out.h.end());
  out.h.erase(std::unique(out.h.begin(), out.h.end()), out.h.end());

  const auto norms = sample_norms(params, spec, n_samples, seed, options);
  const double nn = static_cast<double>(n_samples);
  std::vector<double> z(n_samples);
  for (double h : out.h) {
    const double hq = std::pow(h, out.q);
    if (out.indicator_form) {
      const double radius = 1.0 / hq;
      const auto hits = static_cast<double>(std::count_if(norms.begin(), norms.end(),
                                                          [&](double v) { return v <= radius; }));
      const double p = hits / nn;
      out.psi.push_back(hits > 0 ? std::log(p) : -std::numeric_limits<double>::infinity());
      out.psi_stderr.push_back(hits > 0 ? std::sqrt((1.0 - p) / (nn * p)) : std::numeric_limits<double>::infinity());
      continue;
    }
    for (std::size_t i = 0; i < n_samples; ++i) z[i] = -hq * std::pow(norms[i], cls.p_index);
    const double zmax = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    double s2 = 0.0;
    for (double v : z) {
      const double e = std::exp(v - zmax);
      s += e;
      s2 += e * e;
    }
    const double mean = s / nn;
    const double var = std::max(0.0, (s2 / nn - mean * mean) * nn / (nn - 1.0));
    out.psi.push_back(zmax + std::log(mean));
    out.psi_stderr.push_back(std::sqrt(var / nn) / mean);
  }

  const auto at = [&](double h) {
    const auto it = std::lower_bound(out.h.begin(), out.h.end(), h);
    return static_cast<std::size_t>(it - out.h.begin());
  };
  out.subadditive = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      SubadditivityCheck c;
      c.a = grid[i];
      c.b = grid[j];
      const std::size_t ia = at(c.a);
      const std::size_t ib = at(c.b);
      const std::size_t is = at(c.a + c.b);
      c.lhs = out.psi[is];
      c.rhs = out.psi[ia] + out.psi[ib];
      c.slack = 3.0 * std::sqrt(out.psi_stderr[is] * out.psi_stderr[is] + out.psi_stderr[ia] * out.psi_stderr[ia] +
                                out.psi_stderr[ib] * out.psi_stderr[ib]);
      c.pass = c.lhs == -std::numeric_limits<double>::infinity() || c.lhs <= c.rhs + c.slack;
      out.subadditive = out.subadditive && c.pass;
      out.checks.push_back(c);
    }
  }
  out.monotone = std::is_sorted(out.psi.rbegin(), out.psi.rend());
  out.C_estimate = -out.psi.back() / out.h.back();
  if (!out.indicator_form && out.q > 1.0 && std::isfinite(out.C_estimate)) {
    out.K_estimate = tauberian_constant(out.C_estimate, out.q);
  }
  return out;
}

DominanceReport dominance_check(const ProcessParams& params, const SemiNormSpec& spec, double a, double b,
                                std::vector<double> r_grid, std::size_t n_samples, std::uint64_t seed,
                                const McOptions& options) {
  check_samples(n_samples);
  require(std::isfinite(a) && a > 0.0, errc::invalid_argument, "a must be positive");
  require(std::isfinite(b) && b >= 0.0, errc::invalid_argument, "b must be non-negative");
  const auto cls = seminorm::classify(spec);

  DominanceReport rep;
  rep.a = a;
  rep.b = b;
  rep.q = q_index(params, cls);
  rep.product_form = std::isinf(cls.p_index);
  rep.n_samples = n_samples;

  std::vector<std::vector<double>> sets;
  for (std::uint64_t s = 0; s < 3; ++s) {
    McOptions o = options;
    o.path_offset = options.path_offset + s * n_samples;
    sets.push_back(sample_norms(params, spec, n_samples, seed, o));
  }
  const double nn = static_cast<double>(n_samples);
  const double ca = std::pow(a, rep.q);
  const double cb = std::pow(b, rep.q);
  const double cab = std::pow(a + b, rep.q);

  const auto default_grid = [&](const std::vector<double>& sorted_lhs, double lo, double hi, double step) {
    std::vector<double> g;
    for (double pr = lo; pr <= hi + 1e-12; pr += step) g.push_back(stats::quantile_sorted(sorted_lhs, pr));
    return g;
  };
  const auto cdf = [&](const std::vector<double>& sorted, double r) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), r) - sorted.begin()) / nn;
  };

  if (!rep.product_form) {
    const double p = cls.p_index;
    std::vector<double> lhs(n_samples);
    std::vector<double> rhs(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
      lhs[i] = cab * std::pow(sets[0][i], p);
      rhs[i] = ca * std::pow(sets[1][i], p) + cb * std::pow(sets[2][i], p);
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    rep.band = 2.0 * stats::dkw_epsilon(n_samples, 0.0005);
    // Exact sup over r: the CDF difference only changes at sample points.
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < n_samples || j < n_samples) {
      const double r = (j >= n_samples || (i < n_samples && lhs[i] <= rhs[j])) ? lhs[i] : rhs[j];
      while (i < n_samples && lhs[i] <= r) ++i;
      while (j < n_samples && rhs[j] <= r) ++j;
      const double d = (static_cast<double>(i) - static_cast<double>(j)) / nn;
      rep.max_violation = std::max(rep.max_violation, d);
      rep.max_abs_difference = std::max(rep.max_abs_difference, std::abs(d));
    }
    if (r_grid.empty()) r_grid = default_grid(lhs, 0.01, 0.99, 0.01);
    for (double r : r_grid) {
      DominancePoint pt{r, cdf(lhs, r), cdf(rhs, r), rep.band, false};
      pt.pass = pt.lhs <= pt.rhs + pt.slack;
      rep.points.push_back(pt);
    }
    rep.pass = rep.max_violation <= rep.band;
    return rep;
  }

  for (auto& s : sets) std::sort(s.begin(), s.end());
  if (r_grid.empty()) {
    std::vector<double> scaled = sets[0];
    for (double& v : scaled) v *= cab;
    r_grid = default_grid(scaled, 0.05, 0.95, 0.05);
  }
  rep.pass = true;
  for (double r : r_grid) {
    const double p0 = cdf(sets[0], r / cab);
    const double p1 = cdf(sets[1], r / ca);
    const double p2 = cb > 0.0 ? cdf(sets[2], r / cb) : (r >= 0.0 ? 1.0 : 0.0);
    const double var = (p0 * (1.0 - p0) + p2 * p2 * p1 * (1.0 - p1) + p1 * p1 * p2 * (1.0 - p2)) / nn;
    DominancePoint pt{r, p0, p1 * p2, 3.0 * std::sqrt(var), false};
    pt.pass = pt.lhs <= pt.rhs + pt.slack;
    rep.pass = rep.pass && pt.pass;
    rep.max_violation = std::max(rep.max_violation, pt.lhs - pt.rhs);
    rep.max_abs_difference = std::max(rep.max_abs_difference, std::abs(pt.lhs - pt.rhs));
    rep.points.push_back(pt);
  }
  return rep;
}

NegligibilityReport lmp_negligible(const ProcessParams& params, const SemiNormSpec& spec,
                                   std::vector<double> epsilons, std::size_t n_samples, std::uint64_t seed,
                                   const McOptions& options) {
  check_samples(n_samples);
  const auto cls = seminorm::classify(spec);
  const ProcessParams r_params = params.with_kind(Kind::rlp);
  const ProcessParams m_params = params.with_kind(Kind::lmp);
  const auto gamma = rates::rate_gamma(params.hurst(), cls);
  require(gamma.applicable(), errc::not_applicable, gamma.violated);

  NegligibilityReport rep;
  rep.gamma = *gamma.gamma;
  rep.conjectural = rates::finiteness_condition(params.hurst(), params.alpha().value(), cls) !=
                    rates::Finiteness::constant_exists_finite;

  const auto r_norms = sample_norms(r_params, spec, n_samples, seed, options);
  const auto m_norms = sample_norms(m_params, spec, n_samples, seed, options);
  if (epsilons.empty()) {
    std::vector<double> sorted = r_norms;
    std::sort(sorted.begin(), sorted.end());
    const double lo = stats::quantile_sorted(sorted, std::min(0.5, 100.0 / static_cast<double>(n_samples)));
    const double hi = stats::quantile_sorted(sorted, 0.5);
    for (int i = 0; i < 6; ++i) epsilons.push_back(lo * std::pow(hi / lo, i / 5.0));
  }
  check_epsilons(epsilons);
  std::sort(epsilons.begin(), epsilons.end());
  const auto r_est = estimates_from_norms(r_norms, epsilons);
  const auto m_est = estimates_from_norms(m_norms, epsilons);

  std::vector<double> usable_ratios;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    NegligibilityRow row;
    row.epsilon = epsilons[i];
    row.rlp = r_est[i];
    row.lmp = m_est[i];
    const double scale = std::pow(row.epsilon, rep.gamma);
    row.stat_rlp = row.rlp.hits > 0 ? scale * row.rlp.log_p : kNaN;
    row.stat_lmp = row.lmp.hits > 0 ? scale * row.lmp.log_p : kNaN;
    row.ratio = std::abs(row.stat_lmp) / std::abs(row.stat_rlp);
    row.usable = row.rlp.hits >= 50 && row.lmp.hits >= 50 && std::isfinite(row.ratio);
    if (row.usable) {
      usable_ratios.push_back(row.ratio);
      if (!rep.smallest_usable_epsilon) {
        rep.smallest_usable_epsilon = row.epsilon;
        rep.ratio_at_smallest = row.ratio;
      }
    }
    rep.rows.push_back(row);
  }
  rep.ratio_small = rep.ratio_at_smallest && *rep.ratio_at_smallest < 0.3;
  rep.monotone_trend = usable_ratios.size() >= 3 && std::is_sorted(usable_ratios.begin(), usable_ratios.end());
  return rep;
}

std::vector<double> pilot_epsilon_grid(const ProcessParams& params, const SemiNormSpec& spec,
                                       std::size_t n_samples, std::size_t count, std::uint64_t seed,
                                       const McOptions& options, std::size_t min_hits) {
  check_samples(n_samples);
  require(count >= 2, errc::invalid_argument, "epsilon grid needs at least 2 points");
  const std::size_t pilot = std::min<std::size_t>(n_samples, 20000);
  McOptions o = options;
  o.path_offset = options.path_offset + (std::uint64_t{1} << 40);
  auto norms = sample_norms(params, spec, pilot, seed, o);
  std::sort(norms.begin(), norms.end());
  // Twice the target hit rate, but no deeper than the pilot can resolve.
  const double target = 2.0 * static_cast<double>(min_hits) / static_cast<double>(n_samples);
  const double prob = std::min(0.25, std::max(target, 20.0 / static_cast<double>(pilot)));
  const double lo = stats::quantile_sorted(norms, prob);
  const double hi = stats::quantile_sorted(norms, 0.5);
  require(lo > 0.0 && hi > lo, errc::degenerate_design, "pilot norms are degenerate; pass epsilons explicitly");
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1)));
  }
  return grid;
}

}  // namespace fracdev::smalldev
