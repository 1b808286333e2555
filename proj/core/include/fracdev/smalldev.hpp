#pragma once

// Monte-Carlo small ball probabilities P[||X|| <= eps], rate fitting, the
// Tauberian constant, and the superadditivity checks behind the existence
// of the small deviation constant.
//
// Determinism: path i of a run with master seed m is simulated from streams
// (m, stream_for(i + offset, c)). Paths are processed in fixed blocks whose
// partial results are reduced in block order, so every output is identical
// for any worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdev/processes.hpp"
#include "fracdev/seminorms.hpp"

namespace fracdev::smalldev {

struct SmallBallEstimate {
  double epsilon = 0.0;
  double p_hat = 0.0;
  std::size_t n_samples = 0;
  std::size_t hits = 0;  // paths with ||X|| <= eps on the grid
  double stderr_ = 0.0;
  double log_p = 0.0;         // log p_hat (NaN when censored)
  double log_p_stderr = 0.0;  // delta method: sqrt((1 - p) / (n p))
  bool censored = false;      // no hits: only the upper bound is meaningful
  double upper_ci = 0.0;      // one-sided 95% upper bound, 3/n when censored
};

struct McOptions {
  unsigned level = 10;  // grid level J
  std::uint64_t path_offset = 0;  // first path index
  std::size_t block = 1024;
  std::optional<unsigned> threads;  // default: resolve_threads()
  /// Continuous-time correction for the supremum of Brownian motion: each
  /// grid step contributes the probability that the Brownian bridge between
  /// the two samples stays inside (-eps, eps). Only for SUP on Brownian
  /// motion (alpha = 2, H = 1/2, RLP or LFSM).
  bool bridge_correction = false;
  process::MeshOptions mesh;
};

/// Minimum sample size accepted by the estimators.
inline constexpr std::size_t kMinSamples = 1000;

/// Simulates n paths once and evaluates the semi-norm; every epsilon is
/// tested on the same paths, so the estimates are monotone in epsilon.
std::vector<SmallBallEstimate> mc_small_ball(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec,
                                             const std::vector<double>& epsilons, std::size_t n_samples,
                                             std::uint64_t seed, const McOptions& options = {});

/// Semi-norm values of n simulated paths (path indices offset .. offset+n-1).
std::vector<double> sample_norms(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec,
                                 std::size_t n_samples, std::uint64_t seed, const McOptions& options = {});

/// Estimates from already computed norm values (plain counting).
std::vector<SmallBallEstimate> estimates_from_norms(const std::vector<double>& norms,
                                                    const std::vector<double>& epsilons);

/// P[sup_{[0,1]} |W| <= eps] for standard Brownian motion: eigenfunction
/// (theta) series for eps <= 1.5, reflection series above.
double bm_sup_oracle(double epsilon);

struct RateFit {
  double gamma_hat = 0.0;
  double K_hat = 0.0;
  double var_gamma = 0.0;
  double var_log_K = 0.0;
  double cov = 0.0;
  double eps_min = 0.0;
  double eps_max = 0.0;
  std::size_t points = 0;
  std::size_t censored = 0;  // estimates excluded for p_hat in {0, 1}
  bool weighted = false;
  std::optional<double> gamma_fixed;
  std::vector<double> K_per_point;  // -eps^gamma log p_hat (gamma_fixed only)
};

/// Least squares of log(-log p) on log(1/eps): slope gamma, intercept log K.
/// Weighted by the delta-method variances when every estimate carries a
/// standard error. With gamma_fixed the per-point K and their weighted mean
/// are returned instead.
RateFit fit_rate(const std::vector<SmallBallEstimate>& estimates, std::optional<double> gamma_fixed = std::nullopt);

/// K = (q - 1) (C / q)^{q / (q - 1)}.
double tauberian_constant(double C, double q);

struct SubadditivityCheck {
  double a = 0.0;
  double b = 0.0;
  double lhs = 0.0;    // Psi(a + b)
  double rhs = 0.0;    // Psi(a) + Psi(b)
  double slack = 0.0;  // 3 sigma
  bool pass = false;
};

struct LaplaceSummary {
  double q = 0.0;
  bool indicator_form = false;  // p = inf: Psi(h) = log P[||X|| <= h^{-(H - beta)}]
  std::vector<double> h;
  std::vector<double> psi;
  std::vector<double> psi_stderr;
  std::vector<SubadditivityCheck> checks;
  bool subadditive = false;
  bool monotone = false;
  double C_estimate = 0.0;  // -Psi(h_max) / h_max
  std::optional<double> K_estimate;  // tauberian_constant(C, q) when q > 1
  std::size_t n_samples = 0;
};

/// Psi(h) = log E[exp(-h^q ||X||^p)] with q = p (H - beta), estimated on the
/// union of `h_grid` and all pairwise sums, plus the subadditivity check
/// Psi(a+b) <= Psi(a) + Psi(b) + 3 sigma over grid pairs. For p = inf the
/// same statement is made about Psi(h) = log P[h^q ||X|| <= 1], q = H - beta,
/// which is the product inequality for the supremum-type class.
LaplaceSummary log_laplace(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec,
                           const std::vector<double>& h_grid, std::size_t n_samples, std::uint64_t seed,
                           const McOptions& options = {});

struct DominancePoint {
  double r = 0.0;
  double lhs = 0.0;    // empirical P[LHS <= r]
  double rhs = 0.0;    // empirical P[RHS <= r] (p < inf) or product (p = inf)
  double slack = 0.0;  // DKW band or 3 sigma
  bool pass = false;
};

struct DominanceReport {
  double a = 0.0;
  double b = 0.0;
  double q = 0.0;
  bool product_form = false;  // p = inf
  std::size_t n_samples = 0;
  std::vector<DominancePoint> points;
  double max_violation = 0.0;      // sup_r (F_lhs - F_rhs) over all r (p < inf)
  double max_abs_difference = 0.0;  // sup_r |F_lhs - F_rhs| (p < inf)
  double band = 0.0;               // DKW half-widths added (p < inf)
  bool pass = false;
};

/// Stochastic superadditivity (p < inf):
///   (a+b)^q ||X||^p  dominates  a^q ||X_1||^p + b^q ||X_2||^p,  q = p (H - beta),
/// checked as F_lhs(r) <= F_rhs(r) + DKW band (confidence 0.999) for all r.
/// For p = inf, q = H - beta and the product inequality
///   P[(a+b)^q ||X|| <= r] <= P[a^q ||X|| <= r] P[b^q ||X|| <= r]
/// is checked with 3 sigma slack on the r grid. The three laws use
/// disjoint path ranges. An empty r grid uses percentiles of the LHS.
DominanceReport dominance_check(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec, double a,
                                double b, std::vector<double> r_grid, std::size_t n_samples, std::uint64_t seed,
                                const McOptions& options = {});

struct NegligibilityRow {
  double epsilon = 0.0;
  SmallBallEstimate rlp;
  SmallBallEstimate lmp;
  double stat_rlp = 0.0;  // eps^gamma log p_R
  double stat_lmp = 0.0;  // eps^gamma log p_M
  double ratio = 0.0;     // |stat_lmp| / |stat_rlp|
  bool usable = false;    // both estimates have at least 50 hits
};

struct NegligibilityReport {
  double gamma = 0.0;
  std::vector<NegligibilityRow> rows;  // ascending epsilon
  std::optional<double> smallest_usable_epsilon;
  std::optional<double> ratio_at_smallest;
  bool ratio_small = false;       // ratio < 0.3 at the smallest usable epsilon
  bool monotone_trend = false;    // ratio decreasing as eps decreases over >= 3 usable points
  bool conjectural = false;       // discontinuous regime, no finiteness guarantee
};

/// Compares eps^gamma log P[||M|| <= eps] with the same statistic for the
/// RLP R of the same (alpha, H), on paths sharing their indices.
NegligibilityReport lmp_negligible(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec,
                                   std::vector<double> epsilons, std::size_t n_samples, std::uint64_t seed,
                                   const McOptions& options = {});

/// Epsilon grid for a run of n paths, chosen from a pilot sample so that
/// the smallest epsilon is expected to collect at least `min_hits` hits.
std::vector<double> pilot_epsilon_grid(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec,
                                       std::size_t n_samples, std::size_t count, std::uint64_t seed,
                                       const McOptions& options = {}, std::size_t min_hits = 50);

}  // namespace fracdev::smalldev
