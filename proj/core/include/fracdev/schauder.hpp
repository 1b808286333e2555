#pragma once

// Schauder (Faber) analysis of dyadic paths.
//
// psi(t) = (1 - |2t - 1|) on [0, 1], psi_jn(t) = psi(2^j t - n + 1) for
// 1 <= n <= 2^j, with knots t0 = (n-1) 2^-j, t1 = (n-1/2) 2^-j, t2 = n 2^-j
// (times are scaled by the horizon T). The second difference
//   r_jn = 2 f(t1) - f(t0) - f(t2)
// is stored as is; since psi_jn(t1) = 1, the coefficient of psi_jn in the
// expansion f = f(0)(1 - t) + f(1) t + sum c_jn psi_jn is c_jn = r_jn / 2.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fracdev/processes.hpp"
#include "fracdev/stats.hpp"

namespace fracdev::schauder {

/// psi_jn at t in [0, 1].
double schauder_function(unsigned j, std::size_t n, double t);

struct SchauderCoeffs {
  unsigned levels = 0;  // J: coefficients exist for j = 0 .. J-1
  double horizon = 1.0;
  double left = 0.0;   // f(0)
  double right = 0.0;  // f(T)
  std::vector<std::vector<double>> r;  // r[j][n-1]

  double second_difference(unsigned j, std::size_t n) const { return r.at(j).at(n - 1); }
  /// Coefficient of psi_jn in the expansion: r_jn / 2.
  double expansion_coefficient(unsigned j, std::size_t n) const { return 0.5 * second_difference(j, n); }
};

/// Requires N = 2^J + 1 samples; throws non_dyadic otherwise.
SchauderCoeffs decompose(std::span<const double> values, double horizon = 1.0);
SchauderCoeffs decompose(const process::Path& path);

/// Grid values of f(0)(1 - t) + f(T) t + sum_{j <= up_to} sum_n c_jn psi_jn.
/// up_to = -1 gives the linear part only. Rejects up_to >= J.
std::vector<double> reconstruct(const SchauderCoeffs& coeffs, int up_to);
std::vector<double> reconstruct(const SchauderCoeffs& coeffs);

enum class ScaleKind { rlp, lmp };

struct CoefficientScale {
  double sigma = 0.0;
  double error = 0.0;  // estimated absolute error of sigma
  ScaleKind kind = ScaleKind::rlp;
};

/// sigma_jn^alpha = int_0^inf |2(t1-s)_+^{H'} - (t0-s)_+^{H'} - (t2-s)_+^{H'}|^alpha ds,
/// the scale of r_jn for the RLP on [0, 1]. Relative tolerance `tol`.
CoefficientScale sigma_rlp(unsigned j, std::size_t n, double alpha, double hurst, double tol = 1e-10);

/// sigma_jn^alpha = 2^{-H alpha j} int_0^inf |2(u+n-1/2)^{H'} - (u+n-1)^{H'} - (u+n)^{H'}|^alpha du,
/// the scale of m_jn for the LMP. Zero when H' = 0.
CoefficientScale sigma_lmp(unsigned j, std::size_t n, double alpha, double hurst, double tol = 1e-10);

/// Thread-safe memo of sigma values keyed by (kind, alpha, H, j, n, tol).
class SigmaCache {
 public:
  SigmaCache();
  CoefficientScale get(ScaleKind kind, unsigned j, std::size_t n, double alpha, double hurst, double tol = 1e-10);
  std::size_t size() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct SigmaRow {
  unsigned j = 0;
  std::size_t n = 0;
  CoefficientScale scale;
};

/// sigma_jn for every j in [j_min, j_max] and 1 <= n <= 2^j, in parallel.
std::vector<SigmaRow> sigma_table(ScaleKind kind, double alpha, double hurst, unsigned j_min, unsigned j_max,
                                  double tol, unsigned threads);

/// Interior positions 2^{j-2} < n <= 3 * 2^{j-2}.
bool interior(unsigned j, std::size_t n);

struct ScalingOptions {
  unsigned level = 10;  // grid level J of the simulated paths
  unsigned j_min = 3;
  unsigned j_max = 9;
  std::size_t bootstrap = 200;
  std::uint64_t bootstrap_seed = 7;
  /// Two levels whose normalised coefficients r_jn / sigma_jn are compared
  /// with a two-sample KS test (RLP only; skipped when out of range).
  std::optional<std::pair<unsigned, unsigned>> ks_levels = std::pair<unsigned, unsigned>{5, 8};
  unsigned threads = 1;
  process::MeshOptions mesh;
};

struct LevelSummary {
  unsigned j = 0;
  std::size_t count = 0;
  double median_abs = 0.0;
};

struct ScalingReport {
  process::ProcessParams params;
  std::size_t n_paths = 0;
  std::vector<LevelSummary> levels;
  double slope = 0.0;  // OLS slope of log2(median |r_jn|) against j
  double slope_stderr = 0.0;  // bootstrap standard deviation
  double ci_low = 0.0;        // bootstrap 95% percentile interval
  double ci_high = 0.0;
  bool out_of_scope = false;  // H >= 2: decay check outside the theorem's range
  std::optional<stats::KsResult> ks;
};

/// Medians of |r_jn| over interior n for simulated RLP (kind RLP) or LMP
/// (kind LMP) paths, and the fitted log2 slope against j, which should be
/// close to -H.
ScalingReport coefficient_scaling_report(const process::ProcessParams& params, std::size_t n_paths,
                                         std::uint64_t seed, const ScalingOptions& options = {});

}  // namespace fracdev::schauder
