#pragma once

// Functional semi-norms evaluated on sampled paths, and their (beta, p)
// classes.
//
// Every evaluation is the grid-restricted surrogate of the continuous
// functional: suprema run over grid points or grid pairs, integrals use the
// composite trapezoid rule. Values therefore depend on the grid step and
// converge to the continuous semi-norm only as the grid is refined.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fracdev/processes.hpp"

namespace fracdev::seminorm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Kind { sup, lp, holder, calderon_zygmund, lipschitz, pvar, sobolev, besov };

std::string_view to_string(Kind kind);
Kind kind_from_string(std::string_view name);

/// Parameter ranges:
///   LP, PVAR    p >= 1
///   HOLDER      0 <= eta < 1 (eta = 0 is the oscillation)
///   LIPSCHITZ   eta > 1
///   SOBOLEV     p >= 1, 0 <= eta + 1/p < 1
///   BESOV       eta > 0, p, q in [1, inf]
struct SemiNormSpec {
  Kind kind = Kind::sup;
  double eta = 0.0;
  double p = kInf;
  double q = kInf;

  static SemiNormSpec sup() { return {Kind::sup}; }
  static SemiNormSpec lp(double p) { return {Kind::lp, 0.0, p}; }
  static SemiNormSpec holder(double eta) { return {Kind::holder, eta}; }
  static SemiNormSpec calderon_zygmund() { return {Kind::calderon_zygmund}; }
  static SemiNormSpec lipschitz(double eta) { return {Kind::lipschitz, eta}; }
  static SemiNormSpec pvar(double p) { return {Kind::pvar, 0.0, p}; }
  static SemiNormSpec sobolev(double eta, double p) { return {Kind::sobolev, eta, p}; }
  static SemiNormSpec besov(double eta, double p, double q) { return {Kind::besov, eta, p, q}; }

  friend bool operator==(const SemiNormSpec&, const SemiNormSpec&) = default;
};

/// Throws invalid_argument naming the violated range.
void validate(const SemiNormSpec& spec);
std::string describe(const SemiNormSpec& spec);

enum class Membership { n, n_tilde_schauder, u_only };
std::string_view to_string(Membership m);

struct SemiNormClass {
  double beta = 0.0;
  double p_index = kInf;
  /// Constant of p-subadditivity (G) for functions vanishing at the split
  /// points; empty when no constant is asserted.
  std::optional<double> c_p;
  Membership membership = Membership::n;
  /// Self-similarity index and p of the upper class U(beta, p). Differs
  /// from (beta, p_index) only for BESOV, whose rate-table class is
  /// (eta, inf) while the functional scales with eta - 1/p.
  double u_beta = 0.0;
  double u_p = kInf;
  /// Constant used for the wide-sense condition on level-j Schauder sums.
  /// Empty for SOBOLEV and BESOV, whose check is level uniformity instead.
  std::optional<double> wide_sense_constant;
};

SemiNormClass classify(const SemiNormSpec& spec);

/// Closed index range [first, last] of grid points, first < last.
struct GridInterval {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Interval [a, b] of a grid; both endpoints must be grid points.
GridInterval interval_from_times(const process::Grid& grid, double a, double b);

/// Semi-norm of samples v[0..m] at spacing `step` (the interval has length m * step).
double evaluate(const SemiNormSpec& spec, std::span<const double> values, double step);
double evaluate(const SemiNormSpec& spec, const process::Path& path, GridInterval interval);
double evaluate(const SemiNormSpec& spec, const process::Path& path);

}  // namespace fracdev::seminorm
