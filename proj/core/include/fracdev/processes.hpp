#pragma once

// Discrete simulation of stable Riemann-Liouville processes (RLP), the long
// memory part M (LMP), their sum X = R + M (LFSM) and the two-sided
// "well-balanced" moving average, all on dyadic grids of [0, T].
//
// Every stochastic integral is discretised cell by cell: a cell C carries
// the weight sign * (int_C |kernel|^alpha)^(1/alpha) times an independent
// unit SaS draw, which is exactly the law of int_C kernel dZ whenever the
// kernel keeps its sign on C. The stable scale of each cell is therefore
// exact and only the dependence between time points is approximated.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fracdev/stable_rng.hpp"

namespace fracdev::process {

enum class Kind { rlp, lmp, lfsm, balanced };

std::string_view to_string(Kind kind);
Kind kind_from_string(std::string_view name);

/// (alpha, H, kind). Validation per kind:
///   RLP       H > 0
///   LMP/LFSM  alpha in (1, 2], H in [1/alpha, 1)   (H = 1/alpha gives M = 0)
///   BALANCED  H in (0, 1); at H = 1/alpha the power kernel degenerates and
///             the log kernel log|t+s| - log|s| is used instead.
class ProcessParams {
 public:
  ProcessParams(Kind kind, double alpha, double hurst, bool normalize_gaussian = false);

  Kind kind() const noexcept { return kind_; }
  rng::StabilityIndex alpha() const noexcept { return alpha_; }
  double hurst() const noexcept { return hurst_; }
  /// H' = H - 1/alpha, the kernel exponent.
  double hurst_prime() const noexcept { return hurst_prime_; }
  bool normalize_gaussian() const noexcept { return normalize_; }
  /// True when H' is zero to rounding (H = 1/alpha).
  bool degenerate_kernel() const noexcept;
  /// 1/sqrt(2) when normalize_gaussian is set and alpha = 2, else 1.
  double noise_factor() const noexcept;
  /// alpha = 2 or H > 1/alpha: the process has a continuous version.
  bool continuous() const noexcept;

  ProcessParams with_kind(Kind kind) const { return ProcessParams(kind, alpha_.value(), hurst_, normalize_); }

  friend bool operator==(const ProcessParams&, const ProcessParams&) = default;

 private:
  Kind kind_;
  rng::StabilityIndex alpha_;
  double hurst_;
  double hurst_prime_;
  bool normalize_;
};

/// Uniform partition of [0, T] into N = 2^J cells.
class Grid {
 public:
  explicit Grid(unsigned level, double horizon = 1.0);

  unsigned level() const noexcept { return level_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t cells() const noexcept { return std::size_t{1} << level_; }
  std::size_t points() const noexcept { return cells() + 1; }
  double step() const noexcept { return horizon_ / static_cast<double>(cells()); }
  double time(std::size_t k) const noexcept { return static_cast<double>(k) * step(); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  unsigned level_;
  double horizon_;
};

/// Truncation of an integral over (0, infinity).
struct Truncation {
  double cutoff = 0.0;      // S: noise beyond S is dropped
  double tail_scale = 0.0;  // a-priori bound on the alpha-scale of the dropped part
  std::size_t cells = 0;    // noise cells in the discretisation
};

struct Path {
  Grid grid;
  std::vector<double> values;  // values[k] at grid.time(k)
  std::optional<ProcessParams> params;
  std::optional<Truncation> truncation;
};

/// Mesh for the LMP and balanced kernels. Positive side: [0, first * step]
/// then geometric cells of ratio `near_ratio` up to `far_start * T`, then
/// ratio `far_ratio` up to the cutoff. The negative side of the balanced
/// kernel uses half-step cells on [0, T] so that the singular points u = 0,
/// u = t and the sign change at t/2 are cell boundaries.
struct MeshOptions {
  double tail_tolerance = 1e-4;
  double first_cell_fraction = 1.0 / 64.0;
  double near_ratio = 1.125;
  double far_ratio = 1.5;
  double far_start = 64.0;
  double quadrature_tolerance = 1e-10;
  unsigned threads = 1;  // workers used to fill the weight matrix
};

/// Stream id used for component c (0: R or Z, 1: M, 2: balanced) of path i.
constexpr std::uint64_t stream_for(std::uint64_t path_index, unsigned component) noexcept {
  return 4 * path_index + component;
}

/// Cell weights of the RLP convolution: R_{t_k} = sum_{i<k} w[k-1-i] xi_i,
/// with xi_i the Levy increments (scale dt^{1/alpha}). w[m-1] is the
/// alpha-mean of (t - s)^{H'} over the m-th cell back from t, in closed form.
/// At H' = 0 every weight is exactly 1 and the convolution is a cumulative sum.
class RlpKernel {
 public:
  RlpKernel(const ProcessParams& params, const Grid& grid);

  std::span<const double> weights() const noexcept { return weights_; }
  /// Sum over cells [first_cell, k) of w[k-1-i] xi_i: the integral over
  /// [first_cell * dt, t_k]. With first_cell = 0 this is R_{t_k}.
  double at(std::span<const double> noise, std::size_t first_cell, std::size_t k) const;
  /// out[k] = R_{t_k} for k = 0..N; out.size() must be N + 1.
  void apply(std::span<const double> noise, std::span<double> out) const;

 private:
  bool identity_;
  std::vector<double> weights_;
};

struct MeshCell {
  double lo = 0.0;
  double hi = 0.0;
  int side = 1;  // +1: s > 0 (t + s); -1: u = -s > 0 (|t - u|)
};

/// Discretised integral of (t + s)^{H'} - s^{H'} over s > 0 (LMP), or of the
/// two-sided balanced kernel, as a dense (N+1) x cells weight matrix acting
/// on unit-scale draws.
class MovingAverageKernel {
 public:
  MovingAverageKernel(const ProcessParams& params, const Grid& grid, const MeshOptions& options = {});

  std::size_t cells() const noexcept { return mesh_.size(); }
  std::span<const MeshCell> mesh() const noexcept { return mesh_; }
  const Truncation& truncation() const noexcept { return truncation_; }
  std::span<const double> row(std::size_t k) const noexcept {
    return {weights_.data() + k * mesh_.size(), mesh_.size()};
  }
  void apply(std::span<const double> noise, std::span<double> out) const;

 private:
  std::size_t points_;
  std::vector<MeshCell> mesh_;
  std::vector<double> weights_;
  Truncation truncation_;
};

/// Cumulative sums of SaS increments of scale dt^{1/alpha}.
Path simulate_levy(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream);
Path simulate_rlp(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream);
Path simulate_lmp(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream,
                  const MeshOptions& options = {});

struct LfsmPath {
  Path total;
  Path rlp;
  Path lmp;
};
LfsmPath simulate_lfsm(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream_r,
                       rng::NoiseStream stream_m, const MeshOptions& options = {});
Path simulate_balanced(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream,
                       const MeshOptions& options = {});

/// Reusable simulator for many paths of one (params, grid). Kernels are
/// built once; path i under seed m uses streams stream_for(i, c), so the
/// RLP, LMP and LFSM of the same index share their components.
class PathSimulator {
 public:
  PathSimulator(const ProcessParams& params, const Grid& grid, const MeshOptions& options = {});

  const ProcessParams& params() const noexcept { return params_; }
  const Grid& grid() const noexcept { return grid_; }
  std::optional<Truncation> truncation() const;

  /// Per-thread scratch space.
  struct Workspace {
    std::vector<double> noise;
    std::vector<double> other;
  };

  /// Writes the N+1 path values into out.
  void simulate_into(std::uint64_t seed, std::uint64_t path_index, std::span<double> out,
                     Workspace& ws) const;
  Path simulate(std::uint64_t seed, std::uint64_t path_index) const;

 private:
  ProcessParams params_;
  Grid grid_;
  std::optional<RlpKernel> rlp_;
  std::optional<MovingAverageKernel> moving_;
};

}  // namespace fracdev::process
