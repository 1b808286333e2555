#include "fracdev/processes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "detail/quadrature.hpp"
#include "fracdev/error.hpp"
#include "fracdev/parallel.hpp"

namespace fracdev::process {

namespace {

constexpr double kDegenerateTol = 1e-12;

std::string fmt(double x) { return std::to_string(x); }

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::rlp: return "RLP";
    case Kind::lmp: return "LMP";
    case Kind::lfsm: return "LFSM";
    case Kind::balanced: return "BALANCED";
  }
  return "RLP";
}

Kind kind_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "RLP") return Kind::rlp;
  if (upper == "LMP") return Kind::lmp;
  if (upper == "LFSM") return Kind::lfsm;
  if (upper == "BALANCED") return Kind::balanced;
  throw Error(errc::invalid_argument, "unknown process kind '" + std::string(name) + "'");
}

ProcessParams::ProcessParams(Kind kind, double alpha, double hurst, bool normalize_gaussian)
    : kind_(kind), alpha_(alpha), hurst_(hurst), hurst_prime_(hurst - 1.0 / alpha), normalize_(normalize_gaussian) {
  require(std::isfinite(hurst) && hurst > 0.0, errc::invalid_argument, "Hurst index must be positive, got " + fmt(hurst));
  if (std::abs(hurst_prime_) < kDegenerateTol) hurst_prime_ = 0.0;
  switch (kind) {
    case Kind::rlp:
      break;
    case Kind::lmp:
    case Kind::lfsm:
      require(alpha > 1.0, errc::invalid_argument,
              std::string(to_string(kind)) + " requires alpha in (1, 2], got " + fmt(alpha));
      require(hurst < 1.0, errc::invalid_argument,
              "H >= 1: the long-memory integral diverges almost surely at infinity");
      require(hurst_prime_ >= 0.0, errc::invalid_argument,
              std::string(to_string(kind)) + " requires H >= 1/alpha, got H = " + fmt(hurst));
      break;
    case Kind::balanced:
      require(hurst < 1.0, errc::invalid_argument,
              "H >= 1: the balanced moving average diverges almost surely");
      break;
  }
}

bool ProcessParams::degenerate_kernel() const noexcept { return hurst_prime_ == 0.0; }

double ProcessParams::noise_factor() const noexcept {
  return (normalize_ && alpha_.gaussian()) ? 1.0 / std::sqrt(2.0) : 1.0;
}

bool ProcessParams::continuous() const noexcept {
  return alpha_.gaussian() || hurst_ > 1.0 / alpha_.value();
}

Grid::Grid(unsigned level, double horizon) : level_(level), horizon_(horizon) {
  require(level <= 24, errc::invalid_argument, "grid level J must be at most 24");
  require(std::isfinite(horizon) && horizon > 0.0, errc::invalid_argument, "grid horizon must be positive");
}

// ---------------------------------------------------------------- RLP

RlpKernel::RlpKernel(const ProcessParams& params, const Grid& grid)
    : identity_(params.degenerate_kernel()), weights_(grid.cells(), 1.0) {
  if (identity_) return;
  const double alpha = params.alpha().value();
  const double a = params.hurst_prime();
  const double b = alpha * a + 1.0;  // > 0 because H > 0
  const double dt_a = std::pow(grid.step(), a);
  // int_{m-1}^{m} x^{alpha a} dx = (m^b - (m-1)^b) / b, written to avoid cancellation.
  for (std::size_t m = 1; m <= weights_.size(); ++m) {
    const double md = static_cast<double>(m);
    const double cell = m == 1 ? 1.0 / b : -std::pow(md, b) * std::expm1(b * std::log1p(-1.0 / md)) / b;
    weights_[m - 1] = dt_a * std::pow(cell, 1.0 / alpha);
  }
}

double RlpKernel::at(std::span<const double> noise, std::size_t first_cell, std::size_t k) const {
  require(k <= noise.size() && first_cell <= k, errc::invalid_argument, "RlpKernel::at: index out of range");
  double sum = 0.0;
  if (identity_) {
    for (std::size_t i = first_cell; i < k; ++i) sum += noise[i];
  } else {
    for (std::size_t i = first_cell; i < k; ++i) sum += weights_[k - 1 - i] * noise[i];
  }
  return sum;
}

void RlpKernel::apply(std::span<const double> noise, std::span<double> out) const {
  const std::size_t n = weights_.size();
  require(noise.size() == n && out.size() == n + 1, errc::invalid_argument, "RlpKernel::apply: size mismatch");
  out[0] = 0.0;
  if (identity_) {
    for (std::size_t k = 1; k <= n; ++k) out[k] = out[k - 1] + noise[k - 1];
    return;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    const double* w = weights_.data() + (k - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += w[-static_cast<std::ptrdiff_t>(i)] * noise[i];
    out[k] = sum;
  }
}

// ---------------------------------------------------------------- moving averages

namespace {

// Kernel value at distance x from an anchor point of a cell. For side +1
// the point is s = anchor + sigma x and the kernel (t+s)^a - s^a; for side
// -1 it is u = anchor + sigma x and |t-u|^a - u^a. a = 0 means the log
// kernel. Differences to the singular points are formed from exact
// dyadic quantities so the integrand stays accurate next to them.
struct KernelEval {
  double a;
  bool log_kernel;

  double positive(double t, double s) const {
    if (log_kernel) return std::log1p(t / s);
    return std::pow(s, a) * std::expm1(a * std::log1p(t / s));
  }

  // u > 0 on the negative side; d = t - u computed exactly by the caller.
  double negative(double t, double u, double d) const {
    const double dist = std::abs(d);
    if (d < 0.0 && dist >= 0.5 * u) {
      if (log_kernel) return std::log1p(-t / u);
      return std::pow(u, a) * std::expm1(a * std::log1p(-t / u));
    }
    if (log_kernel) return std::log(dist) - std::log(u);
    return std::pow(dist, a) - std::pow(u, a);
  }

  double value(const MeshCell& cell, double t, double anchor, double sigma, double x) const {
    const double p = anchor + sigma * x;
    if (cell.side > 0) return positive(t, p);
    return negative(t, p, (t - anchor) - sigma * x);
  }
};

double cell_weight(const KernelEval& kernel, const MeshCell& cell, double t, double alpha, double tol) {
  if (t == 0.0) return 0.0;
  const double mid = 0.5 * (cell.lo + cell.hi);
  const double sign_value = kernel.value(cell, t, mid, 1.0, 0.0);
  if (sign_value == 0.0) return 0.0;
  const double sign = sign_value > 0.0 ? 1.0 : -1.0;

  const bool lo_singular = cell.lo == 0.0 || (cell.side < 0 && cell.lo == t);
  const bool hi_singular = cell.side < 0 && cell.hi == t;
  const auto power = [&](double anchor, double sigma) {
    return [&kernel, &cell, t, alpha, anchor, sigma](double x) {
      return std::pow(std::abs(kernel.value(cell, t, anchor, sigma, x)), alpha);
    };
  };

  double integral = 0.0;
  if (!lo_singular && !hi_singular) {
    integral = detail::gauss_legendre8(power(cell.lo, 1.0), 0.0, cell.hi - cell.lo);
  } else if (lo_singular && hi_singular) {
    const double half = 0.5 * (cell.hi - cell.lo);
    integral = detail::integrate_from_singularity(power(cell.lo, 1.0), half, tol).value +
               detail::integrate_from_singularity(power(cell.hi, -1.0), half, tol).value;
  } else if (lo_singular) {
    integral = detail::integrate_from_singularity(power(cell.lo, 1.0), cell.hi - cell.lo, tol).value;
  } else {
    integral = detail::integrate_from_singularity(power(cell.hi, -1.0), cell.hi - cell.lo, tol).value;
  }
  require(std::isfinite(integral), errc::quadrature, "kernel cell integral did not converge");
  return sign * std::pow(integral, 1.0 / alpha);
}

void append_geometric(std::vector<MeshCell>& mesh, double from, double to, double ratio, int side) {
  double lo = from;
  while (lo < to) {
    const double hi = std::min(lo * ratio, to);
    mesh.push_back({lo, hi, side});
    lo = hi;
  }
}

}  // namespace

MovingAverageKernel::MovingAverageKernel(const ProcessParams& params, const Grid& grid, const MeshOptions& options)
    : points_(grid.points()) {
  require(options.tail_tolerance > 0.0 && options.first_cell_fraction > 0.0 && options.first_cell_fraction <= 1.0 &&
              options.near_ratio > 1.0 && options.far_ratio > 1.0 && options.far_start >= 1.0,
          errc::invalid_argument, "invalid mesh options");
  const bool balanced = params.kind() == Kind::balanced;
  const double alpha = params.alpha().value();
  const double a = params.hurst_prime();
  const double horizon = grid.horizon();

  if (!balanced && params.degenerate_kernel()) {
    // (t+s)^0 - s^0 = 0: the long-memory part vanishes.
    truncation_ = Truncation{0.0, 0.0, 0};
    return;
  }
  require(params.hurst() < 1.0, errc::invalid_argument, "H >= 1: moving-average integral diverges");

  const KernelEval kernel{a, params.degenerate_kernel()};
  // Tail bound: |kernel| <= c T x^{a-1} beyond the cutoff, c = |a| (or 1 for the log kernel).
  const double c = kernel.log_kernel ? 1.0 : std::abs(a);
  const double expo = (a - 1.0) * alpha + 1.0;  // < 0 because H < 1
  const double denom = -expo;
  const auto tail_power = [&](double x) { return std::pow(c * horizon, alpha) * std::pow(x, expo) / denom; };
  const double budget = std::pow(options.tail_tolerance, alpha) / (balanced ? 2.0 : 1.0);
  double cutoff = std::pow(budget * denom / std::pow(c * horizon, alpha), 1.0 / expo);
  if (balanced) cutoff += horizon;
  cutoff = std::max(cutoff, 4.0 * horizon);

  const double step = grid.step();
  const double first = step * options.first_cell_fraction;
  const double far = options.far_start * horizon;
  mesh_.push_back({0.0, first, 1});
  append_geometric(mesh_, first, std::min(far, cutoff), options.near_ratio, 1);
  if (cutoff > far) append_geometric(mesh_, far, cutoff, options.far_ratio, 1);

  if (balanced) {
    const double half = 0.5 * step;
    for (std::size_t i = 0; i < 2 * grid.cells(); ++i) {
      mesh_.push_back({half * static_cast<double>(i), half * static_cast<double>(i + 1), -1});
    }
    append_geometric(mesh_, horizon, std::min(far, cutoff), options.near_ratio, -1);
    if (cutoff > far) append_geometric(mesh_, far, cutoff, options.far_ratio, -1);
  }

  double tail = tail_power(cutoff);
  if (balanced) tail += tail_power(cutoff - horizon);
  truncation_ = Truncation{cutoff, std::pow(tail, 1.0 / alpha), mesh_.size()};

  const std::size_t cols = mesh_.size();
  weights_.assign(points_ * cols, 0.0);
  parallel_for(points_, std::max(1u, options.threads), [&](std::size_t k) {
    const double t = grid.time(k);
    double* row = weights_.data() + k * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = cell_weight(kernel, mesh_[j], t, alpha, options.quadrature_tolerance);
    }
  });
}

void MovingAverageKernel::apply(std::span<const double> noise, std::span<double> out) const {
  require(noise.size() == mesh_.size() && out.size() == points_, errc::invalid_argument,
          "MovingAverageKernel::apply: size mismatch");
  const std::size_t cols = mesh_.size();
  for (std::size_t k = 0; k < points_; ++k) {
    const double* row = weights_.data() + k * cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += row[j] * noise[j];
    out[k] = sum;
  }
}

// ---------------------------------------------------------------- simulation

namespace {

std::vector<double> levy_increments(const ProcessParams& params, const Grid& grid, rng::NoiseStream& stream) {
  std::vector<double> xi(grid.cells());
  const double scale = std::pow(grid.step(), 1.0 / params.alpha().value()) * params.noise_factor();
  rng::fill_sas(params.alpha(), scale, xi, stream);
  return xi;
}

std::vector<double> unit_noise(const ProcessParams& params, std::size_t n, rng::NoiseStream& stream) {
  std::vector<double> y(n);
  rng::fill_sas(params.alpha(), params.noise_factor(), y, stream);
  return y;
}

Path make_path(const Grid& grid, const ProcessParams& params) {
  return Path{grid, std::vector<double>(grid.points(), 0.0), params, std::nullopt};
}

}  // namespace

Path simulate_levy(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream) {
  Path path = make_path(grid, params);
  const auto xi = levy_increments(params, grid, stream);
  for (std::size_t k = 1; k < path.values.size(); ++k) path.values[k] = path.values[k - 1] + xi[k - 1];
  return path;
}

Path simulate_rlp(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream) {
  const ProcessParams p = params.with_kind(Kind::rlp);
  Path path = make_path(grid, p);
  const auto xi = levy_increments(p, grid, stream);
  RlpKernel(p, grid).apply(xi, path.values);
  return path;
}

Path simulate_lmp(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream, const MeshOptions& options) {
  const ProcessParams p = params.with_kind(Kind::lmp);
  Path path = make_path(grid, p);
  const MovingAverageKernel kernel(p, grid, options);
  path.truncation = kernel.truncation();
  if (kernel.cells() == 0) return path;
  kernel.apply(unit_noise(p, kernel.cells(), stream), path.values);
  return path;
}

LfsmPath simulate_lfsm(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream_r,
                       rng::NoiseStream stream_m, const MeshOptions& options) {
  const ProcessParams p = params.with_kind(Kind::lfsm);
  LfsmPath out{make_path(grid, p), simulate_rlp(p, grid, stream_r), simulate_lmp(p, grid, stream_m, options)};
  for (std::size_t k = 0; k < grid.points(); ++k) out.total.values[k] = out.rlp.values[k] + out.lmp.values[k];
  out.total.truncation = out.lmp.truncation;
  return out;
}

Path simulate_balanced(const ProcessParams& params, const Grid& grid, rng::NoiseStream stream,
                       const MeshOptions& options) {
  const ProcessParams p = params.with_kind(Kind::balanced);
  Path path = make_path(grid, p);
  const MovingAverageKernel kernel(p, grid, options);
  path.truncation = kernel.truncation();
  kernel.apply(unit_noise(p, kernel.cells(), stream), path.values);
  return path;
}

PathSimulator::PathSimulator(const ProcessParams& params, const Grid& grid, const MeshOptions& options)
    : params_(params), grid_(grid) {
  switch (params.kind()) {
    case Kind::rlp:
      rlp_.emplace(params, grid);
      break;
    case Kind::lmp:
      moving_.emplace(params, grid, options);
      break;
    case Kind::lfsm:
      rlp_.emplace(params, grid);
      moving_.emplace(params, grid, options);
      break;
    case Kind::balanced:
      moving_.emplace(params, grid, options);
      break;
  }
}

std::optional<Truncation> PathSimulator::truncation() const {
  if (moving_) return moving_->truncation();
  return std::nullopt;
}

void PathSimulator::simulate_into(std::uint64_t seed, std::uint64_t path_index, std::span<double> out,
                                  Workspace& ws) const {
  require(out.size() == grid_.points(), errc::invalid_argument, "simulate_into: output size mismatch");
  const auto alpha = params_.alpha();
  if (rlp_) {
    rng::NoiseStream stream(seed, stream_for(path_index, 0));
    ws.noise.resize(grid_.cells());
    const double scale = std::pow(grid_.step(), 1.0 / alpha.value()) * params_.noise_factor();
    rng::fill_sas(alpha, scale, ws.noise, stream);
    rlp_->apply(ws.noise, out);
  }
  if (!moving_) return;
  const unsigned component = params_.kind() == Kind::balanced ? 2 : 1;
  std::span<double> target = out;
  if (rlp_) {
    ws.other.resize(out.size());
    target = ws.other;
  }
  if (moving_->cells() == 0) {
    std::fill(target.begin(), target.end(), 0.0);
  } else {
    rng::NoiseStream stream(seed, stream_for(path_index, component));
    ws.noise.resize(moving_->cells());
    rng::fill_sas(alpha, params_.noise_factor(), ws.noise, stream);
    moving_->apply(ws.noise, target);
  }
  if (rlp_) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += ws.other[k];
  }
}

Path PathSimulator::simulate(std::uint64_t seed, std::uint64_t path_index) const {
  Path path = make_path(grid_, params_);
  path.truncation = truncation();
  Workspace ws;
  simulate_into(seed, path_index, path.values, ws);
  return path;
}

}  // namespace fracdev::process
