#include "fracdev/schauder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "detail/quadrature.hpp"
#include "fracdev/error.hpp"
#include "fracdev/parallel.hpp"

namespace fracdev::schauder {

double schauder_function(unsigned j, std::size_t n, double t) {
  const double x = std::ldexp(t, static_cast<int>(j)) - static_cast<double>(n) + 1.0;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 1.0 - std::abs(2.0 * x - 1.0);
}

SchauderCoeffs decompose(std::span<const double> values, double horizon) {
  const std::size_t cells = values.size() - 1;
  require(values.size() >= 2 && std::has_single_bit(cells), errc::non_dyadic,
          "Schauder decomposition needs 2^J + 1 samples, got " + std::to_string(values.size()));
  SchauderCoeffs c;
  c.levels = static_cast<unsigned>(std::countr_zero(cells));
  c.horizon = horizon;
  c.left = values.front();
  c.right = values.back();
  c.r.resize(c.levels);
  for (unsigned j = 0; j < c.levels; ++j) {
    const std::size_t width = cells >> j;  // grid cells per support
    const std::size_t count = std::size_t{1} << j;
    auto& level = c.r[j];
    level.resize(count);
    for (std::size_t n = 1; n <= count; ++n) {
      const std::size_t k0 = (n - 1) * width;
      level[n - 1] = 2.0 * values[k0 + width / 2] - values[k0] - values[k0 + width];
    }
  }
  return c;
}

SchauderCoeffs decompose(const process::Path& path) { return decompose(path.values, path.grid.horizon()); }

std::vector<double> reconstruct(const SchauderCoeffs& c, int up_to) {
  require(up_to >= -1 && up_to < static_cast<int>(c.levels), errc::invalid_argument,
          "reconstruction level must lie in [-1, J-1] with J = " + std::to_string(c.levels));
  const std::size_t cells = std::size_t{1} << c.levels;
  std::vector<double> out(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(cells);
    out[k] = c.left * (1.0 - t) + c.right * t;
  }
  for (int j = 0; j <= up_to; ++j) {
    const std::size_t width = cells >> j;
    const std::size_t half = width / 2;
    const auto& level = c.r[static_cast<std::size_t>(j)];
    for (std::size_t n = 1; n <= level.size(); ++n) {
      const double coef = 0.5 * level[n - 1];
      if (coef == 0.0) continue;
      const std::size_t k0 = (n - 1) * width;
      for (std::size_t i = 1; i < width; ++i) {
        const double tent = i <= half ? static_cast<double>(i) / static_cast<double>(half)
                                      : static_cast<double>(width - i) / static_cast<double>(half);
        out[k0 + i] += coef * tent;
      }
    }
  }
  return out;
}

std::vector<double> reconstruct(const SchauderCoeffs& c) { return reconstruct(c, static_cast<int>(c.levels) - 1); }

// ---------------------------------------------------------------- sigma

namespace {

// K(v) = 2 v_+^a - (v - 1/2)_+^a - (v + 1/2)_+^a. The coefficient kernels of
// both the RLP and the LMP are 2^{-ja} K(2^j (t1 - s)) in the variable v.
struct SecondDifferenceKernel {
  double a;

  double pos_pow(double x) const {
    if (x <= 0.0) return 0.0;
    return a == 0.0 ? 1.0 : std::pow(x, a);
  }

  // Series form for large v: K = -v^a g(1/(2v)), g(h) = 2 sum_k C(a, 2k) h^{2k}.
  double far(double v) const {
    const double h = 0.5 / v;
    const double h2 = h * h;
    double binom = 1.0;  // C(a, m)
    double hp = 1.0;
    double g = 0.0;
    for (int m = 1; m <= 60; ++m) {
      binom *= (a - m + 1) / m;
      if (m % 2 == 1) continue;
      hp *= h2;
      const double term = 2.0 * binom * hp;
      g += term;
      if (std::abs(term) <= 1e-18 * std::abs(g)) break;
    }
    return -std::pow(v, a) * g;
  }

  // v = anchor + sigma x; the term vanishing at the anchor uses sigma x
  // exactly, so the singular factor keeps full relative precision.
  double operator()(double anchor, double sigma, double x) const {
    const double v = anchor + sigma * x;
    if (a != 0.0 && v > 10.0) return far(v);
    const double exact = sigma * x;
    const double left = anchor == 0.5 ? exact : v - 0.5;    // t0 term
    const double mid = anchor == 0.0 ? exact : v;           // t1 term
    const double right = anchor == -0.5 ? exact : v + 0.5;  // t2 term
    return 2.0 * pos_pow(mid) - pos_pow(left) - pos_pow(right);
  }
};

struct Piece {
  double lo;
  double hi;
  double anchor;  // end of the piece the quadrature variable starts from
  double sigma;   // +1: v = lo + x; -1: v = hi - x
};

detail::QuadResult integrate_pieces(const SecondDifferenceKernel& kernel, double alpha,
                                    const std::vector<Piece>& pieces, double tol) {
  detail::QuadResult total;
  for (const auto& piece : pieces) {
    if (!(piece.hi > piece.lo)) continue;
    const auto f = [&kernel, &piece, alpha](double x) {
      return std::pow(std::abs(kernel(piece.anchor, piece.sigma, x)), alpha);
    };
    const auto r = detail::integrate_from_singularity(f, piece.hi - piece.lo, tol);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

// Pieces covering [lo, hi] with the singular points -1/2, 0, 1/2 as anchors
// and geometric pieces beyond 1.
std::vector<Piece> split(double lo, double hi) {
  const std::vector<Piece> base = {{-0.5, -0.25, -0.5, 1.0}, {-0.25, 0.0, 0.0, -1.0}, {0.0, 0.25, 0.0, 1.0},
                                   {0.25, 0.5, 0.5, -1.0},   {0.5, 1.0, 0.5, 1.0}};
  std::vector<Piece> out;
  for (const auto& p : base) {
    const double a = std::max(p.lo, lo);
    const double b = std::min(p.hi, hi);
    if (b <= a) continue;
    // Keep the anchor only if it is still an end of the clipped piece.
    if (p.sigma > 0 && a == p.lo) {
      out.push_back({a, b, p.anchor, 1.0});
    } else if (p.sigma < 0 && b == p.hi) {
      out.push_back({a, b, p.anchor, -1.0});
    } else {
      out.push_back({a, b, a, 1.0});
    }
  }
  double a = std::max(lo, 1.0);
  while (a < hi) {
    const double b = std::min(hi, 2.0 * a);
    out.push_back({a, b, a, 1.0});
    a = b;
  }
  return out;
}

void check_params(double alpha, double hurst) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, errc::invalid_argument, "alpha must lie in (0, 2]");
  require(std::isfinite(hurst) && hurst > 0.0, errc::invalid_argument, "H must be positive");
}

CoefficientScale finish(double integral, double integral_error, unsigned j, double alpha, double hurst, double tol,
                        ScaleKind kind) {
  require(std::isfinite(integral) && integral >= 0.0, errc::quadrature, "sigma quadrature returned a non-finite value");
  require(integral_error <= std::max(1e3 * tol * integral, 1e-300), errc::quadrature,
          "sigma quadrature did not reach the requested tolerance (error estimate " + std::to_string(integral_error) +
              " for value " + std::to_string(integral) + ")");
  CoefficientScale s;
  s.kind = kind;
  if (integral == 0.0) return s;
  s.sigma = std::exp2(-hurst * static_cast<double>(j)) * std::pow(integral, 1.0 / alpha);
  s.error = s.sigma * integral_error / (alpha * integral);
  return s;
}

}  // namespace

CoefficientScale sigma_rlp(unsigned j, std::size_t n, double alpha, double hurst, double tol) {
  check_params(alpha, hurst);
  require(n >= 1 && j < 63 && n <= (std::size_t{1} << j), errc::invalid_argument, "need 1 <= n <= 2^j");
  const double a = hurst - 1.0 / alpha;
  const SecondDifferenceKernel kernel{std::abs(a) < 1e-12 ? 0.0 : a};
  const auto r = integrate_pieces(kernel, alpha, split(-0.5, static_cast<double>(n) - 0.5), tol);
  return finish(r.value, r.error, j, alpha, hurst, tol, ScaleKind::rlp);
}

CoefficientScale sigma_lmp(unsigned j, std::size_t n, double alpha, double hurst, double tol) {
  check_params(alpha, hurst);
  require(alpha > 1.0 && hurst < 1.0 && hurst >= 1.0 / alpha - 1e-12, errc::invalid_argument,
          "LMP scale factors need alpha in (1, 2] and H in [1/alpha, 1)");
  require(n >= 1 && j < 63 && n <= (std::size_t{1} << j), errc::invalid_argument, "need 1 <= n <= 2^j");
  const double a = hurst - 1.0 / alpha;
  if (std::abs(a) < 1e-12) return CoefficientScale{0.0, 0.0, ScaleKind::lmp};
  const SecondDifferenceKernel kernel{a};
  const double lo = static_cast<double>(n) - 0.5;
  // Beyond U the leading series term is used in closed form; its relative
  // error in |K|^alpha is about alpha |(a-2)(a-3)| / (48 v^2).
  const double cutoff = std::max(2.0 * lo, std::sqrt(alpha * std::abs((a - 2.0) * (a - 3.0)) / (4.8 * tol)));
  const auto r = integrate_pieces(kernel, alpha, split(lo, cutoff), tol);
  const double lead = std::pow(std::abs(a * (a - 1.0)) / 4.0, alpha);
  const double decay = alpha * (2.0 - a) - 1.0;
  const double tail = lead * std::pow(cutoff, -decay) / decay;
  return finish(r.value + tail, r.error + 0.1 * tol * tail, j, alpha, hurst, tol, ScaleKind::lmp);
}

struct SigmaCache::Impl {
  std::mutex mutex;
  std::map<std::tuple<int, double, double, unsigned, std::size_t, double>, CoefficientScale> table;
};

SigmaCache::SigmaCache() : impl_(std::make_shared<Impl>()) {}

CoefficientScale SigmaCache::get(ScaleKind kind, unsigned j, std::size_t n, double alpha, double hurst, double tol) {
  const auto key = std::make_tuple(static_cast<int>(kind), alpha, hurst, j, n, tol);
  {
    std::lock_guard lock(impl_->mutex);
    if (auto it = impl_->table.find(key); it != impl_->table.end()) return it->second;
  }
  const auto value = kind == ScaleKind::rlp ? sigma_rlp(j, n, alpha, hurst, tol) : sigma_lmp(j, n, alpha, hurst, tol);
  std::lock_guard lock(impl_->mutex);
  impl_->table.emplace(key, value);
  return value;
}

std::size_t SigmaCache::size() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->table.size();
}

std::vector<SigmaRow> sigma_table(ScaleKind kind, double alpha, double hurst, unsigned j_min, unsigned j_max,
                                  double tol, unsigned threads) {
  require(j_min <= j_max && j_max < 30, errc::invalid_argument, "sigma table needs j_min <= j_max < 30");
  std::vector<SigmaRow> rows;
  for (unsigned j = j_min; j <= j_max; ++j) {
    for (std::size_t n = 1; n <= (std::size_t{1} << j); ++n) rows.push_back({j, n, {}});
  }
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    rows[i].scale = kind == ScaleKind::rlp ? sigma_rlp(rows[i].j, rows[i].n, alpha, hurst, tol)
                                           : sigma_lmp(rows[i].j, rows[i].n, alpha, hurst, tol);
  });
  return rows;
}

bool interior(unsigned j, std::size_t n) {
  // 2^{j-2} < n <= 3 * 2^{j-2}, i.e. 4n > 2^j and 4n <= 3 * 2^j.
  const std::size_t four_n = 4 * n;
  const std::size_t level = std::size_t{1} << j;
  return four_n > level && four_n <= 3 * level;
}

// ---------------------------------------------------------------- scaling report

namespace {

double median_of(std::vector<double>& v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

double slope_of(const std::vector<double>& js, const std::vector<double>& medians) {
  std::vector<double> y(medians.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::log2(medians[i]);
  return stats::linear_fit(js, y).slope;
}

}  // namespace

ScalingReport coefficient_scaling_report(const process::ProcessParams& params, std::size_t n_paths,
                                         std::uint64_t seed, const ScalingOptions& opt) {
  require(opt.level >= 6, errc::invalid_argument, "scaling report needs J >= 6 grid levels, got J = " +
                                                      std::to_string(opt.level));
  require(opt.j_min <= opt.j_max && opt.j_max < opt.level && opt.j_max - opt.j_min >= 1, errc::invalid_argument,
          "levels must satisfy j_min < j_max <= J - 1");
  require(n_paths >= 2, errc::empty_sample, "scaling report needs at least two paths");

  const process::Grid grid(opt.level);
  const process::PathSimulator sim(params, grid, opt.mesh);
  const unsigned nlev = opt.j_max - opt.j_min + 1;

  // per_level[l][path * width + i]: |r_jn| for the i-th interior n.
  std::vector<std::size_t> width(nlev);
  for (unsigned l = 0; l < nlev; ++l) width[l] = (std::size_t{1} << (opt.j_min + l)) / 2;
  std::vector<std::vector<double>> per_level(nlev);
  for (unsigned l = 0; l < nlev; ++l) per_level[l].resize(n_paths * width[l]);

  const bool want_ks = params.kind() == process::Kind::rlp && opt.ks_levels &&
                       opt.ks_levels->first < opt.level && opt.ks_levels->second < opt.level &&
                       opt.ks_levels->first >= 2 && opt.ks_levels->second >= 2;
  std::vector<std::vector<double>> ks_raw(2);
  std::array<std::size_t, 2> ks_width{};
  if (want_ks) {
    ks_width = {(std::size_t{1} << opt.ks_levels->first) / 2, (std::size_t{1} << opt.ks_levels->second) / 2};
    ks_raw[0].resize(n_paths * ks_width[0]);
    ks_raw[1].resize(n_paths * ks_width[1]);
  }

  parallel_blocks(n_paths, 16, resolve_threads(opt.threads), [&](std::size_t, std::size_t begin, std::size_t end) {
    process::PathSimulator::Workspace ws;
    std::vector<double> values(grid.points());
    for (std::size_t i = begin; i < end; ++i) {
      sim.simulate_into(seed, i, values, ws);
      const auto c = decompose(values);
      for (unsigned l = 0; l < nlev; ++l) {
        const unsigned j = opt.j_min + l;
        const std::size_t first = (std::size_t{1} << j) / 4 + 1;
        for (std::size_t k = 0; k < width[l]; ++k) per_level[l][i * width[l] + k] = std::abs(c.r[j][first + k - 1]);
      }
      if (want_ks) {
        const unsigned js[2] = {opt.ks_levels->first, opt.ks_levels->second};
        for (int s = 0; s < 2; ++s) {
          const std::size_t first = (std::size_t{1} << js[s]) / 4 + 1;
          for (std::size_t k = 0; k < ks_width[s]; ++k) ks_raw[s][i * ks_width[s] + k] = c.r[js[s]][first + k - 1];
        }
      }
    }
  });

  ScalingReport rep{params, n_paths, {}, 0.0, 0.0, 0.0, 0.0, params.hurst() >= 2.0, std::nullopt};
  std::vector<double> js(nlev);
  std::vector<double> medians(nlev);
  for (unsigned l = 0; l < nlev; ++l) {
    std::vector<double> copy = per_level[l];
    js[l] = opt.j_min + l;
    medians[l] = median_of(copy);
    rep.levels.push_back({opt.j_min + l, copy.size(), medians[l]});
  }
  rep.slope = slope_of(js, medians);

  if (opt.bootstrap > 0) {
    std::vector<double> slopes(opt.bootstrap);
    const rng::NoiseStream stream(opt.bootstrap_seed, 0);
    std::vector<double> pick;
    for (std::size_t b = 0; b < opt.bootstrap; ++b) {
      std::vector<std::size_t> chosen(n_paths);
      for (std::size_t i = 0; i < n_paths; ++i) {
        const auto u = stream.uniforms(b * n_paths + i)[0];
        chosen[i] = std::min(n_paths - 1, static_cast<std::size_t>(u * static_cast<double>(n_paths)));
      }
      std::vector<double> meds(nlev);
      for (unsigned l = 0; l < nlev; ++l) {
        pick.clear();
        for (std::size_t i : chosen) {
          const auto* row = per_level[l].data() + i * width[l];
          pick.insert(pick.end(), row, row + width[l]);
        }
        meds[l] = median_of(pick);
      }
      slopes[b] = slope_of(js, meds);
    }
    rep.slope_stderr = std::sqrt(stats::variance(slopes));
    std::sort(slopes.begin(), slopes.end());
    rep.ci_low = stats::quantile_sorted(slopes, 0.025);
    rep.ci_high = stats::quantile_sorted(slopes, 0.975);
  }

  if (want_ks) {
    SigmaCache cache;
    const unsigned js2[2] = {opt.ks_levels->first, opt.ks_levels->second};
    std::vector<double> norm[2];
    for (int s = 0; s < 2; ++s) {
      const std::size_t first = (std::size_t{1} << js2[s]) / 4 + 1;
      std::vector<double> sig(ks_width[s]);
      for (std::size_t k = 0; k < ks_width[s]; ++k) {
        sig[k] = cache.get(ScaleKind::rlp, js2[s], first + k, params.alpha().value(), params.hurst()).sigma;
      }
      norm[s].resize(ks_raw[s].size());
      for (std::size_t i = 0; i < ks_raw[s].size(); ++i) norm[s][i] = ks_raw[s][i] / sig[i % ks_width[s]];
    }
    rep.ks = stats::ks_two_sample(norm[0], norm[1]);
  }
  return rep;
}

}  // namespace fracdev::schauder
