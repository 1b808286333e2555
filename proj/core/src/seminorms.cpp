#include "fracdev/seminorms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include "fracdev/error.hpp"
#include "fracdev/path_io.hpp"

namespace fracdev::seminorm {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::sup: return "SUP";
    case Kind::lp: return "LP";
    case Kind::holder: return "HOLDER";
    case Kind::calderon_zygmund: return "CALDERON_ZYGMUND";
    case Kind::lipschitz: return "LIPSCHITZ";
    case Kind::pvar: return "PVAR";
    case Kind::sobolev: return "SOBOLEV";
    case Kind::besov: return "BESOV";
  }
  return "SUP";
}

Kind kind_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Kind k : {Kind::sup, Kind::lp, Kind::holder, Kind::calderon_zygmund, Kind::lipschitz, Kind::pvar,
                 Kind::sobolev, Kind::besov}) {
    if (upper == to_string(k)) return k;
  }
  if (upper == "CZ") return Kind::calderon_zygmund;
  throw Error(errc::invalid_argument, "unknown semi-norm kind '" + std::string(name) + "'");
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::n: return "N";
    case Membership::n_tilde_schauder: return "N_tilde_schauder";
    case Membership::u_only: return "U_only";
  }
  return "N";
}

namespace {

std::string num(double x) { return std::isinf(x) ? "inf" : io::format_double(x); }

void check(bool ok, const SemiNormSpec& spec, const std::string& condition) {
  require(ok, errc::invalid_argument, std::string(to_string(spec.kind)) + ": requires " + condition);
}

bool finite_at_least_one(double p) { return std::isfinite(p) && p >= 1.0; }

}  // namespace

void validate(const SemiNormSpec& spec) {
  switch (spec.kind) {
    case Kind::sup:
    case Kind::calderon_zygmund:
      break;
    case Kind::lp:
    case Kind::pvar:
      check(finite_at_least_one(spec.p), spec, "finite p >= 1, got p = " + num(spec.p));
      break;
    case Kind::holder:
      check(std::isfinite(spec.eta) && spec.eta >= 0.0 && spec.eta < 1.0, spec,
            "0 <= eta < 1, got eta = " + num(spec.eta));
      break;
    case Kind::lipschitz:
      check(std::isfinite(spec.eta) && spec.eta > 1.0 && spec.eta <= 16.0, spec,
            "1 < eta <= 16, got eta = " + num(spec.eta));
      break;
    case Kind::sobolev:
      check(finite_at_least_one(spec.p), spec, "finite p >= 1, got p = " + num(spec.p));
      check(std::isfinite(spec.eta) && spec.eta + 1.0 / spec.p >= 0.0 && spec.eta + 1.0 / spec.p < 1.0, spec,
            "0 <= eta + 1/p < 1, got eta + 1/p = " + num(spec.eta + 1.0 / spec.p));
      break;
    case Kind::besov:
      check(std::isfinite(spec.eta) && spec.eta > 0.0, spec, "eta > 0, got eta = " + num(spec.eta));
      check(spec.p >= 1.0 && spec.q >= 1.0, spec, "p, q >= 1, got p = " + num(spec.p) + ", q = " + num(spec.q));
      break;
  }
}

std::string describe(const SemiNormSpec& spec) {
  std::string s(to_string(spec.kind));
  switch (spec.kind) {
    case Kind::sup:
    case Kind::calderon_zygmund:
      return s;
    case Kind::lp:
    case Kind::pvar:
      return s + "(p=" + num(spec.p) + ")";
    case Kind::holder:
    case Kind::lipschitz:
      return s + "(eta=" + num(spec.eta) + ")";
    case Kind::sobolev:
      return s + "(eta=" + num(spec.eta) + ",p=" + num(spec.p) + ")";
    case Kind::besov:
      return s + "(eta=" + num(spec.eta) + ",p=" + num(spec.p) + ",q=" + num(spec.q) + ")";
  }
  return s;
}

SemiNormClass classify(const SemiNormSpec& spec) {
  validate(spec);
  SemiNormClass c;
  switch (spec.kind) {
    case Kind::sup:
      c = {0.0, kInf, 1.0, Membership::n, 0.0, kInf, 1.0};
      break;
    case Kind::lp:
      c = {-1.0 / spec.p, spec.p, 1.0, Membership::n, -1.0 / spec.p, spec.p, 1.0};
      break;
    case Kind::holder:
      // f vanishing at the split point c and s < c < t give
      // |f(t) - f(s)| <= A (c-s)^eta + B (t-c)^eta <= 2^{1-eta} max(A, B) (t-s)^eta,
      // with equality for opposite tents on [0,1] and [1,2].
      c = {spec.eta, kInf, std::pow(2.0, 1.0 - spec.eta), Membership::n, spec.eta, kInf,
           std::pow(2.0, 1.0 + spec.eta)};
      break;
    case Kind::calderon_zygmund:
      c = {1.0, kInf, std::nullopt, Membership::n, 1.0, kInf, 4.0};
      break;
    case Kind::lipschitz:
      c = {spec.eta, kInf, std::nullopt, Membership::n, spec.eta, kInf, std::nullopt};
      break;
    case Kind::pvar:
      c = {0.0, spec.p, std::pow(2.0, 1.0 - 1.0 / spec.p), Membership::n, 0.0, spec.p, 2.0};
      break;
    case Kind::sobolev:
      c = {spec.eta - 1.0 / spec.p, spec.p, std::nullopt, Membership::n_tilde_schauder, spec.eta - 1.0 / spec.p,
           spec.p, std::nullopt};
      break;
    case Kind::besov:
      c = {spec.eta, kInf, std::nullopt, Membership::n_tilde_schauder,
           spec.eta - (std::isinf(spec.p) ? 0.0 : 1.0 / spec.p), kInf, std::nullopt};
      break;
  }
  return c;
}

GridInterval interval_from_times(const process::Grid& grid, double a, double b) {
  require(a < b, errc::invalid_argument, "empty interval [" + num(a) + ", " + num(b) + "]");
  const auto index = [&](double t) {
    const double x = t / grid.step();
    const double r = std::round(x);
    require(r >= 0.0 && r <= static_cast<double>(grid.cells()) && grid.time(static_cast<std::size_t>(r)) == t,
            errc::off_grid, "interval endpoint " + num(t) + " is not a grid point");
    return static_cast<std::size_t>(r);
  };
  return {index(a), index(b)};
}

namespace {

double power(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 1.0) return x;
  return std::pow(x, p);
}

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Trapezoid integral of |v|^p.
double trapezoid_power(std::span<const double> v, double p, double step) {
  const std::size_t m = v.size() - 1;
  double s = 0.5 * (power(std::abs(v[0]), p) + power(std::abs(v[m]), p));
  for (std::size_t i = 1; i < m; ++i) s += power(std::abs(v[i]), p);
  return s * step;
}

// max |v_j - v_i| / (j - i)^eta over pairs, before dividing by step^eta.
double holder_core(std::span<const double> v, double eta) {
  const std::size_t n = v.size();
  double best = 0.0;
  if (eta == 0.0) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  }
  std::vector<double> denom(n);
  for (std::size_t d = 1; d < n; ++d) denom[d] = std::pow(static_cast<double>(d), eta);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, std::abs(v[j] - v[i]) / denom[j - i]);
  }
  return best;
}

double holder(std::span<const double> v, double eta, double step) {
  if (v.size() < 2) return 0.0;
  return holder_core(v, eta) / std::pow(step, eta);
}

// Pairs (i, j) with j - i even, so that the midpoint is a grid point.
double calderon_zygmund(std::span<const double> v, double step) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; j += 2) {
      const double second = std::abs(2.0 * v[(i + j) / 2] - v[i] - v[j]);
      best = std::max(best, second / static_cast<double>(j - i));
    }
  }
  return best / step;
}

double lipschitz(std::span<const double> v, double eta, double step) {
  const auto order = static_cast<std::size_t>(std::floor(eta));
  if (v.size() <= order) return 0.0;
  // order-th difference, centred at the half-integer points i + order/2.
  std::vector<double> diff(v.begin(), v.end());
  for (std::size_t r = 0; r < order; ++r) {
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = (diff[i + 1] - diff[i]) / step;
    diff.pop_back();
  }
  const double frac = eta - static_cast<double>(order);
  if (frac == 0.0) {
    // Integer eta: Calderon-Zygmund form of the (order-1)-th derivative,
    // i.e. second differences of the (order-1)-th difference sequence.
    std::vector<double> prev(v.begin(), v.end());
    for (std::size_t r = 0; r + 1 < order; ++r) {
      for (std::size_t i = 0; i + 1 < prev.size(); ++i) prev[i] = (prev[i + 1] - prev[i]) / step;
      prev.pop_back();
    }
    return calderon_zygmund(prev, step);
  }
  return holder(diff, frac, step);
}

// V(i) = max_{j<i} V(j) + |v_i - v_j|^p with V(0) = 0.
double pvar(std::span<const double> v, double p) {
  const std::size_t n = v.size();
  thread_local std::vector<double> best;
  best.assign(n, 0.0);
  double overall = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double b = 0.0;
    for (std::size_t j = 0; j < i; ++j) b = std::max(b, best[j] + power(std::abs(v[i] - v[j]), p));
    best[i] = b;
    overall = std::max(overall, b);
  }
  return std::pow(overall, 1.0 / p);
}

double sobolev(std::span<const double> v, double eta, double p, double step) {
  const std::size_t n = v.size();
  const std::size_t m = n - 1;
  const double expo = eta * p + 1.0;
  std::vector<double> denom(n);
  for (std::size_t d = 1; d < n; ++d) denom[d] = std::pow(static_cast<double>(d), expo);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = (i == 0 || i == m) ? 0.5 : 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double wj = (j == 0 || j == m) ? 0.5 : 1.0;
      sum += wi * wj * power(std::abs(v[j] - v[i]), p) / denom[j - i];
    }
  }
  // Symmetric double integral: each unordered pair counted twice.
  const double integral = 2.0 * sum * step * step / std::pow(step, expo);
  return std::pow(integral, 1.0 / p);
}

// (int_{I_h} |f(x+h) - f(x)|^p dx)^{1/p} for the shift of h cells.
double shifted_increment(std::span<const double> v, std::size_t h, double p, double step) {
  const std::size_t count = v.size() - h;  // points x_0 .. x_{m-h}
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(v[i + h] - v[i]));
    return m;
  }
  if (count < 2) return 0.0;
  double s = 0.5 * (power(std::abs(v[h] - v[0]), p) + power(std::abs(v[count - 1 + h] - v[count - 1]), p));
  for (std::size_t i = 1; i + 1 < count; ++i) s += power(std::abs(v[i + h] - v[i]), p);
  return std::pow(s * step, 1.0 / p);
}

double besov(std::span<const double> v, double eta, double p, double q, double step) {
  const std::size_t m = v.size() - 1;
  if (m < 2) return 0.0;
  // Dyadic nodes t_k = 2^k step <= |I|/2; omega is monotone in t.
  std::vector<double> ratio;
  double omega = 0.0;
  std::size_t h_done = 0;
  for (std::size_t shift = 1; 2 * shift <= m; shift *= 2) {
    for (std::size_t h = h_done + 1; h <= shift; ++h) omega = std::max(omega, shifted_increment(v, h, p, step));
    h_done = shift;
    ratio.push_back(omega / std::pow(static_cast<double>(shift) * step, eta));
  }
  if (std::isinf(q)) return *std::max_element(ratio.begin(), ratio.end());
  // Log-trapezoid rule for dt/t: nodes equally spaced by ln 2 in log t.
  const double ln2 = std::log(2.0);
  double sum = 0.0;
  if (ratio.size() == 1) {
    sum = 0.5 * ln2 * power(ratio[0], q);
  } else {
    for (std::size_t k = 0; k < ratio.size(); ++k) {
      const double w = (k == 0 || k + 1 == ratio.size()) ? 0.5 * ln2 : ln2;
      sum += w * power(ratio[k], q);
    }
  }
  return std::pow(sum, 1.0 / q);
}

}  // namespace

double evaluate(const SemiNormSpec& spec, std::span<const double> v, double step) {
  validate(spec);
  require(v.size() >= 2, errc::invalid_argument, "semi-norm needs an interval of at least one cell");
  require(std::isfinite(step) && step > 0.0, errc::invalid_argument, "grid step must be positive");
  switch (spec.kind) {
    case Kind::sup: return sup_norm(v);
    case Kind::lp: return std::pow(trapezoid_power(v, spec.p, step), 1.0 / spec.p);
    case Kind::holder: return holder(v, spec.eta, step);
    case Kind::calderon_zygmund: return calderon_zygmund(v, step);
    case Kind::lipschitz: return lipschitz(v, spec.eta, step);
    case Kind::pvar: return pvar(v, spec.p);
    case Kind::sobolev: return sobolev(v, spec.eta, spec.p, step);
    case Kind::besov: return besov(v, spec.eta, spec.p, spec.q, step);
  }
  return 0.0;
}

double evaluate(const SemiNormSpec& spec, const process::Path& path, GridInterval interval) {
  require(interval.first < interval.last && interval.last < path.values.size(), errc::off_grid,
          "interval indices outside the path grid");
  return evaluate(spec, std::span<const double>(path.values).subspan(interval.first, interval.last - interval.first + 1),
                  path.grid.step());
}

double evaluate(const SemiNormSpec& spec, const process::Path& path) {
  return evaluate(spec, path, GridInterval{0, path.values.size() - 1});
}

}  // namespace fracdev::seminorm
