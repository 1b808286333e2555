#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracdev/error.hpp"
#include "fracdev/processes.hpp"
#include "fracdev/stats.hpp"
#include "oracles.hpp"

using namespace fracdev;
using process::Grid;
using process::Kind;
using process::PathSimulator;
using process::ProcessParams;
using rng::NoiseStream;

namespace {

// Values at grid index k of paths first .. first + n - 1, multiplied by factor.
std::vector<double> marginal(const PathSimulator& sim, std::uint64_t seed, std::size_t first, std::size_t n,
                             std::size_t k, double factor = 1.0) {
  std::vector<double> out;
  out.reserve(n);
  PathSimulator::Workspace ws;
  std::vector<double> buf(sim.grid().points());
  for (std::size_t i = first; i < first + n; ++i) {
    sim.simulate_into(seed, i, buf, ws);
    out.push_back(factor * buf[k]);
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_SUITE("processes") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ProcessParams(Kind::rlp, 1.5, 0.0), Error);
  CHECK_THROWS_AS(ProcessParams(Kind::rlp, 2.5, 0.5), Error);
  CHECK_NOTHROW(ProcessParams(Kind::rlp, 0.7, 3.0));
  CHECK_THROWS_AS(ProcessParams(Kind::lmp, 1.0, 0.9), Error);   // alpha must exceed 1
  CHECK_THROWS_AS(ProcessParams(Kind::lmp, 1.5, 1.0), Error);   // integral diverges for H >= 1
  CHECK_THROWS_AS(ProcessParams(Kind::lfsm, 1.5, 0.6), Error);  // H < 1/alpha
  CHECK_NOTHROW(ProcessParams(Kind::lfsm, 1.5, 0.9));
  CHECK_THROWS_AS(ProcessParams(Kind::balanced, 1.5, 1.0), Error);

  const ProcessParams p(Kind::lfsm, 1.5, 0.9);
  CHECK(p.hurst_prime() == doctest::Approx(0.9 - 1.0 / 1.5));
  CHECK(p.continuous());
  CHECK_FALSE(ProcessParams(Kind::rlp, 1.5, 0.5).continuous());
  CHECK(ProcessParams(Kind::rlp, 2.0, 0.5, true).noise_factor() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(ProcessParams(Kind::rlp, 1.5, 0.5, true).noise_factor() == 1.0);
}

TEST_CASE("grid geometry") {
  const Grid g(4, 2.0);
  CHECK(g.cells() == 16);
  CHECK(g.points() == 17);
  CHECK(g.step() == 0.125);
  CHECK(g.time(16) == 2.0);
  CHECK_THROWS_AS(Grid(3, 0.0), Error);
}

TEST_CASE("Levy path") {
  SUBCASE("one cell gives [0, xi]") {
    const ProcessParams p(Kind::rlp, 1.5, 1.0 / 1.5);
    const auto path = process::simulate_levy(p, Grid(0), NoiseStream(4, 0));
    REQUIRE(path.values.size() == 2);
    CHECK(path.values[0] == 0.0);
    CHECK(path.values[1] == rng::sas_draw(p.alpha(), NoiseStream(4, 0), 0));
  }
  SUBCASE("normalised Gaussian increments are N(0, dt)") {
    const ProcessParams p(Kind::rlp, 2.0, 0.5, true);
    const Grid g(14);
    const auto path = process::simulate_levy(p, g, NoiseStream(8, 0));
    std::vector<double> inc(g.cells());
    for (std::size_t k = 0; k < g.cells(); ++k) inc[k] = path.values[k + 1] - path.values[k];
    const double sd = std::sqrt(g.step());
    const auto ks = stats::ks_one_sample(inc, [&](double x) { return stats::normal_cdf(x / sd); });
    CHECK(ks.p_value > 0.01);
  }
  SUBCASE("bit-identical reruns") {
    const ProcessParams p(Kind::rlp, 1.5, 0.5);
    CHECK(process::simulate_levy(p, Grid(10), NoiseStream(5, 3)).values ==
          process::simulate_levy(p, Grid(10), NoiseStream(5, 3)).values);
  }
}

TEST_CASE("RLP with H = 1/alpha is the Levy process") {
  for (double a : {0.8, 1.0, 1.5, 2.0}) {
    CAPTURE(a);
    const ProcessParams p(Kind::rlp, a, 1.0 / a);
    CHECK(p.degenerate_kernel());
    const auto r = process::simulate_rlp(p, Grid(9), NoiseStream(6, 1));
    const auto z = process::simulate_levy(p, Grid(9), NoiseStream(6, 1));
    CHECK(r.values == z.values);
  }
}

TEST_CASE("RLP with alpha = 2, H = 3/2 integrates the Brownian path") {
  // int_0^t (t - s) dZ_s = int_0^t Z_s ds
  for (unsigned level : {8u, 11u}) {
    const Grid g(level);
    const ProcessParams p(Kind::rlp, 2.0, 1.5);
    const auto r = process::simulate_rlp(p, g, NoiseStream(13, 0));
    const auto b = process::simulate_levy(p, g, NoiseStream(13, 0));
    double integral = 0.0;
    double worst = 0.0;
    for (std::size_t k = 1; k < g.points(); ++k) {
      integral += 0.5 * g.step() * (b.values[k - 1] + b.values[k]);
      worst = std::max(worst, std::abs(r.values[k] - integral));
    }
    CAPTURE(level);
    // one cell of the Brownian path: O(dt) with a modest constant
    CHECK(worst <= 2.0 * g.step() * std::max(1.0, max_abs(b.values)));
  }
}

TEST_CASE("RLP weights: extrapolation homogeneity and disjoint noise") {
  const ProcessParams p(Kind::rlp, 1.5, 0.9);
  const Grid g(8);
  const process::RlpKernel kernel(p, g);
  NoiseStream s(2, 0);
  auto xi = rng::sample_sas(p.alpha(), std::pow(g.step(), 1.0 / 1.5), g.cells(), s);
  std::vector<double> full(g.points());
  kernel.apply(xi, full);

  // R_{a, a + t} over cells [a, a + t) uses the weights of R_t over [0, t]
  const std::size_t a = 64;
  const std::size_t t = 100;
  std::vector<double> shifted(xi.begin() + a, xi.begin() + a + t);
  shifted.resize(g.cells(), 0.0);
  std::vector<double> from_zero(g.points());
  kernel.apply(shifted, from_zero);
  CHECK(kernel.at(xi, a, a + t) == doctest::Approx(from_zero[t]).epsilon(1e-13));

  // R_{a+t} = R_{a, a+t} + (part driven by cells before a only)
  const double head = kernel.at(xi, 0, a + t) - kernel.at(xi, a, a + t);
  for (std::size_t i = a; i < g.cells(); ++i) xi[i] += 1000.0;
  // the shifted cells now carry values near 1000, so the cancellation error scales with them
  const double whole = kernel.at(xi, 0, a + t);
  CHECK(std::abs(whole - kernel.at(xi, a, a + t) - head) <= 1e-12 * std::abs(whole));
}

TEST_CASE("RLP Gaussian variance is exact on the grid") {
  // cell weights are L2 means, so Var(R_1) = 2 int_0^1 s^{2H'} ds = 2 / (2H' + 1)
  const ProcessParams p(Kind::rlp, 2.0, 0.75);
  const PathSimulator sim(p, Grid(6));
  const auto x = marginal(sim, 3, 0, 40000, 64);
  const double expected = 2.0 / (2.0 * p.hurst_prime() + 1.0);
  const double se = expected * std::sqrt(2.0 / 40000.0);
  CHECK(std::abs(stats::variance(x) - expected) <= 3.0 * se);
}

TEST_CASE("LMP") {
  SUBCASE("alpha = 2, H = 1/2 is identically zero") {
    const ProcessParams p(Kind::lmp, 2.0, 0.5);
    const auto m = process::simulate_lmp(p, Grid(8), NoiseStream(1, 1));
    CHECK(std::all_of(m.values.begin(), m.values.end(), [](double v) { return v == 0.0; }));
  }
  SUBCASE("alpha = 2, H = 0.75: Var(M_1) against the isometry quadrature") {
    const ProcessParams p(Kind::lmp, 2.0, 0.75);
    const PathSimulator sim(p, Grid(5));
    const auto x = marginal(sim, 17, 0, 50000, 32);
    const double expected = oracle::lmp_gaussian_variance(0.75, 1.0);
    MESSAGE("Var(M_1) " << stats::variance(x) << " vs quadrature " << expected);
    CHECK(stats::variance(x) == doctest::Approx(expected).epsilon(0.02));
  }
  SUBCASE("truncation is reported and honours the tolerance") {
    const ProcessParams p(Kind::lmp, 1.5, 0.9);
    const auto m = process::simulate_lmp(p, Grid(6), NoiseStream(1, 1));
    REQUIRE(m.truncation.has_value());
    CHECK(m.truncation->cutoff > 1.0);
    CHECK(m.truncation->tail_scale <= 1e-4 * (1.0 + 1e-12));
    CHECK(m.truncation->cells > 0);
  }
  SUBCASE("smooth on [0.1, 1]: second differences scale like dt^2") {
    const ProcessParams p(Kind::lmp, 2.0, 0.75);
    std::vector<double> curvature;
    for (unsigned level : {6u, 8u, 10u}) {
      const Grid g(level);
      const PathSimulator sim(p, g);
      double worst = 0.0;
      for (std::uint64_t i = 0; i < 20; ++i) {
        const auto m = sim.simulate(23, i);
        for (std::size_t k = 1; k + 1 < g.points(); ++k) {
          if (g.time(k) < 0.1) continue;
          const double d2 = m.values[k + 1] - 2.0 * m.values[k] + m.values[k - 1];
          worst = std::max(worst, std::abs(d2) / (g.step() * g.step()));
        }
      }
      curvature.push_back(worst);
    }
    MESSAGE("max |d2 M| / dt^2 at J = 6, 8, 10: " << curvature[0] << ", " << curvature[1] << ", " << curvature[2]);
    // a rough path would grow like dt^{H - 2}, i.e. by 2^{2.5} per two levels
    CHECK(curvature[2] <= 2.0 * curvature[0]);
    CHECK(curvature[1] <= 2.0 * curvature[0]);
  }
}

TEST_CASE("LFSM is R + M with shared path indices") {
  const ProcessParams p(Kind::lfsm, 1.5, 0.9);
  const Grid g(7);
  const auto parts = process::simulate_lfsm(p, g, NoiseStream(9, process::stream_for(4, 0)),
                                            NoiseStream(9, process::stream_for(4, 1)));
  for (std::size_t k = 0; k < g.points(); ++k) {
    CHECK(parts.total.values[k] == parts.rlp.values[k] + parts.lmp.values[k]);
  }
  const PathSimulator sim(p, g);
  CHECK(sim.simulate(9, 4).values == parts.total.values);
  CHECK(PathSimulator(p.with_kind(Kind::rlp), g).simulate(9, 4).values == parts.rlp.values);
  CHECK(PathSimulator(p.with_kind(Kind::lmp), g).simulate(9, 4).values == parts.lmp.values);
}

TEST_CASE("LFSM increments are stationary") {
  for (auto [a, h] : {std::pair{2.0, 0.75}, std::pair{1.5, 0.9}}) {
    CAPTURE(a);
    const ProcessParams p(Kind::lfsm, a, h);
    const Grid g(4);
    const PathSimulator sim(p, g);
    const std::size_t n = 3000;
    std::vector<double> inc, direct;
    PathSimulator::Workspace ws;
    std::vector<double> buf(g.points());
    for (std::size_t i = 0; i < n; ++i) {
      sim.simulate_into(5, i, buf, ws);
      inc.push_back(buf[12] - buf[4]);  // X_{0.75} - X_{0.25}
      sim.simulate_into(5, n + i, buf, ws);
      direct.push_back(buf[8]);  // X_{0.5}
    }
    CHECK(stats::ks_two_sample(inc, direct).p_value > 0.01);
  }
}

TEST_CASE("Gaussian LFSM: Var(X_t) / t^{2H} is constant") {
  const double h = 0.75;
  const ProcessParams p(Kind::lfsm, 2.0, h);
  const Grid g(4);
  const PathSimulator sim(p, g);
  const std::size_t n = 30000;
  std::vector<double> x4, x8, x16;
  PathSimulator::Workspace ws;
  std::vector<double> buf(g.points());
  for (std::size_t i = 0; i < n; ++i) {
    sim.simulate_into(29, i, buf, ws);
    x4.push_back(buf[4]);
    x8.push_back(buf[8]);
    x16.push_back(buf[16]);
  }
  const double c1 = stats::variance(x16);
  const double c_half = stats::variance(x8) / std::pow(0.5, 2 * h);
  const double c_quarter = stats::variance(x4) / std::pow(0.25, 2 * h);
  // isometry: Var(X_1) = 2 int_0^1 s^{2H'} ds + Var(M_1)
  const double expected = 2.0 / (2.0 * (h - 0.5) + 1.0) + oracle::lmp_gaussian_variance(h, 1.0);
  MESSAGE("Var ratios " << c1 << " " << c_half << " " << c_quarter << ", isometry " << expected);
  CHECK(c_half == doctest::Approx(c1).epsilon(0.03));
  CHECK(c_quarter == doctest::Approx(c1).epsilon(0.03));
  CHECK(c1 == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("balanced moving average") {
  SUBCASE("alpha = 2, H = 1/2 is a Brownian motion up to scale") {
    const ProcessParams p(Kind::balanced, 2.0, 0.5);
    const Grid g(4);
    const PathSimulator sim(p, g);
    const std::size_t n = 4000;
    std::vector<double> a, b, c;
    PathSimulator::Workspace ws;
    std::vector<double> buf(g.points());
    for (std::size_t i = 0; i < n; ++i) {
      sim.simulate_into(31, i, buf, ws);
      a.push_back(buf[4]);              // X_{1/4}
      b.push_back(buf[16] - buf[12]);   // increment over [3/4, 1]
      c.push_back(buf[12] - buf[8]);    // increment over [1/2, 3/4]
    }
    const double sd = std::sqrt(stats::variance(a));
    const auto gauss = [&](double x) { return stats::normal_cdf(x / sd); };
    CHECK(stats::ks_one_sample(b, gauss).p_value > 0.01);
    CHECK(stats::ks_one_sample(c, gauss).p_value > 0.01);
    // independent increments: no correlation between disjoint intervals
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) cov += b[i] * c[i];
    cov /= static_cast<double>(n);
    CHECK(std::abs(cov) <= 4.0 * stats::variance(a) / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("alpha = 1.5, H = 0.7: finite and deterministic") {
    const ProcessParams p(Kind::balanced, 1.5, 0.7);
    const auto x = process::simulate_balanced(p, Grid(8), NoiseStream(3, 2));
    const auto y = process::simulate_balanced(p, Grid(8), NoiseStream(3, 2));
    CHECK(x.values == y.values);
    CHECK(std::all_of(x.values.begin(), x.values.end(), [](double v) { return std::isfinite(v); }));
    CHECK(x.values[0] == 0.0);
  }
}

TEST_CASE("self-similarity of every kind") {
  struct Case {
    Kind kind;
    double alpha;
    double hurst;
  };
  for (const Case& c : {Case{Kind::rlp, 2.0, 0.5}, Case{Kind::rlp, 1.5, 0.9}, Case{Kind::lmp, 1.5, 0.9},
                        Case{Kind::lfsm, 2.0, 0.75}, Case{Kind::balanced, 1.5, 0.7}}) {
    CAPTURE(process::to_string(c.kind));
    CAPTURE(c.alpha);
    const ProcessParams p(c.kind, c.alpha, c.hurst, true);
    const Grid g(4);
    const PathSimulator sim(p, g);
    const std::size_t n = 2500;
    // c = 1/2, t = 1: 2^H X_{1/2} against X_1 on disjoint path ranges
    const auto scaled = marginal(sim, 41, 0, n, 8, std::pow(2.0, c.hurst));
    const auto plain = marginal(sim, 41, n, n, 16);
    CHECK(stats::ks_two_sample(scaled, plain).p_value > 0.01);
  }
}

TEST_CASE("RLP with small H has no blow-up when continuous") {
  const ProcessParams p(Kind::rlp, 2.0, 0.2);
  const auto r = process::simulate_rlp(p, Grid(12), NoiseStream(3, 0));
  CHECK(std::all_of(r.values.begin(), r.values.end(), [](double v) { return std::isfinite(v); }));
}

TEST_CASE("paths do not depend on the simulator's mesh thread count") {
  const ProcessParams p(Kind::lfsm, 1.5, 0.9);
  process::MeshOptions one, four;
  four.threads = 4;
  const PathSimulator a(p, Grid(7), one);
  const PathSimulator b(p, Grid(7), four);
  CHECK(a.simulate(1, 3).values == b.simulate(1, 3).values);
}

}
