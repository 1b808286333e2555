#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracdev/error.hpp"
#include "fracdev/smalldev.hpp"
#include "oracles.hpp"

using namespace fracdev;
using namespace fracdev::smalldev;
using process::Kind;
using process::ProcessParams;
using seminorm::SemiNormSpec;

namespace {

const ProcessParams kBrownian(Kind::rlp, 2.0, 0.5, true);

std::vector<SmallBallEstimate> fixture_estimates() {
  std::ifstream in(std::string(FRACDEV_FIXTURE_DIR) + "/bm_sup_oracle.json");
  REQUIRE(in.good());
  const auto doc = nlohmann::json::parse(in);
  std::vector<SmallBallEstimate> out;
  for (const auto& e : doc.at("estimates")) {
    SmallBallEstimate s;
    s.epsilon = e.at("epsilon").get<double>();
    s.p_hat = e.at("p_hat").get<double>();
    out.push_back(s);
  }
  return out;
}

McOptions opts(unsigned level, unsigned threads = 1) {
  McOptions o;
  o.level = level;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_SUITE("smalldev") {

TEST_CASE("Brownian sup oracle") {
  CHECK(bm_sup_oracle(1.0) == doctest::Approx(0.370777).epsilon(2e-6));
  CHECK(bm_sup_oracle(0.7) == doctest::Approx(0.102674).epsilon(5e-6));
  CHECK(bm_sup_oracle(50.0) == 1.0);
  CHECK(bm_sup_oracle(6.0) == doctest::Approx(1.0).epsilon(1e-8));
  const double lead = std::numbers::pi * std::numbers::pi / 8.0;
  CHECK(-0.05 * 0.05 * std::log(bm_sup_oracle(0.05)) == doctest::Approx(lead).epsilon(1e-3));
  // the two series agree where they meet
  CHECK(bm_sup_oracle(1.5) == doctest::Approx(bm_sup_oracle(std::nextafter(1.5, 2.0))).epsilon(1e-12));
  double prev = 0.0;
  for (double e = 0.1; e < 4.0; e += 0.05) {
    const double p = bm_sup_oracle(e);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("theta series equals the high-precision image series") {
  for (const auto& e : fixture_estimates()) {
    CAPTURE(e.epsilon);
    CHECK(bm_sup_oracle(e.epsilon) == doctest::Approx(e.p_hat).epsilon(1e-10));
  }
}

TEST_CASE("theta series against an independent random walk") {
  // mt19937_64 Gaussian walk with 2^12 steps. A discretely monitored strip
  // behaves like the continuous one widened by 0.5826 sqrt(dt) on each side.
  const std::vector<double> eps{0.7, 1.0};
  const std::size_t n = 100'000;
  const auto hits = oracle::random_walk_sup_hits(eps, n, 12, 99);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double p = static_cast<double>(hits[i]) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    const double shifted = bm_sup_oracle(eps[i] + 0.5826 / 64.0);
    MESSAGE("eps " << eps[i] << ": walk " << p << " +- " << se << ", oracle " << bm_sup_oracle(eps[i])
                   << ", shifted oracle " << shifted);
    CHECK(std::abs(p - shifted) <= 3.0 * se);
  }
}

TEST_CASE("Monte Carlo small ball estimates") {
  SUBCASE("huge radius") {
    const auto est = mc_small_ball(kBrownian, SemiNormSpec::sup(), {10.0}, 2000, 1, opts(8));
    CHECK(est[0].p_hat >= 0.999);
  }
  SUBCASE("counts, standard errors and monotonicity") {
    const std::vector<double> eps{0.4, 0.6, 0.8, 1.0, 1.5};
    const auto est = mc_small_ball(kBrownian, SemiNormSpec::sup(), eps, 5000, 3, opts(8));
    REQUIRE(est.size() == eps.size());
    for (std::size_t i = 0; i < est.size(); ++i) {
      const auto& e = est[i];
      CHECK(e.n_samples == 5000);
      CHECK(e.p_hat == static_cast<double>(e.hits) / 5000.0);
      CHECK(e.stderr_ == doctest::Approx(std::sqrt(e.p_hat * (1.0 - e.p_hat) / 5000.0)));
      if (i > 0) CHECK(e.hits >= est[i - 1].hits);
    }
  }
  SUBCASE("unsorted radii are still monotone") {
    const auto est = mc_small_ball(kBrownian, SemiNormSpec::lp(2.0), {0.5, 0.2, 0.3}, 2000, 3, opts(7));
    CHECK(est[1].hits <= est[2].hits);
    CHECK(est[2].hits <= est[0].hits);
  }
  SUBCASE("no hits is censored, not zero") {
    const auto est = mc_small_ball(kBrownian, SemiNormSpec::sup(), {0.05}, 1000, 3, opts(7));
    CHECK(est[0].hits == 0);
    CHECK(est[0].censored);
    CHECK(std::isnan(est[0].log_p));
    CHECK(est[0].upper_ci == doctest::Approx(3.0 / 1000.0));
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(mc_small_ball(kBrownian, SemiNormSpec::sup(), {0.5}, 999, 1, opts(6)), Error);
    CHECK_THROWS_AS(mc_small_ball(kBrownian, SemiNormSpec::sup(), {0.0}, 1000, 1, opts(6)), Error);
    CHECK_THROWS_AS(mc_small_ball(kBrownian, SemiNormSpec::sup(), {}, 1000, 1, opts(6)), Error);
  }
  SUBCASE("worker count never changes the result") {
    const ProcessParams p(Kind::lfsm, 1.5, 0.9);
    McOptions a = opts(6, 1), b = opts(6, 3);
    a.block = b.block = 100;
    const auto x = mc_small_ball(p, SemiNormSpec::pvar(3.0), {0.5, 1.0, 2.0}, 1000, 8, a);
    const auto y = mc_small_ball(p, SemiNormSpec::pvar(3.0), {0.5, 1.0, 2.0}, 1000, 8, b);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].hits == y[i].hits);
  }
}

TEST_CASE("bridge-corrected Brownian estimate against the oracle") {
  McOptions o = opts(10);
  o.bridge_correction = true;
  const std::vector<double> eps{0.7, 1.0};
  const auto est = mc_small_ball(kBrownian, SemiNormSpec::sup(), eps, 50'000, 11, o);
  for (const auto& e : est) {
    CAPTURE(e.epsilon);
    CHECK(std::abs(e.p_hat - bm_sup_oracle(e.epsilon)) <= 3.0 * e.stderr_);
  }
  CHECK_THROWS_AS(mc_small_ball(kBrownian, SemiNormSpec::lp(2.0), eps, 1000, 1, o), Error);
  CHECK_THROWS_AS(mc_small_ball(ProcessParams(Kind::rlp, 2.0, 0.75), SemiNormSpec::sup(), eps, 1000, 1, o), Error);
}

TEST_CASE("rate fitting") {
  SUBCASE("exact synthetic data") {
    std::vector<SmallBallEstimate> est;
    for (double e : {0.8, 1.0, 1.3, 1.7, 2.2}) {
      SmallBallEstimate s;
      s.epsilon = e;
      s.p_hat = std::exp(-3.0 / (e * e));
      est.push_back(s);
    }
    const auto fit = fit_rate(est);
    CHECK(fit.gamma_hat == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(fit.K_hat == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(fit.points == 5);
    const auto fixed = fit_rate(est, 2.0);
    CHECK(fixed.K_hat == doctest::Approx(3.0).epsilon(1e-8));
    REQUIRE(fixed.K_per_point.size() == 5);
    for (double k : fixed.K_per_point) CHECK(k == doctest::Approx(3.0).epsilon(1e-8));
  }
  SUBCASE("oracle values") {
    const auto est = fixture_estimates();
    const auto fit = fit_rate(est);
    CHECK(fit.gamma_hat == doctest::Approx(2.0).epsilon(0.02));
    const auto fixed = fit_rate(est, 2.0);
    CHECK(fixed.K_hat == doctest::Approx(std::numbers::pi * std::numbers::pi / 8.0).epsilon(0.03));
    CHECK(fit.eps_min == 0.05);
    CHECK(fit.eps_max == 0.2);
  }
  SUBCASE("censored points are excluded") {
    auto est = fixture_estimates();
    SmallBallEstimate zero;
    zero.epsilon = 0.01;
    zero.p_hat = 0.0;
    zero.censored = true;
    est.push_back(zero);
    const auto fit = fit_rate(est);
    CHECK(fit.points == 5);
    CHECK(fit.censored == 1);
  }
  SUBCASE("errors") {
    auto est = fixture_estimates();
    est.resize(2);
    CHECK_THROWS_AS(fit_rate(est), Error);
    std::vector<SmallBallEstimate> same(3);
    for (auto& s : same) {
      s.epsilon = 0.1;
      s.p_hat = 0.2;
    }
    try {
      fit_rate(same);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == errc::degenerate_design);
    }
  }
}

TEST_CASE("Tauberian constant") {
  CHECK(tauberian_constant(1.0, 2.0) == 0.25);
  CHECK(tauberian_constant(2.0, 2.0) == 1.0);
  for (double q : {1.5, 2.0, 3.0, 7.25}) CHECK(tauberian_constant(q, q) == doctest::Approx(q - 1.0).epsilon(1e-15));
  for (double q : {1.2, 2.0, 5.0}) {
    CHECK(tauberian_constant(0.0, q) == 0.0);
    CHECK(tauberian_constant(1e-9, q) < 1e-9);
    double prev = -1.0;
    for (double c = 0.0; c <= 10.0; c += 0.25) {
      const double k = tauberian_constant(c, q);
      CHECK(k > prev);
      prev = k;
    }
  }
  CHECK_THROWS_AS(tauberian_constant(1.0, 1.0), Error);
  CHECK_THROWS_AS(tauberian_constant(1.0, 0.5), Error);
}

TEST_CASE("log-Laplace transform") {
  const ProcessParams p(Kind::rlp, 2.0, 0.5);
  SUBCASE("h = 0 is exactly zero") {
    const auto s = log_laplace(p, SemiNormSpec::lp(2.0), {0.0, 1.0}, 2000, 4, opts(6));
    CHECK(s.h.front() == 0.0);
    CHECK(s.psi.front() == 0.0);
  }
  SUBCASE("Brownian L2: q = 2, subadditive and monotone") {
    const auto s = log_laplace(p, SemiNormSpec::lp(2.0), {1.0, 2.0, 4.0}, 100'000, 4, opts(8));
    CHECK(s.q == doctest::Approx(2.0));
    CHECK_FALSE(s.indicator_form);
    CHECK(s.checks.size() == 6);
    for (const auto& c : s.checks) {
      CAPTURE(c.a);
      CAPTURE(c.b);
      CHECK(c.pass);
    }
    CHECK(s.subadditive);
    CHECK(s.monotone);
    for (double v : s.psi) CHECK(v <= 0.0);
    REQUIRE(s.K_estimate.has_value());
    CHECK(*s.K_estimate > 0.0);
  }
  SUBCASE("supremum uses the indicator form") {
    const auto s = log_laplace(p, SemiNormSpec::sup(), {0.5, 1.0, 2.0}, 20'000, 4, opts(8));
    CHECK(s.indicator_form);
    CHECK(s.q == doctest::Approx(0.5));
    CHECK(s.subadditive);
    CHECK(s.monotone);
  }
}

TEST_CASE("dominance checks") {
  SUBCASE("degenerate split a = 1, b = 0") {
    const auto r = dominance_check(ProcessParams(Kind::rlp, 2.0, 0.75), SemiNormSpec::lp(2.0), 1.0, 0.0, {}, 20'000, 6,
                                   opts(7));
    CHECK(r.pass);
    CHECK(r.max_abs_difference <= r.band);
  }
  SUBCASE("Brownian supremum, product form") {
    const auto r = dominance_check(kBrownian, SemiNormSpec::sup(), 0.5, 0.5, {}, 20'000, 6, opts(8));
    CHECK(r.product_form);
    CHECK(r.q == doctest::Approx(0.5));
    CHECK(r.pass);
    for (const auto& pt : r.points) CHECK(pt.pass);
  }
  SUBCASE("stable L2") {
    const auto r = dominance_check(ProcessParams(Kind::rlp, 1.5, 0.9), SemiNormSpec::lp(2.0), 0.5, 0.5, {}, 20'000, 6,
                                   opts(7));
    CHECK_FALSE(r.product_form);
    CHECK(r.pass);
    CHECK(r.band == doctest::Approx(2.0 * std::sqrt(std::log(2.0 / 0.0005) / (2.0 * 20'000.0))));
  }
  SUBCASE("any positive split") {
    const auto r = dominance_check(kBrownian, SemiNormSpec::lp(2.0), 3.0, 1.0, {}, 20'000, 6, opts(7));
    CHECK(r.pass);
    CHECK_THROWS_AS(dominance_check(kBrownian, SemiNormSpec::lp(2.0), 0.0, 1.0, {}, 2000, 6, opts(6)), Error);
  }
}

TEST_CASE("long-memory part is negligible") {
  SUBCASE("M = 0 when H' = 0") {
    const auto r = lmp_negligible(ProcessParams(Kind::lfsm, 2.0, 0.5), SemiNormSpec::sup(), {0.5, 1.0, 1.5}, 2000, 3,
                                  opts(6));
    for (const auto& row : r.rows) {
      CHECK(row.lmp.p_hat == 1.0);
      CHECK(row.stat_lmp == 0.0);
    }
    CHECK_FALSE(r.conjectural);
  }
  SUBCASE("rate without a finiteness guarantee is conjectural") {
    // H = 0.7 > eta, but H < eta + 1/alpha
    const auto r = lmp_negligible(ProcessParams(Kind::lfsm, 1.5, 0.7), SemiNormSpec::holder(0.1), {1.0, 2.0, 4.0},
                                  2000, 3, opts(6));
    CHECK(r.gamma == doctest::Approx(1.0 / 0.6));
    CHECK(r.conjectural);
  }
  SUBCASE("rate must apply") {
    CHECK_THROWS_AS(lmp_negligible(ProcessParams(Kind::lfsm, 2.0, 0.75), SemiNormSpec::holder(0.8), {0.5, 1.0}, 2000,
                                   3, opts(6)),
                    Error);
  }
}

TEST_CASE("pilot epsilon grid") {
  const auto eps = pilot_epsilon_grid(kBrownian, SemiNormSpec::sup(), 10'000, 6, 2, opts(7));
  REQUIRE(eps.size() == 6);
  for (std::size_t i = 1; i < eps.size(); ++i) CHECK(eps[i] > eps[i - 1]);
  const auto est = mc_small_ball(kBrownian, SemiNormSpec::sup(), eps, 10'000, 2, opts(7));
  CHECK(est.front().hits >= 50);
  CHECK(est.back().p_hat == doctest::Approx(0.5).epsilon(0.1));
}

}
