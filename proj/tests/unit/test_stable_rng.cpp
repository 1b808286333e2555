#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracdev/error.hpp"
#include "fracdev/parallel.hpp"
#include "fracdev/stable_rng.hpp"
#include "fracdev/stats.hpp"
#include "oracles.hpp"

using namespace fracdev;
using rng::NoiseStream;
using rng::StabilityIndex;

TEST_SUITE("stable_rng") {

// Known-answer vectors published with the Random123 library.
TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(rng::philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(rng::philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(rng::philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stability index range") {
  CHECK_THROWS_AS(StabilityIndex(0.0), Error);
  CHECK_THROWS_AS(StabilityIndex(2.0001), Error);
  CHECK_THROWS_AS(StabilityIndex(std::nan("")), Error);
  CHECK(StabilityIndex(2.0).gaussian());
  CHECK_FALSE(StabilityIndex(1.999).gaussian());
}

TEST_CASE("uniforms stay inside (0, 1)") {
  NoiseStream s(3, 9);
  for (std::uint64_t k = 0; k < 20000; ++k) {
    for (double u : s.uniforms(k)) {
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
    }
  }
}

TEST_CASE("alpha = 2 unit draws have variance 2") {
  NoiseStream s(11, 0);
  const auto y = rng::sample_sas(StabilityIndex(2.0), 1.0, 1'000'000, s);
  CHECK(stats::variance(y) == doctest::Approx(2.0).epsilon(0.005));
  CHECK(std::abs(stats::mean(y)) < 5.0 * std::sqrt(2.0 / 1e6));
}

TEST_CASE("Cauchy tail matches 1 - (2/pi) arctan r") {
  NoiseStream s(12, 0);
  const auto y = rng::sample_sas(StabilityIndex(1.0), 1.0, 1'000'000, s);
  const auto over = std::count_if(y.begin(), y.end(), [](double v) { return std::abs(v) > 50.0; });
  const double est = 50.0 * static_cast<double>(over) / 1e6;
  const double exact = 50.0 * (1.0 - 2.0 / std::numbers::pi * std::atan(50.0));
  CHECK(est == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.05));
  CHECK(est == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("zero scale is a point mass") {
  NoiseStream s(1, 2);
  const auto y = rng::sample_sas(StabilityIndex(0.8), 0.0, 1000, s);
  CHECK(std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("non-finite scale is rejected") {
  NoiseStream s(1, 2);
  CHECK_THROWS_AS(rng::sample_sas(StabilityIndex(1.5), INFINITY, 10, s), Error);
  CHECK_THROWS_AS(rng::sample_sas(StabilityIndex(1.5), -1.0, 10, s), Error);
}

TEST_CASE("quadrature tail oracle reproduces the Cauchy closed form") {
  for (double r : {1.0, 5.0, 50.0}) {
    const double exact = 1.0 - 2.0 / std::numbers::pi * std::atan(r);
    CHECK(oracle::stable_two_sided_tail(1.0, r) == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("tail constant check") {
  SUBCASE("Cauchy at r = 50") {
    NoiseStream s(5, 1);
    const auto t = rng::tail_constant_check(StabilityIndex(1.0), 50.0, 1'000'000, s);
    const double exact = 50.0 * (1.0 - 2.0 / std::numbers::pi * std::atan(50.0));
    CHECK(std::abs(t.value - exact) <= 3.0 * t.stderr_);
    CHECK(t.ci_low <= exact);
    CHECK(exact <= t.ci_high);
    CHECK(s.position() == 1'000'000);
  }
  SUBCASE("alpha = 1.5 against the characteristic-function quadrature") {
    NoiseStream s(5, 2);
    const auto t = rng::tail_constant_check(StabilityIndex(1.5), 50.0, 1'000'000, s);
    const double expected = std::pow(50.0, 1.5) * oracle::stable_two_sided_tail(1.5, 50.0);
    MESSAGE("MC " << t.value << " +- " << t.stderr_ << ", quadrature " << expected);
    CHECK(std::abs(t.value - expected) <= 3.0 * t.stderr_);
  }
  SUBCASE("errors") {
    NoiseStream s(5, 3);
    try {
      rng::tail_constant_check(StabilityIndex(2.0), 50.0, 1000, s);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == errc::gaussian_tail);
    }
    try {
      rng::tail_constant_check(StabilityIndex(1.0), 50.0, 0, s);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == errc::empty_sample);
    }
  }
}

TEST_CASE("symmetry: sample median near zero") {
  for (double a : {0.8, 1.0, 1.5, 2.0}) {
    CAPTURE(a);
    NoiseStream s(21, 0);
    const auto y = rng::sample_sas(StabilityIndex(a), 1.0, 100'000, s);
    std::vector<double> sorted = y;
    std::sort(sorted.begin(), sorted.end());
    const double iqr = stats::quantile_sorted(sorted, 0.75) - stats::quantile_sorted(sorted, 0.25);
    CHECK(std::abs(stats::median(y)) <= 4.0 * iqr / std::sqrt(1e5));
  }
}

TEST_CASE("stability under summation") {
  for (double a : {0.8, 1.0, 1.5, 2.0}) {
    CAPTURE(a);
    const StabilityIndex alpha(a);
    NoiseStream s1(31, 0), s2(31, 1), s3(31, 2);
    const std::size_t n = 50'000;
    const auto y1 = rng::sample_sas(alpha, 1.0, n, s1);
    const auto y2 = rng::sample_sas(alpha, 1.0, n, s2);
    const auto fresh = rng::sample_sas(alpha, 1.0, n, s3);
    std::vector<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = (y1[i] + y2[i]) / std::pow(2.0, 1.0 / a);
    const auto ks = stats::ks_two_sample(sum, fresh);
    CHECK(ks.p_value > 0.01);
  }
}

TEST_CASE("draws are a pure function of (seed, stream, index)") {
  for (double a : {0.8, 1.0, 1.5, 2.0}) {
    const StabilityIndex alpha(a);
    NoiseStream whole(77, 5);
    const auto all = rng::sample_sas(alpha, 1.3, 1001, whole);
    // same values when consumed in odd-sized chunks from a fresh stream
    NoiseStream parts(77, 5);
    std::vector<double> chunked;
    for (std::size_t len : {1u, 2u, 7u, 990u, 1u}) {
      auto piece = rng::sample_sas(alpha, 1.3, len, parts);
      chunked.insert(chunked.end(), piece.begin(), piece.end());
    }
    CHECK(chunked == all);
    for (std::uint64_t k : {0u, 1u, 500u, 1000u}) CHECK(1.3 * rng::sas_draw(alpha, NoiseStream(77, 5), k) == all[k]);
  }
}

TEST_CASE("worker count does not change parallel draws") {
  const StabilityIndex alpha(1.5);
  const std::size_t streams = 64;
  auto run = [&](unsigned threads) {
    std::vector<double> out(streams * 100);
    parallel_for(streams, threads, [&](std::size_t i) {
      NoiseStream s(9, i);
      rng::fill_sas(alpha, 1.0, std::span<double>(out).subspan(i * 100, 100), s);
    });
    return out;
  };
  CHECK(run(1) == run(4));
}

TEST_CASE("different streams are different") {
  NoiseStream a(1, 0), b(1, 1), c(2, 0);
  const auto x = rng::sample_sas(StabilityIndex(1.5), 1.0, 16, a);
  const auto y = rng::sample_sas(StabilityIndex(1.5), 1.0, 16, b);
  const auto z = rng::sample_sas(StabilityIndex(1.5), 1.0, 16, c);
  CHECK(x != y);
  CHECK(x != z);
}

}
