#include "fracdev/stable_rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracdev/error.hpp"
#include "fracdev/stats.hpp"

namespace fracdev::rng {

StabilityIndex::StabilityIndex(double alpha) : alpha_(alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, errc::invalid_argument,
          "stability index must lie in (0, 2], got " + std::to_string(alpha));
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::array<std::uint64_t, 2> NoiseStream::block(std::uint64_t k) const noexcept {
  const auto out = philox4x32(
      {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32),
       static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
      {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
  return {(static_cast<std::uint64_t>(out[0]) << 32) | out[1],
          (static_cast<std::uint64_t>(out[2]) << 32) | out[3]};
}

std::array<double, 2> NoiseStream::uniforms(std::uint64_t k) const noexcept {
  constexpr double kUlp = 0x1.0p-53;
  const auto bits = block(k);
  return {(static_cast<double>(bits[0] >> 11) + 0.5) * kUlp,
          (static_cast<double>(bits[1] >> 11) + 0.5) * kUlp};
}

double sas_draw(StabilityIndex alpha_index, const NoiseStream& stream, std::uint64_t k) {
  using std::numbers::pi;
  const double alpha = alpha_index.value();
  if (alpha == 2.0) {
    // Box-Muller: block k/2 yields the pair (cos, sin); variance 2 per draw.
    const auto u = stream.uniforms(k >> 1);
    const double radius = std::sqrt(-4.0 * std::log(u[0]));
    const double angle = 2.0 * pi * u[1];
    return (k & 1u) ? radius * std::sin(angle) : radius * std::cos(angle);
  }
  const auto u = stream.uniforms(k);
  const double v = pi * (u[0] - 0.5);
  if (alpha == 1.0) return std::tan(v);
  // Chambers-Mallows-Stuck, symmetric case. Without skewness the map is
  // continuous through alpha = 1, so no reparametrisation is needed there.
  const double w = -std::log(u[1]);
  return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

void fill_sas(StabilityIndex alpha, double scale, std::span<double> out, NoiseStream& stream) {
  require(std::isfinite(scale) && scale >= 0.0, errc::invalid_argument,
          "scale must be finite and non-negative");
  const std::uint64_t start = stream.position();
  if (scale == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
  } else if (alpha.gaussian()) {
    // Same values as sas_draw, one Box-Muller pair per Philox block.
    std::size_t i = 0;
    if ((start & 1u) && !out.empty()) out[i++] = scale * sas_draw(alpha, stream, start);
    for (; i + 1 < out.size(); i += 2) {
      const auto u = stream.uniforms((start + i) >> 1);
      const double radius = std::sqrt(-4.0 * std::log(u[0]));
      const double angle = 2.0 * std::numbers::pi * u[1];
      out[i] = scale * (radius * std::cos(angle));
      out[i + 1] = scale * (radius * std::sin(angle));
    }
    if (i < out.size()) out[i] = scale * sas_draw(alpha, stream, start + i);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * sas_draw(alpha, stream, start + i);
  }
  stream.advance(out.size());
}

std::vector<double> sample_sas(StabilityIndex alpha, double scale, std::size_t n, NoiseStream& stream) {
  require(n >= 1, errc::empty_sample, "sample_sas: n must be at least 1");
  std::vector<double> out(n);
  fill_sas(alpha, scale, out, stream);
  return out;
}

TailEstimate tail_constant_check(StabilityIndex alpha, double r, std::size_t n, NoiseStream& stream) {
  require(!alpha.gaussian(), errc::gaussian_tail,
          "tail constant undefined for alpha = 2: Gaussian tail is not a power law");
  require(n > 0, errc::empty_sample, "tail_constant_check: empty sample");
  require(std::isfinite(r) && r > 0.0, errc::invalid_argument, "threshold r must be positive");
  const std::uint64_t start = stream.position();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += std::abs(sas_draw(alpha, stream, start + i)) > r;
  stream.advance(n);

  const double factor = std::pow(r, alpha.value());
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  const auto ci = stats::wilson_interval(static_cast<double>(hits), n, 3.0);
  TailEstimate est;
  est.r = r;
  est.n = n;
  est.exceedances = hits;
  est.value = factor * p;
  est.stderr_ = factor * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  est.ci_low = factor * ci.low;
  est.ci_high = factor * ci.high;
  return est;
}

}  // namespace fracdev::rng
