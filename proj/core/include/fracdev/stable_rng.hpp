#pragma once

// Symmetric alpha-stable variates on a counter-based (Philox4x32-10) generator.
//
// Scale convention: a unit-scale draw has characteristic function
// E[exp(i lambda Y)] = exp(-|lambda|^alpha). A draw with scale c has
// exp(-c^alpha |lambda|^alpha), so the increment of the Levy process over a
// step dt uses c = dt^(1/alpha).
//
// NOTE: for alpha = 2 this is exp(-lambda^2), i.e. a centred Gaussian with
// variance 2 c^2, NOT a standard normal. Every Gaussian oracle has to account
// for the factor 2 (ProcessParams::normalize_gaussian removes it).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fracdev::rng {

/// Stability index alpha in (0, 2].
class StabilityIndex {
 public:
  explicit StabilityIndex(double alpha);

  double value() const noexcept { return alpha_; }
  bool gaussian() const noexcept { return alpha_ == 2.0; }

  friend bool operator==(StabilityIndex, StabilityIndex) = default;

 private:
  double alpha_;
};

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Splittable noise stream. Block k of stream s under master seed m is the
/// Philox image of counter (k, s) under key m, so every draw is a pure
/// function of (m, s, k) regardless of which thread consumes it.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t position = 0) noexcept
      : seed_(master_seed), stream_(stream_id), position_(position) {}

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }
  std::uint64_t position() const noexcept { return position_; }

  /// 128 random bits for block k.
  std::array<std::uint64_t, 2> block(std::uint64_t k) const noexcept;

  /// Two uniforms in the open interval (0, 1) with 53-bit resolution.
  std::array<double, 2> uniforms(std::uint64_t k) const noexcept;

  void advance(std::uint64_t n) noexcept { position_ += n; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_;
};

/// Draw number k of the stream at unit scale. Independent of the stream's
/// current position.
double sas_draw(StabilityIndex alpha, const NoiseStream& stream, std::uint64_t k);

/// Fills `out` with i.i.d. draws at the given scale, starting at the
/// stream's current position, and advances the stream past them.
void fill_sas(StabilityIndex alpha, double scale, std::span<double> out, NoiseStream& stream);

/// n i.i.d. symmetric alpha-stable draws with characteristic function
/// exp(-scale^alpha |lambda|^alpha). scale = 0 gives a point mass at zero.
std::vector<double> sample_sas(StabilityIndex alpha, double scale, std::size_t n, NoiseStream& stream);

struct TailEstimate {
  double r = 0.0;
  std::size_t n = 0;
  std::size_t exceedances = 0;
  double value = 0.0;   // r^alpha * P[|y| > r]
  double stderr_ = 0.0;  // binomial standard error of value
  double ci_low = 0.0;   // Wilson interval at 3 standard deviations, scaled by r^alpha
  double ci_high = 0.0;
};

/// Monte-Carlo estimate of r^alpha P[|y| > r] for unit-scale draws, which
/// tends to the tail constant as r grows. Use r >= 20 to be in the
/// power-law regime. Rejects alpha = 2 (Gaussian tail) and n = 0.
TailEstimate tail_constant_check(StabilityIndex alpha, double r, std::size_t n, NoiseStream& stream);

}  // namespace fracdev::rng
