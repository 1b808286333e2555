#include "fracdev/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "fracdev/error.hpp"
#include "fracdev/parallel.hpp"
#include "fracdev/schauder.hpp"
#include "fracdev/stable_rng.hpp"

namespace fracdev::seminorm {

namespace {

const rng::StabilityIndex kGauss(2.0);

// Corpus members use stream 2i, the random choices of the checks 2i + 1.
double normal(const rng::NoiseStream& s, std::uint64_t k) {
  return rng::sas_draw(kGauss, s, k) / std::numbers::sqrt2;
}

enum Axiom : std::size_t { homogeneity, triangle, contractivity, translation, self_similarity, superadditivity,
                           subadditivity, wide_sense, kAxioms };

constexpr std::array<const char*, kAxioms> kNames = {
    "homogeneity", "triangle", "A_contractivity", "B_translation", "C_self_similarity", "D_superadditivity",
    "G_subadditivity", "G_tilde_schauder"};

struct Outcome {
  int status = -1;  // -1 not checked, 0 fail, 1 pass
  double ratio = 0.0;
};

struct Checker {
  double tol;

  // small <= big up to tolerance.
  Outcome leq(double small, double big) const {
    const double scale = std::max({1.0, std::abs(small), std::abs(big)});
    Outcome o;
    o.status = small <= big + tol * scale ? 1 : 0;
    o.ratio = big > 0.0 ? small / big : (small > 0.0 ? INFINITY : 1.0);
    return o;
  }
  Outcome equal(double a, double b) const {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    Outcome o;
    o.status = std::abs(a - b) <= tol * scale ? 1 : 0;
    o.ratio = b > 0.0 ? a / b : (a > 0.0 ? INFINITY : 1.0);
    return o;
  }
};

double combine(double a, double b, double p) {
  return std::isinf(p) ? std::max(a, b) : std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
}

double lp_norm(std::span<const double> x, double p) {
  double acc = 0.0;
  for (double v : x) acc = std::isinf(p) ? std::max(acc, std::abs(v)) : acc + std::pow(std::abs(v), p);
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

std::vector<double> schauder_sum(unsigned level, unsigned j, std::span<const double> x) {
  const std::size_t cells = std::size_t{1} << level;
  std::vector<double> f(cells + 1, 0.0);
  for (std::size_t n = 1; n <= x.size(); ++n) {
    for (std::size_t k = 0; k <= cells; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(cells);
      const double psi = schauder::schauder_function(j, n, t);
      if (psi != 0.0) f[k] += x[n - 1] * psi;
    }
  }
  return f;
}

}  // namespace

Corpus make_corpus(std::size_t size, std::uint64_t seed, unsigned level) {
  require(size >= 2, errc::invalid_argument, "corpus needs at least 2 members");
  require(level >= 4 && level <= 14, errc::invalid_argument, "corpus level must lie in [4, 14]");
  Corpus corpus;
  corpus.level = level;
  corpus.seed = seed;
  corpus.members.resize(size);
  const std::size_t cells = std::size_t{1} << level;
  for (std::size_t i = 0; i < size; ++i) {
    const rng::NoiseStream stream(seed, 2 * i);
    const auto head = stream.block(0);
    const unsigned k = 1 + static_cast<unsigned>(head[0] % level);
    const bool walk = (head[1] & 1u) != 0;
    const std::size_t knots = std::size_t{1} << k;
    std::vector<double> at(knots + 1);
    double acc = 0.0;
    const double step = std::ldexp(1.0, -static_cast<int>(k) / 2);
    for (std::size_t q = 0; q <= knots; ++q) {
      const double z = normal(stream, 2 + q);
      acc += z * step;
      at[q] = walk ? acc : z;
    }
    auto& f = corpus.members[i];
    f.resize(cells + 1);
    const std::size_t span = cells / knots;
    for (std::size_t q = 0; q < knots; ++q) {
      for (std::size_t r = 0; r < span; ++r) {
        f[q * span + r] = at[q] + (at[q + 1] - at[q]) * (static_cast<double>(r) / static_cast<double>(span));
      }
    }
    f[cells] = at[knots];
  }
  return corpus;
}

bool AxiomReport::all_pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomCount& a) { return a.skipped || a.failed == 0; });
}

const AxiomCount& AxiomReport::at(const std::string& axiom) const {
  for (const auto& a : axioms) {
    if (a.axiom == axiom) return a;
  }
  throw Error(errc::invalid_argument, "no axiom named '" + axiom + "' in report");
}

AxiomReport check_axioms(const SemiNormSpec& spec, const Corpus& corpus, double tolerance,
                         std::optional<unsigned> threads) {
  validate(spec);
  require(corpus.members.size() >= 2, errc::invalid_argument, "corpus needs at least 2 members");
  require(std::isfinite(tolerance) && tolerance >= 0.0, errc::invalid_argument, "tolerance must be non-negative");
  const unsigned level = corpus.level;
  const std::size_t cells = std::size_t{1} << level;
  for (const auto& f : corpus.members) {
    require(f.size() == cells + 1, errc::non_dyadic, "corpus member length does not match its level");
  }

  AxiomReport report;
  report.spec = spec;
  report.cls = classify(spec);
  report.tolerance = tolerance;
  report.corpus_size = corpus.members.size();
  report.level = level;
  const auto& cls = report.cls;
  const double step = 1.0 / static_cast<double>(cells);
  const Checker check{tolerance};
  const unsigned top_level = level >= 3 ? level - 3 : 0;

  // Level-uniformity reference: the single level-0 tent.
  double tent_ratio = 0.0;
  if (!cls.wide_sense_constant) {
    const std::array<double, 1> one{1.0};
    tent_ratio = evaluate(spec, schauder_sum(level, 0, one), step);
  }

  const std::size_t size = corpus.members.size();
  std::vector<std::array<Outcome, kAxioms>> results(size);
  parallel_blocks(size, 64, resolve_threads(threads), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const auto& f = corpus.members[m];
      const auto& g = corpus.members[(m + 1) % size];
      const rng::NoiseStream choices(corpus.seed, 2 * m + 1);
      const auto pick = choices.block(0);
      auto& out = results[m];
      const std::span<const double> fs(f);
      const double norm = evaluate(spec, fs, step);

      {
        const double lambda = 4.0 * choices.uniforms(1)[0] - 2.0;
        std::vector<double> scaled(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) scaled[k] = lambda * f[k];
        out[homogeneity] = check.equal(evaluate(spec, scaled, step), std::abs(lambda) * norm);
      }
      {
        std::vector<double> sum(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) sum[k] = f[k] + g[k];
        out[triangle] = check.leq(evaluate(spec, sum, step), norm + evaluate(spec, g, step));
      }
      {
        const unsigned d = 1 + static_cast<unsigned>(pick[0] % 3);
        const std::size_t width = cells >> d;
        const std::size_t r = (pick[0] >> 8) % (std::size_t{1} << d);
        out[contractivity] = check.leq(evaluate(spec, fs.subspan(r * width, width + 1), step), norm);
      }
      {
        const std::size_t offset = (pick[1] % (cells / 2 + 1));
        const std::size_t length = cells / 2;
        const std::vector<double> shifted(f.begin() + static_cast<std::ptrdiff_t>(offset),
                                          f.begin() + static_cast<std::ptrdiff_t>(offset + length + 1));
        out[translation] = check.equal(evaluate(spec, fs.subspan(offset, length + 1), step),
                                       evaluate(spec, shifted, step));
      }
      {
        const int k = 1 + static_cast<int>((pick[1] >> 16) % 3);
        out[self_similarity] =
            check.equal(evaluate(spec, fs, std::ldexp(step, -k)), std::exp2(k * cls.u_beta) * norm);
      }

      // Split knot on a level-d grid, 1 <= d <= 3.
      const unsigned d = 1 + static_cast<unsigned>((pick[0] >> 24) % 3);
      const std::size_t parts = std::size_t{1} << d;
      const std::size_t split = (1 + (pick[0] >> 32) % (parts - 1)) * (cells / parts);
      if (spec.kind != Kind::besov) {
        const double left = evaluate(spec, fs.first(split + 1), step);
        const double right = evaluate(spec, fs.subspan(split), step);
        if (std::isinf(cls.u_p)) {
          out[superadditivity] = check.leq(std::max(left, right), norm);
        } else {
          out[superadditivity] = check.leq(std::pow(left, cls.u_p) + std::pow(right, cls.u_p),
                                           std::pow(norm, cls.u_p));
        }
      }
      if (cls.c_p) {
        std::vector<double> h(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) h[k] = f[k] - f[split];
        const std::span<const double> hs(h);
        const double left = evaluate(spec, hs.first(split + 1), step);
        const double right = evaluate(spec, hs.subspan(split), step);
        out[subadditivity] = check.leq(evaluate(spec, hs, step), *cls.c_p * combine(left, right, cls.p_index));
      }
      {
        const unsigned j = static_cast<unsigned>(m % (top_level + 1));
        std::vector<double> x(std::size_t{1} << j);
        for (std::size_t n = 0; n < x.size(); ++n) x[n] = normal(choices, 2 + n);
        const double value = evaluate(spec, schauder_sum(level, j, x), step);
        const double bound = std::exp2(cls.beta * j) * lp_norm(x, cls.p_index);
        if (cls.wide_sense_constant) {
          out[wide_sense] = check.leq(value, *cls.wide_sense_constant * bound);
        } else {
          out[wide_sense] = check.leq(value, 4.0 * tent_ratio * bound);
        }
      }
    }
  });

  for (std::size_t a = 0; a < kAxioms; ++a) {
    AxiomCount count;
    count.axiom = kNames[a];
    for (const auto& r : results) {
      if (r[a].status < 0) continue;
      (r[a].status == 1 ? count.passed : count.failed) += 1;
      count.worst_ratio = std::max(count.worst_ratio, r[a].ratio);
    }
    count.skipped = count.passed + count.failed == 0;
    report.axioms.push_back(count);
  }
  auto& sup_add = report.axioms[superadditivity];
  if (spec.kind == Kind::besov) sup_add.note = "not asserted: membership in the wide-sense class only";
  auto& sub_add = report.axioms[subadditivity];
  if (!cls.c_p) sub_add.note = "no subadditivity constant asserted for this kind";
  auto& wide = report.axioms[wide_sense];
  wide.note = cls.wide_sense_constant
                  ? "bound C 2^{beta j} |x|_p with C = " + std::to_string(*cls.wide_sense_constant)
                  : "level uniformity: ratio <= 4 x single-tent ratio for j <= L - 3";
  report.axioms[translation].note = "grid shifts";
  return report;
}

}  // namespace fracdev::seminorm
