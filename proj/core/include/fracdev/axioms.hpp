#pragma once

// Executable checks of the semi-norm axioms on a seeded corpus of
// piecewise-linear functions with dyadic knots.
//
//   homogeneity   ||l f|| = |l| ||f||
//   triangle      ||f + g|| <= ||f|| + ||g||
//   (A)           ||f||_I <= ||f||_J for I inside J
//   (B)           the value on [a, a + l] equals the value of the shifted samples on [0, l]
//   (C)           ||f(2^k .)||_{[0, 2^-k]} = 2^{k beta} ||f||_{[0, 1]}
//   (D)           ||f||_I^p >= ||f||_{I1}^p + ||f||_{I2}^p   (max for p = inf)
//   (G)           ||f||_I <= C_p (||f||_{I1}^p + ||f||_{I2}^p)^{1/p} when f vanishes at the split knot
//   (G~)          ||sum_n x_n psi_jn|| <= C 2^{beta j} (sum |x_n|^p)^{1/p}
//
// (C) and (D) use the upper class (u_beta, u_p). For SOBOLEV and BESOV,
// which hold (G~) only with an unspecified constant, the check is level
// uniformity: the ratio at level j may exceed the level-0 single-tent
// ratio by at most a factor 4, for j <= L - 3.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdev/seminorms.hpp"

namespace fracdev::seminorm {

struct Corpus {
  unsigned level = 8;  // members are sampled on the level-L grid of [0, 1]
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> members;
};

/// Member i is piecewise linear on the knots of a level k_i in [1, L],
/// with values drawn from stream (seed, i): either independent normals or
/// a normal random walk at the knots.
Corpus make_corpus(std::size_t size, std::uint64_t seed, unsigned level = 8);

struct AxiomCount {
  std::string axiom;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool skipped = false;
  std::string note;
  /// Largest observed lhs / rhs (1 means equality is attained).
  double worst_ratio = 0.0;
};

struct AxiomReport {
  SemiNormSpec spec;
  SemiNormClass cls;
  double tolerance = 0.0;
  std::size_t corpus_size = 0;
  unsigned level = 0;
  std::vector<AxiomCount> axioms;

  bool all_pass() const;
  const AxiomCount& at(const std::string& axiom) const;
};

/// Comparisons lhs <= rhs are accepted when lhs <= rhs + tolerance * max(1, |lhs|, |rhs|).
AxiomReport check_axioms(const SemiNormSpec& spec, const Corpus& corpus, double tolerance,
                         std::optional<unsigned> threads = std::nullopt);

}  // namespace fracdev::seminorm
