#pragma once

// Small deviation rates gamma = 1 / (H - beta - 1/p), the finiteness
// conditions on the constant, and the rate tables for the classical
// process families, with an exact rational evaluator for their formulas.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracdev/seminorms.hpp"

namespace fracdev::rates {

struct RateGamma {
  std::optional<double> gamma;
  std::string violated;  // non-empty when gamma is not applicable

  bool applicable() const noexcept { return gamma.has_value(); }
};

/// 1/(H - beta - 1/p) when H > beta + 1/p; otherwise "not applicable" with
/// the violated condition named.
RateGamma rate_gamma(double hurst, const seminorm::SemiNormClass& cls);

enum class Finiteness { constant_exists_finite, constant_exists_maybe_infinite, out_of_theorem };
std::string_view to_string(Finiteness f);

/// Finite constant when the path is continuous (alpha = 2 or H > 1/alpha)
/// and H > beta + 1/p (+ 1/alpha if alpha < 2), with H < 2 for classes
/// that hold only in the wide sense. The boundary H = beta + 1/p + 1/alpha
/// is reported as out of theorem.
Finiteness finiteness_condition(double hurst, double alpha, const seminorm::SemiNormClass& cls);

/// Exact rational with 64-bit numerator and denominator, always reduced
/// and with a positive denominator. Overflow throws.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num_, den_); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(Rational a, Rational b);
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }
  friend bool operator>(Rational a, Rational b) { return b < a; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exact rate for rational (H, beta) and p given as 1/p (0 for p = inf).
std::optional<Rational> rate_gamma_exact(Rational hurst, Rational beta, Rational inv_p);

/// Evaluates an ASCII formula such as "2p/(p-2)" or "alpha*p/(p-alpha)" in
/// exact arithmetic. Grammar: + - * / parentheses, integer literals,
/// variables (H, eta, p, alpha) and implicit multiplication ("2p", "Hp").
Rational evaluate_formula(std::string_view formula, const std::map<std::string, Rational>& vars);

enum class Family { brownian, gaussian_fractional, stable_levy, stable_fractional };
std::string_view to_string(Family f);
Family family_from_string(std::string_view name);

struct RateRow {
  std::string seminorm;   // "Supremum", "L_p", ...
  seminorm::Kind kind;
  std::string gamma;      // formula in H, eta, p, alpha
  std::string condition;  // extra validity condition, empty if none
};

std::vector<RateRow> rate_table(Family family);

/// CSV "seminorm,gamma,condition" of a family's table.
std::string rate_table_csv(Family family);

}  // namespace fracdev::rates
