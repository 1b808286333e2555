#include "fracdev/rates.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fracdev/error.hpp"
#include "fracdev/path_io.hpp"

namespace fracdev::rates {

using seminorm::Kind;
using seminorm::SemiNormClass;

namespace {

constexpr double kBoundaryTol = 1e-12;

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

std::string num(double x) { return io::format_double(x); }

}  // namespace

RateGamma rate_gamma(double hurst, const SemiNormClass& cls) {
  const double threshold = cls.beta + inv(cls.p_index);
  if (!(hurst > threshold)) {
    return {std::nullopt, "H <= beta + 1/p (" + num(hurst) + " <= " + num(threshold) +
                              "): rate theorem inapplicable"};
  }
  return {1.0 / (hurst - threshold), {}};
}

std::string_view to_string(Finiteness f) {
  switch (f) {
    case Finiteness::constant_exists_finite: return "CONSTANT_EXISTS_FINITE";
    case Finiteness::constant_exists_maybe_infinite: return "CONSTANT_EXISTS_MAYBE_INFINITE";
    case Finiteness::out_of_theorem: return "OUT_OF_THEOREM";
  }
  return "OUT_OF_THEOREM";
}

Finiteness finiteness_condition(double hurst, double alpha, const SemiNormClass& cls) {
  const double base = cls.beta + inv(cls.p_index);
  if (!(hurst > base)) return Finiteness::out_of_theorem;
  const bool gaussian = alpha == 2.0;
  const double threshold = gaussian ? base : base + 1.0 / alpha;
  if (!gaussian && std::abs(hurst - threshold) <= kBoundaryTol) return Finiteness::out_of_theorem;
  const bool continuous = gaussian || hurst > 1.0 / alpha;
  const bool wide_ok = cls.membership != seminorm::Membership::n_tilde_schauder || hurst < 2.0;
  if (continuous && hurst > threshold && wide_ok) return Finiteness::constant_exists_finite;
  return Finiteness::constant_exists_maybe_infinite;
}

// ---------------------------------------------------------------- Rational

namespace {

__extension__ typedef __int128 i128;

std::int64_t checked(i128 v) {
  require(v <= INT64_MAX && v >= -INT64_MAX, errc::invalid_argument, "rational overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  require(den != 0, errc::invalid_argument, "rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  require(den != 0, errc::invalid_argument, "rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}
Rational operator/(Rational a, Rational b) {
  require(b.num_ != 0, errc::invalid_argument, "rational division by zero");
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}
bool operator<(Rational a, Rational b) {
  return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

std::optional<Rational> rate_gamma_exact(Rational hurst, Rational beta, Rational inv_p) {
  const Rational gap = hurst - beta - inv_p;
  if (!(gap > Rational(0))) return std::nullopt;
  return Rational(1) / gap;
}

// ---------------------------------------------------------------- formulas

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const std::map<std::string, Rational>& vars) : text_(text), vars_(vars) {}

  Rational parse() {
    const Rational r = expression();
    skip();
    require(pos_ == text_.size(), errc::invalid_argument, "unexpected '" + std::string(text_.substr(pos_)) +
                                                             "' in formula '" + std::string(text_) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Rational expression() {
    Rational r = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      const Rational rhs = term();
      r = c == '+' ? r + rhs : r - rhs;
    }
    return r;
  }

  Rational term() {
    Rational r = unary();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        const Rational rhs = unary();
        r = c == '*' ? r * rhs : r / rhs;
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
        r = r * unary();  // implicit multiplication: "2p", "Hp", "2(p-1)"
      } else {
        return r;
      }
    }
  }

  Rational unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return primary();
  }

  Rational primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const Rational r = expression();
      require(peek() == ')', errc::invalid_argument, "missing ')' in formula '" + std::string(text_) + "'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_++] - '0');
      }
      return Rational(v);
    }
    for (const char* name : {"alpha", "eta", "H", "p"}) {
      const std::string_view n(name);
      if (text_.substr(pos_, n.size()) == n) {
        pos_ += n.size();
        const auto it = vars_.find(std::string(n));
        require(it != vars_.end(), errc::invalid_argument, "formula variable '" + std::string(n) + "' is unbound");
        return it->second;
      }
    }
    throw Error(errc::invalid_argument, "cannot parse formula '" + std::string(text_) + "' at position " +
                                            std::to_string(pos_));
  }

  std::string_view text_;
  const std::map<std::string, Rational>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational evaluate_formula(std::string_view formula, const std::map<std::string, Rational>& vars) {
  return FormulaParser(formula, vars).parse();
}

// ---------------------------------------------------------------- tables

std::string_view to_string(Family f) {
  switch (f) {
    case Family::brownian: return "brownian";
    case Family::gaussian_fractional: return "gaussian_fractional";
    case Family::stable_levy: return "stable_levy";
    case Family::stable_fractional: return "stable_fractional";
  }
  return "brownian";
}

Family family_from_string(std::string_view name) {
  for (Family f : {Family::brownian, Family::gaussian_fractional, Family::stable_levy, Family::stable_fractional}) {
    if (name == to_string(f)) return f;
  }
  throw Error(errc::invalid_argument, "unknown process family '" + std::string(name) +
                                          "' (expected brownian, gaussian_fractional, stable_levy, stable_fractional)");
}

std::vector<RateRow> rate_table(Family family) {
  switch (family) {
    case Family::brownian:
      return {{"Supremum", Kind::sup, "2", ""},
              {"L_p", Kind::lp, "2", ""},
              {"eta-Holder", Kind::holder, "2/(1-2eta)", "eta<1/2"},
              {"p-variation", Kind::pvar, "2p/(p-2)", "p>2"},
              {"(eta,p)-Sobolev", Kind::sobolev, "2/(1-2eta)", "eta<1/2"},
              {"(eta,inf,q)-Besov", Kind::besov, "2/(1-2eta)", "eta<1/2"}};
    case Family::gaussian_fractional:
      return {{"Supremum", Kind::sup, "1/H", ""},
              {"L_p", Kind::lp, "1/H", ""},
              {"eta-Holder", Kind::holder, "1/(H-eta)", "H>eta"},
              {"p-variation", Kind::pvar, "p/(Hp-1)", "H>1/p"},
              {"(eta,inf,q)-Besov", Kind::besov, "1/(H-eta)", "H>eta"},
              {"(eta,p)-Sobolev", Kind::sobolev, "1/(H-eta)", "H>eta; H<2"}};
    case Family::stable_levy:
      return {{"Supremum", Kind::sup, "alpha", ""},
              {"L_p", Kind::lp, "alpha", ""},
              {"p-variation", Kind::pvar, "alpha*p/(p-alpha)", "p>alpha"}};
    case Family::stable_fractional:
      return {{"Supremum", Kind::sup, "1/H", "H>1/alpha"},
              {"L_p", Kind::lp, "1/H", "H>1/alpha"},
              {"eta-Holder", Kind::holder, "1/(H-eta)", "H>eta+1/alpha"},
              {"p-variation", Kind::pvar, "p/(Hp-1)", "H>1/p+1/alpha"},
              {"(eta,inf,q)-Besov", Kind::besov, "1/(H-eta)", "H>eta+1/alpha"},
              {"(eta,p)-Sobolev", Kind::sobolev, "1/(H-eta)", "H>eta+1/alpha; H<2"},
              {"L_p (discontinuous)", Kind::lp, "1/H", "1/alpha-1/p<H<1/alpha"}};
  }
  return {};
}

std::string rate_table_csv(Family family) {
  const auto quote = [](const std::string& s) {
    return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
  };
  std::ostringstream out;
  out << "seminorm,gamma,condition\n";
  for (const auto& row : rate_table(family)) {
    out << quote(row.seminorm) << ',' << quote(row.gamma) << ',' << quote(row.condition) << '\n';
  }
  return out.str();
}

}  // namespace fracdev::rates
