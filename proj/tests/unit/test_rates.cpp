#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "fracdev/error.hpp"
#include "fracdev/rates.hpp"

using namespace fracdev;
using rates::Family;
using rates::Finiteness;
using rates::Rational;
using seminorm::SemiNormSpec;

namespace {

// LaTeX cell text -> the ASCII spelling used by the tables.
std::string normalise(std::string s) {
  const std::pair<std::string, std::string> subs[] = {
      {"\\eta", "eta"}, {"\\alpha", "alpha"}, {"\\infty", "inf"}, {"H\\\"older", "Holder"}};
  for (const auto& [from, to] : subs) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from)) s.replace(pos, from.size(), to);
  }
  std::string out;
  for (char c : s) {
    if (c != '$' && c != ' ' && c != '{' && c != '}') out += c;
  }
  return out;
}

struct Cell {
  std::string seminorm;
  std::string gamma;
};

// Rows as they appear in the published tables.
const std::map<Family, std::vector<Cell>> kPublished = {
    {Family::brownian,
     {{"Supremum", "2"},
      {"$L_p$", "2"},
      {"${\\eta}$-H\\\"older", "$2/(1- 2{\\eta})$"},
      {"$p$-variation", "$2p/(p- 2)$"},
      {"$({\\eta}, p)$-Sobolev", "$2/(1- 2{\\eta})$"},
      {"$({\\eta}, \\infty, q)$-Besov", "$2/(1- 2{\\eta})$"}}},
    {Family::gaussian_fractional,
     {{"Supremum", "$1/H$"},
      {"$L_p$", "$1/H$"},
      {"${\\eta}$-H\\\"older", "$1/(H-{\\eta})$"},
      {"$p$-variation", "$p/(Hp- 1)$"},
      {"$({\\eta}, \\infty, q)$-Besov", "$1/(H-{\\eta})$"},
      {"$({\\eta}, p)$-Sobolev", "$1/(H-{\\eta})$"}}},
    {Family::stable_levy,
     {{"Supremum", "$\\alpha$"}, {"$L_p$", "$\\alpha$"}, {"$p$-variation", "$\\alpha p/(p- \\alpha)$"}}},
};

// (beta, 1/p) of each row, written out by hand.
std::pair<Rational, Rational> class_of(seminorm::Kind kind, Rational eta, Rational inv_p) {
  using seminorm::Kind;
  switch (kind) {
    case Kind::sup: return {Rational(0), Rational(0)};
    case Kind::lp: return {-inv_p, inv_p};
    case Kind::holder: return {eta, Rational(0)};
    case Kind::pvar: return {Rational(0), inv_p};
    case Kind::sobolev: return {eta - inv_p, inv_p};
    case Kind::besov: return {eta, Rational(0)};
    default: break;
  }
  FAIL("unexpected kind");
  return {};
}

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("rate gamma") {
  using seminorm::classify;
  CHECK(*rates::rate_gamma(0.5, classify(SemiNormSpec::sup())).gamma == doctest::Approx(2.0));
  CHECK(*rates::rate_gamma(0.5, classify(SemiNormSpec::pvar(4.0))).gamma == doctest::Approx(2.0 * 4.0 / 2.0));
  CHECK(*rates::rate_gamma(0.5, classify(SemiNormSpec::pvar(3.0))).gamma == doctest::Approx(6.0));
  const auto pv2 = rates::rate_gamma(0.5, classify(SemiNormSpec::pvar(2.0)));
  CHECK_FALSE(pv2.applicable());
  CHECK_FALSE(pv2.violated.empty());
  const double a = 1.5;
  CHECK(*rates::rate_gamma(1.0 / a, classify(SemiNormSpec::pvar(3.0))).gamma ==
        doctest::Approx(a * 3.0 / (3.0 - a)));
  CHECK(*rates::rate_gamma(0.75, classify(SemiNormSpec::lp(2.0))).gamma == doctest::Approx(1.0 / 0.75));
}

TEST_CASE("finiteness of the constant") {
  using seminorm::classify;
  CHECK(rates::finiteness_condition(0.5, 2.0, classify(SemiNormSpec::sup())) ==
        Finiteness::constant_exists_finite);
  CHECK(rates::finiteness_condition(0.5, 1.5, classify(SemiNormSpec::sup())) ==
        Finiteness::constant_exists_maybe_infinite);
  CHECK(rates::finiteness_condition(0.5, 1.5, classify(SemiNormSpec::holder(0.6))) ==
        Finiteness::out_of_theorem);
  CHECK(rates::finiteness_condition(0.9, 1.5, classify(SemiNormSpec::sup())) ==
        Finiteness::constant_exists_finite);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-7, 3).to_string() == "-7/3");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS(Rational(INT64_MAX) * Rational(3));
}

TEST_CASE("formula evaluator") {
  const std::map<std::string, Rational> v{{"p", Rational(3)}, {"alpha", Rational(3, 2)}, {"H", Rational(3, 4)},
                                          {"eta", Rational(1, 4)}};
  CHECK(rates::evaluate_formula("2p/(p-2)", v) == Rational(6));
  CHECK(rates::evaluate_formula("alpha*p/(p-alpha)", v) == Rational(3));
  CHECK(rates::evaluate_formula("p/(Hp-1)", v) == Rational(12, 5));
  CHECK(rates::evaluate_formula("1/(H-eta)", v) == Rational(2));
  CHECK(rates::evaluate_formula("-(1+2)*3", v) == Rational(-9));
  CHECK_THROWS_AS(rates::evaluate_formula("2p/(p-", v), Error);
  CHECK_THROWS_AS(rates::evaluate_formula("q+1", v), Error);
}

TEST_CASE("tables match the published tables") {
  for (const auto& [family, cells] : kPublished) {
    CAPTURE(rates::to_string(family));
    const auto rows = rates::rate_table(family);
    REQUIRE(rows.size() == cells.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].seminorm == normalise(cells[i].seminorm));
      std::string ascii = rows[i].gamma;
      std::erase(ascii, '*');
      CHECK(ascii == normalise(cells[i].gamma));
    }
  }
  // stable fractional: "exactly the same tables" as the Gaussian fractional family
  const auto gf = rates::rate_table(Family::gaussian_fractional);
  const auto sf = rates::rate_table(Family::stable_fractional);
  for (std::size_t i = 0; i < gf.size(); ++i) {
    CHECK(sf[i].seminorm == gf[i].seminorm);
    CHECK(sf[i].gamma == gf[i].gamma);
  }
  REQUIRE(sf.size() == gf.size() + 1);
  CHECK(sf.back().gamma == "1/H");
  CHECK(sf.back().kind == seminorm::Kind::lp);
}

TEST_CASE("table formulas equal 1/(H - beta - 1/p) in exact arithmetic") {
  struct Point {
    Rational hurst, alpha, eta, inv_p;
  };
  const std::map<Family, std::vector<Point>> points = {
      {Family::brownian,
       {{Rational(1, 2), Rational(2), Rational(1, 4), Rational(1, 3)},
        {Rational(1, 2), Rational(2), Rational(1, 10), Rational(1, 7)}}},
      {Family::gaussian_fractional,
       {{Rational(3, 4), Rational(2), Rational(1, 4), Rational(1, 5)},
        {Rational(9, 10), Rational(2), Rational(1, 3), Rational(1, 2)}}},
      {Family::stable_levy,
       {{Rational(2, 3), Rational(3, 2), Rational(1, 4), Rational(1, 3)},
        {Rational(5, 6), Rational(6, 5), Rational(1, 4), Rational(1, 2)}}},
      {Family::stable_fractional,
       {{Rational(9, 10), Rational(3, 2), Rational(1, 10), Rational(1, 7)},
        {Rational(19, 20), Rational(5, 3), Rational(1, 20), Rational(1, 4)}}},
  };
  std::size_t compared = 0;
  for (const auto& [family, pts] : points) {
    for (const auto& row : rates::rate_table(family)) {
      if (row.seminorm == "L_p (discontinuous)") continue;
      for (const auto& pt : pts) {
        const auto [beta, inv_p] = class_of(row.kind, pt.eta, pt.inv_p);
        const auto exact = rates::rate_gamma_exact(pt.hurst, beta, inv_p);
        REQUIRE(exact.has_value());
        const std::map<std::string, Rational> vars{
            {"H", pt.hurst}, {"alpha", pt.alpha}, {"eta", pt.eta}, {"p", Rational(1) / pt.inv_p}};
        CAPTURE(row.seminorm);
        CHECK(rates::evaluate_formula(row.gamma, vars) == *exact);
        ++compared;
      }
    }
  }
  CHECK(compared == 2 * (6 + 6 + 3 + 6));
  // the discontinuous L_p line: 1/H at 1/alpha - 1/p < H < 1/alpha
  CHECK(*rates::rate_gamma_exact(Rational(1, 2), Rational(-1, 2), Rational(1, 2)) == Rational(2));
  CHECK_FALSE(rates::rate_gamma_exact(Rational(1, 2), Rational(0), Rational(1, 2)).has_value());
}

TEST_CASE("CSV form") {
  const auto csv = rates::rate_table_csv(Family::brownian);
  CHECK(csv.rfind("seminorm,gamma,condition\n", 0) == 0);
  CHECK(csv.find("p-variation,2p/(p-2),p>2\n") != std::string::npos);
  CHECK(csv.find("\"(eta,p)-Sobolev\",2/(1-2eta),eta<1/2\n") != std::string::npos);
  CHECK(rates::family_from_string("stable_levy") == Family::stable_levy);
  CHECK_THROWS_AS(rates::family_from_string("martian"), Error);
}

}
