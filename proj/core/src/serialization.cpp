#include "fracdev/serialization.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fracdev/error.hpp"

namespace fracdev::json {

namespace {

template <typename T>
Json optional_number(const std::optional<T>& v) {
  return v ? number(static_cast<double>(*v)) : Json(nullptr);
}

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

const Json& field(const Json& j, const char* name) {
  require(j.is_object() && j.contains(name), errc::invalid_argument,
          std::string("JSON object is missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double read_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  throw Error(errc::invalid_argument, "expected a number, got " + j.dump());
}

Json to_json(const process::ProcessParams& params) {
  return {{"kind", std::string(process::to_string(params.kind()))},
          {"alpha", params.alpha().value()},
          {"H", params.hurst()},
          {"H_prime", params.hurst_prime()},
          {"normalize_gaussian", params.normalize_gaussian()}};
}

process::ProcessParams params_from_json(const Json& j) {
  const auto kind = process::kind_from_string(field(j, "kind").get<std::string>());
  const bool normalize = j.contains("normalize_gaussian") && j.at("normalize_gaussian").get<bool>();
  return process::ProcessParams(kind, read_number(field(j, "alpha")), read_number(field(j, "H")), normalize);
}

Json to_json(const process::Grid& grid) {
  return {{"level", grid.level()}, {"horizon", grid.horizon()}, {"points", grid.points()}, {"step", grid.step()}};
}

Json to_json(const process::Truncation& t) {
  return {{"cutoff", t.cutoff}, {"tail_scale", t.tail_scale}, {"cells", t.cells}};
}

Json to_json(const seminorm::SemiNormSpec& spec) {
  using seminorm::Kind;
  Json out{{"kind", std::string(seminorm::to_string(spec.kind))}};
  switch (spec.kind) {
    case Kind::sup:
    case Kind::calderon_zygmund: break;
    case Kind::lp:
    case Kind::pvar: out["p"] = number(spec.p); break;
    case Kind::holder:
    case Kind::lipschitz: out["eta"] = number(spec.eta); break;
    case Kind::sobolev:
      out["eta"] = number(spec.eta);
      out["p"] = number(spec.p);
      break;
    case Kind::besov:
      out["eta"] = number(spec.eta);
      out["p"] = number(spec.p);
      out["q"] = number(spec.q);
      break;
  }
  return out;
}

seminorm::SemiNormSpec spec_from_json(const Json& j) {
  seminorm::SemiNormSpec spec;
  spec.kind = seminorm::kind_from_string(field(j, "kind").get<std::string>());
  if (j.contains("eta")) spec.eta = read_number(j.at("eta"));
  if (j.contains("p")) spec.p = read_number(j.at("p"));
  if (j.contains("q")) spec.q = read_number(j.at("q"));
  seminorm::validate(spec);
  return spec;
}

Json to_json(const seminorm::SemiNormClass& cls) {
  return {{"beta", number(cls.beta)},
          {"p", number(cls.p_index)},
          {"C_p", cls.c_p ? number(*cls.c_p) : Json("none")},
          {"membership", std::string(seminorm::to_string(cls.membership))},
          {"u_class", {{"beta", number(cls.u_beta)}, {"p", number(cls.u_p)}}},
          {"wide_sense_constant", optional_number(cls.wide_sense_constant)}};
}

Json to_json(const seminorm::AxiomReport& report) {
  Json axioms = Json::array();
  for (const auto& a : report.axioms) {
    Json row{{"axiom", a.axiom}, {"skipped", a.skipped}};
    if (!a.skipped) {
      row["passed"] = a.passed;
      row["failed"] = a.failed;
      row["worst_ratio"] = number(a.worst_ratio);
    }
    if (!a.note.empty()) row["note"] = a.note;
    axioms.push_back(row);
  }
  return {{"spec", to_json(report.spec)},
          {"class", to_json(report.cls)},
          {"tolerance", report.tolerance},
          {"corpus_size", report.corpus_size},
          {"level", report.level},
          {"all_pass", report.all_pass()},
          {"axioms", axioms}};
}

Json to_json(const rng::TailEstimate& t) {
  return {{"r", t.r},         {"n", t.n},           {"exceedances", t.exceedances}, {"value", t.value},
          {"stderr", t.stderr_}, {"ci_low", t.ci_low}, {"ci_high", t.ci_high}};
}

Json to_json(const stats::KsResult& ks) { return {{"statistic", ks.statistic}, {"p_value", ks.p_value}}; }

Json to_json(const rates::RateGamma& g) {
  if (g.applicable()) return {{"applicable", true}, {"gamma", *g.gamma}};
  return {{"applicable", false}, {"violated", g.violated}};
}

Json to_json(const rates::RateRow& row) {
  return {{"seminorm", row.seminorm},
          {"kind", std::string(seminorm::to_string(row.kind))},
          {"gamma", row.gamma},
          {"condition", row.condition}};
}

Json to_json(const schauder::SchauderCoeffs& c) {
  Json levels = Json::array();
  for (const auto& row : c.r) levels.push_back(numbers(row));
  return {{"levels", c.levels}, {"horizon", c.horizon}, {"left", c.left}, {"right", c.right}, {"r", levels}};
}

Json to_json(const schauder::CoefficientScale& s) {
  return {{"sigma", s.sigma},
          {"error", s.error},
          {"kind", s.kind == schauder::ScaleKind::rlp ? "RLP" : "LMP"}};
}

Json to_json(const schauder::ScalingReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back({{"j", l.j}, {"count", l.count}, {"median_abs", l.median_abs}});
  Json out{{"params", to_json(r.params)},
           {"n_paths", r.n_paths},
           {"levels", levels},
           {"slope", r.slope},
           {"slope_stderr", r.slope_stderr},
           {"ci", {r.ci_low, r.ci_high}},
           {"out_of_scope", r.out_of_scope}};
  out["ks"] = r.ks ? to_json(*r.ks) : Json(nullptr);
  return out;
}

Json to_json(const smalldev::SmallBallEstimate& e) {
  return {{"epsilon", e.epsilon},
          {"p_hat", e.p_hat},
          {"n", e.n_samples},
          {"hits", e.hits},
          {"stderr", e.stderr_},
          {"log_p", number(e.log_p)},
          {"log_p_stderr", number(e.log_p_stderr)},
          {"censored", e.censored},
          {"upper_ci", e.upper_ci}};
}

smalldev::SmallBallEstimate estimate_from_json(const Json& j) {
  smalldev::SmallBallEstimate e;
  e.epsilon = read_number(field(j, "epsilon"));
  e.p_hat = read_number(field(j, "p_hat"));
  if (j.contains("n")) e.n_samples = j.at("n").get<std::size_t>();
  if (j.contains("hits")) e.hits = j.at("hits").get<std::size_t>();
  if (j.contains("stderr")) e.stderr_ = read_number(j.at("stderr"));
  e.censored = e.p_hat <= 0.0;
  e.log_p = e.p_hat > 0.0 ? std::log(e.p_hat) : std::numeric_limits<double>::quiet_NaN();
  if (j.contains("log_p_stderr")) {
    e.log_p_stderr = read_number(j.at("log_p_stderr"));
  } else if (e.p_hat > 0.0) {
    e.log_p_stderr = e.stderr_ / e.p_hat;
  }
  if (j.contains("upper_ci")) e.upper_ci = read_number(j.at("upper_ci"));
  return e;
}

Json to_json(const smalldev::RateFit& f) {
  Json out{{"gamma_hat", f.gamma_hat},
           {"K_hat", f.K_hat},
           {"cov", {{"var_gamma", f.var_gamma}, {"var_log_K", f.var_log_K}, {"cov", f.cov}}},
           {"eps_range", {f.eps_min, f.eps_max}},
           {"points", f.points},
           {"censored", f.censored},
           {"weighted", f.weighted}};
  if (f.gamma_fixed) {
    out["gamma_fixed"] = *f.gamma_fixed;
    out["K_per_point"] = numbers(f.K_per_point);
  }
  return out;
}

Json to_json(const smalldev::LaplaceSummary& s) {
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    checks.push_back({{"a", c.a},
                      {"b", c.b},
                      {"psi_sum", number(c.lhs)},
                      {"psi_a_plus_psi_b", number(c.rhs)},
                      {"slack", number(c.slack)},
                      {"pass", c.pass}});
  }
  return {{"q", s.q},
          {"indicator_form", s.indicator_form},
          {"h", numbers(s.h)},
          {"psi", numbers(s.psi)},
          {"psi_stderr", numbers(s.psi_stderr)},
          {"checks", checks},
          {"subadditive", s.subadditive},
          {"monotone", s.monotone},
          {"C_estimate", number(s.C_estimate)},
          {"K_estimate", optional_number(s.K_estimate)},
          {"n", s.n_samples}};
}

Json to_json(const smalldev::DominanceReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) {
    points.push_back({{"r", p.r}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"slack", p.slack}, {"pass", p.pass}});
  }
  return {{"a", r.a},
          {"b", r.b},
          {"q", r.q},
          {"product_form", r.product_form},
          {"n", r.n_samples},
          {"points", points},
          {"max_violation", r.max_violation},
          {"max_abs_difference", r.max_abs_difference},
          {"band", r.band},
          {"pass", r.pass}};
}

Json to_json(const smalldev::NegligibilityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"epsilon", row.epsilon},
                    {"rlp", to_json(row.rlp)},
                    {"lmp", to_json(row.lmp)},
                    {"stat_rlp", number(row.stat_rlp)},
                    {"stat_lmp", number(row.stat_lmp)},
                    {"ratio", number(row.ratio)},
                    {"usable", row.usable}});
  }
  return {{"gamma", r.gamma},
          {"rows", rows},
          {"smallest_usable_epsilon", optional_number(r.smallest_usable_epsilon)},
          {"ratio_at_smallest", optional_number(r.ratio_at_smallest)},
          {"ratio_small", r.ratio_small},
          {"monotone_trend", r.monotone_trend},
          {"conjectural", r.conjectural}};
}

}  // namespace fracdev::json
