// fracdev command-line front end.
//
//   fracdev simulate | seminorm | decompose | smallball | ratefit | axioms | table
//
// Every command is a pure function of its flags and config file: results
// are written as JSON (sorted keys, shortest round-trip numbers), errors as
// {"error": {"code", "message"}} on stderr with a nonzero exit status.
// --threads (or FRACDEV_THREADS) only changes the wall time.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "fracdev/axioms.hpp"
#include "fracdev/error.hpp"
#include "fracdev/parallel.hpp"
#include "fracdev/path_io.hpp"
#include "fracdev/rates.hpp"
#include "fracdev/schauder.hpp"
#include "fracdev/serialization.hpp"
#include "fracdev/smalldev.hpp"
#include "fracdev/stats.hpp"
#include "svg.hpp"

namespace fracdev::cli {

using json::Json;

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string config;
  unsigned threads = 0;
  Overlay overlay;
  CLI::Option* config_opt = nullptr;

  void add(CLI::App* cmd) {
    config_opt = cmd->add_option("--config", config, "TOML config file (flags override its values)");
    cmd->add_option("--threads", threads, "Worker threads (default: FRACDEV_THREADS or all cores)");
  }
  void load() {
    if (!config.empty()) overlay.load(config);
  }
  std::optional<unsigned> thread_request() const {
    return threads > 0 ? std::optional<unsigned>(threads) : std::nullopt;
  }
};

struct ProcessOptions {
  std::string kind = "RLP";
  double alpha = 2.0;
  double hurst = 0.5;
  bool normalize = false;
  CLI::Option* o_kind = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_hurst = nullptr;
  CLI::Option* o_normalize = nullptr;

  void add(CLI::App* cmd) {
    o_kind = cmd->add_option("--process", kind, "RLP, LMP, LFSM or BALANCED")->capture_default_str();
    o_alpha = cmd->add_option("--alpha", alpha, "Stability index in (0, 2]")->capture_default_str();
    o_hurst = cmd->add_option("--hurst,-H", hurst, "Hurst index H")->capture_default_str();
    o_normalize = cmd->add_flag("--normalize-gaussian", normalize, "Unit-variance Brownian scale at alpha = 2");
  }
  void overlay(Overlay& ov) {
    ov.apply(o_kind, "process.kind", kind);
    ov.apply(o_alpha, "process.alpha", alpha);
    ov.apply(o_hurst, "process.hurst", hurst);
    ov.apply(o_normalize, "process.normalize_gaussian", normalize);
  }
  process::ProcessParams params() const {
    return process::ProcessParams(process::kind_from_string(kind), alpha, hurst, normalize);
  }
};

struct SpecOptions {
  std::string kind = "SUP";
  double eta = kUnset;
  double p = kUnset;
  double q = seminorm::kInf;
  CLI::Option* o_kind = nullptr;
  CLI::Option* o_eta = nullptr;
  CLI::Option* o_p = nullptr;
  CLI::Option* o_q = nullptr;

  void add(CLI::App* cmd) {
    o_kind = cmd->add_option("--norm", kind, "SUP, LP, HOLDER, CZ, LIPSCHITZ, PVAR, SOBOLEV or BESOV")
                 ->capture_default_str();
    o_eta = cmd->add_option("--eta", eta, "Smoothness index (HOLDER, LIPSCHITZ, SOBOLEV, BESOV)");
    o_p = cmd->add_option("--p", p, "Integrability index (LP, PVAR, SOBOLEV, BESOV); 'inf' allowed");
    o_q = cmd->add_option("--q", q, "Besov outer index (default inf)");
  }
  void overlay(Overlay& ov) {
    ov.apply(o_kind, "seminorm.kind", kind);
    ov.apply(o_eta, "seminorm.eta", eta);
    ov.apply(o_p, "seminorm.p", p);
    ov.apply(o_q, "seminorm.q", q);
  }
  seminorm::SemiNormSpec spec() const {
    using seminorm::Kind;
    seminorm::SemiNormSpec s;
    s.kind = seminorm::kind_from_string(kind);
    const bool needs_eta = s.kind == Kind::holder || s.kind == Kind::lipschitz || s.kind == Kind::sobolev ||
                           s.kind == Kind::besov;
    const bool needs_p = s.kind == Kind::lp || s.kind == Kind::pvar || s.kind == Kind::sobolev ||
                         s.kind == Kind::besov;
    require(!needs_eta || !std::isnan(eta), errc::invalid_argument,
            std::string(seminorm::to_string(s.kind)) + " needs --eta");
    require(!needs_p || !std::isnan(p), errc::invalid_argument,
            std::string(seminorm::to_string(s.kind)) + " needs --p");
    if (needs_eta) s.eta = eta;
    if (needs_p) s.p = p;
    if (s.kind == Kind::besov) s.q = q;
    seminorm::validate(s);
    return s;
  }
};

void write_text(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  require(static_cast<bool>(out), errc::io, "cannot open '" + file + "' for writing");
  out << text;
  require(static_cast<bool>(out), errc::io, "failed writing '" + file + "'");
}

void emit(const Json& doc, const std::string& file) {
  const std::string text = doc.dump(2) + "\n";
  if (file.empty() || file == "-") {
    std::cout << text;
  } else {
    write_text(file, text);
  }
}

Json read_json(const std::string& file) {
  std::ifstream in(file);
  require(static_cast<bool>(in), errc::io, "cannot open '" + file + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::io, "cannot parse JSON '" + file + "': " + e.what());
  }
}

Json theory(const process::ProcessParams& params, const seminorm::SemiNormSpec& spec) {
  const auto cls = seminorm::classify(spec);
  const auto fin = rates::finiteness_condition(params.hurst(), params.alpha().value(), cls);
  return {{"class", json::to_json(cls)},
          {"rate", json::to_json(rates::rate_gamma(params.hurst(), cls))},
          {"finiteness", std::string(rates::to_string(fin))},
          {"conjectural", fin != rates::Finiteness::constant_exists_finite}};
}

// ------------------------------------------------------------------ simulate

struct SimulateCmd {
  Common common;
  ProcessOptions proc;
  unsigned level = 10;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t index = 0;
  double tail_tolerance = 1e-4;
  std::string out;
  std::string json_out;
  CLI::Option *o_level, *o_horizon, *o_seed, *o_index, *o_tail, *o_out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("simulate", "Simulate one path and write it as CSV (.csv) or binary");
    common.add(cmd);
    proc.add(cmd);
    o_level = cmd->add_option("--level,-J", level, "Grid level J (N = 2^J cells)")->capture_default_str();
    o_horizon = cmd->add_option("--horizon,-T", horizon, "Time horizon T")->capture_default_str();
    o_seed = cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    o_index = cmd->add_option("--index", index, "Path index within the seed")->capture_default_str();
    o_tail = cmd->add_option("--tail-tolerance", tail_tolerance, "Alpha-scale bound of truncated noise")
                 ->capture_default_str();
    o_out = cmd->add_option("--out,-o", out, "Path file to write");
    cmd->add_option("--json", json_out, "Summary JSON file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    auto& ov = common.overlay;
    proc.overlay(ov);
    ov.apply(o_level, "grid.level", level);
    ov.apply(o_horizon, "grid.horizon", horizon);
    ov.apply(o_seed, "run.seed", seed);
    ov.apply(o_index, "run.index", index);
    ov.apply(o_tail, "mesh.tail_tolerance", tail_tolerance);
    ov.apply(o_out, "output.path", out);
    ov.check_consumed();
    require(!out.empty(), errc::invalid_argument, "simulate needs --out");

    const auto params = proc.params();
    const process::Grid grid(level, horizon);
    process::MeshOptions mesh;
    mesh.tail_tolerance = tail_tolerance;
    mesh.threads = resolve_threads(common.thread_request());
    const process::PathSimulator sim(params, grid, mesh);
    const auto path = sim.simulate(seed, index);
    io::save_path(path, out);

    double max_abs = 0.0;
    for (double v : path.values) max_abs = std::max(max_abs, std::abs(v));
    Json doc{{"command", "simulate"},
             {"config",
              {{"process", json::to_json(params)},
               {"grid", json::to_json(grid)},
               {"seed", seed},
               {"index", index},
               {"tail_tolerance", tail_tolerance}}},
             {"output", out},
             {"final_value", path.values.back()},
             {"max_abs", max_abs}};
    doc["truncation"] = path.truncation ? json::to_json(*path.truncation) : Json(nullptr);
    emit(doc, json_out);
  }
};

// ------------------------------------------------------------------ seminorm

struct SeminormCmd {
  Common common;
  SpecOptions spec_opt;
  std::string path_file;
  std::vector<double> interval;
  std::string json_out;
  CLI::Option *o_path, *o_interval;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("seminorm", "Evaluate a semi-norm on a path file and classify it");
    common.add(cmd);
    spec_opt.add(cmd);
    o_path = cmd->add_option("--path", path_file, "Path file (.csv or binary)");
    o_interval = cmd->add_option("--interval", interval, "Sub-interval a b (grid times)")->expected(2);
    cmd->add_option("--json", json_out, "Output JSON file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    auto& ov = common.overlay;
    spec_opt.overlay(ov);
    ov.apply(o_path, "input.path", path_file);
    ov.apply(o_interval, "seminorm.interval", interval);
    ov.check_consumed();
    require(!path_file.empty(), errc::invalid_argument, "seminorm needs --path");
    const auto spec = spec_opt.spec();
    const auto path = io::load_path(path_file);
    seminorm::GridInterval iv{0, path.grid.cells()};
    if (!interval.empty()) {
      require(interval.size() == 2, errc::invalid_argument, "--interval needs two times");
      iv = seminorm::interval_from_times(path.grid, interval[0], interval[1]);
    }
    Json doc{{"command", "seminorm"},
             {"config", {{"path", path_file}, {"spec", json::to_json(spec)}}},
             {"grid", json::to_json(path.grid)},
             {"interval", {path.grid.time(iv.first), path.grid.time(iv.last)}},
             {"value", seminorm::evaluate(spec, path, iv)},
             {"class", json::to_json(seminorm::classify(spec))}};
    if (path.params) {
      doc["params"] = json::to_json(*path.params);
      doc["theory"] = theory(*path.params, spec);
    }
    emit(doc, json_out);
  }
};

// ------------------------------------------------------------------ decompose

struct DecomposeCmd {
  Common common;
  std::string path_file;
  std::string csv_out;
  std::string sigma_out;
  std::string json_out;
  unsigned j_min = 3;
  int j_max = -1;
  double tolerance = 1e-10;
  CLI::Option *o_path, *o_csv, *o_sigma, *o_jmin, *o_jmax, *o_tol;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("decompose", "Schauder coefficients r_jn of a path and their level decay");
    common.add(cmd);
    o_path = cmd->add_option("--path", path_file, "Path file on a dyadic grid");
    o_csv = cmd->add_option("--out,-o", csv_out, "Coefficient CSV (j,n,r_jn)");
    o_sigma = cmd->add_option("--sigma-out", sigma_out, "Scale factor CSV (j,n,sigma) for the path's process");
    o_jmin = cmd->add_option("--j-min", j_min, "First level of the decay fit")->capture_default_str();
    o_jmax = cmd->add_option("--j-max", j_max, "Last level of the decay fit (default J - 1)");
    o_tol = cmd->add_option("--tolerance", tolerance, "Relative quadrature tolerance for sigma")->capture_default_str();
    cmd->add_option("--json", json_out, "Report JSON file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    auto& ov = common.overlay;
    ov.apply(o_path, "input.path", path_file);
    ov.apply(o_csv, "output.coefficients", csv_out);
    ov.apply(o_sigma, "output.sigma", sigma_out);
    ov.apply(o_jmin, "decompose.j_min", j_min);
    ov.apply(o_jmax, "decompose.j_max", j_max);
    ov.apply(o_tol, "decompose.tolerance", tolerance);
    ov.check_consumed();
    require(!path_file.empty(), errc::invalid_argument, "decompose needs --path");

    const auto path = io::load_path(path_file);
    const auto coeffs = schauder::decompose(path);
    const unsigned top = j_max < 0 ? coeffs.levels - 1 : static_cast<unsigned>(j_max);
    require(coeffs.levels >= 1 && j_min <= top && top < coeffs.levels, errc::invalid_argument,
            "decay levels must satisfy j_min <= j_max < J");

    if (!csv_out.empty()) {
      std::ostringstream csv;
      csv << "j,n,r_jn\n";
      for (unsigned j = 0; j < coeffs.levels; ++j) {
        for (std::size_t n = 1; n <= coeffs.r[j].size(); ++n) {
          csv << j << ',' << n << ',' << io::format_double(coeffs.second_difference(j, n)) << '\n';
        }
      }
      write_text(csv_out, csv.str());
    }

    Json levels = Json::array();
    std::vector<double> xs;
    std::vector<double> ys;
    for (unsigned j = j_min; j <= top; ++j) {
      std::vector<double> abs_r;
      for (std::size_t n = 1; n <= coeffs.r[j].size(); ++n) {
        if (j < 2 || schauder::interior(j, n)) abs_r.push_back(std::abs(coeffs.second_difference(j, n)));
      }
      const double med = stats::median(abs_r);
      levels.push_back({{"j", j}, {"count", abs_r.size()}, {"median_abs", med}});
      if (med > 0.0) {
        xs.push_back(j);
        ys.push_back(std::log2(med));
      }
    }
    Json doc{{"command", "decompose"},
             {"config", {{"path", path_file}, {"j_min", j_min}, {"j_max", top}, {"tolerance", tolerance}}},
             {"levels", coeffs.levels},
             {"linear_part", {coeffs.left, coeffs.right}},
             {"decay", levels}};
    if (xs.size() >= 3) {
      const auto fit = stats::linear_fit(xs, ys);
      doc["slope"] = fit.slope;
      doc["slope_stderr"] = std::sqrt(fit.var_slope);
    } else {
      doc["slope"] = nullptr;
    }
    if (path.params) {
      doc["params"] = json::to_json(*path.params);
      doc["expected_slope"] = -path.params->hurst();
      doc["out_of_scope"] = path.params->hurst() >= 2.0;
    }

    if (!sigma_out.empty()) {
      require(path.params.has_value(), errc::invalid_argument, "--sigma-out needs a path file carrying its params");
      const auto kind = path.params->kind();
      require(kind == process::Kind::rlp || kind == process::Kind::lmp, errc::not_applicable,
              "sigma tables exist for RLP and LMP paths only");
      const auto scale = kind == process::Kind::rlp ? schauder::ScaleKind::rlp : schauder::ScaleKind::lmp;
      const auto rows = schauder::sigma_table(scale, path.params->alpha().value(), path.params->hurst(), 0, top,
                                              tolerance, resolve_threads(common.thread_request()));
      std::ostringstream csv;
      csv << "j,n,sigma\n";
      for (const auto& row : rows) csv << row.j << ',' << row.n << ',' << io::format_double(row.scale.sigma) << '\n';
      write_text(sigma_out, csv.str());
      doc["sigma_table"] = sigma_out;
    }
    emit(doc, json_out);
  }
};

// ------------------------------------------------------------------ smallball

struct SmallballCmd {
  Common common;
  ProcessOptions proc;
  SpecOptions spec_opt;
  std::vector<double> epsilons;
  std::size_t n_samples = 10000;
  std::size_t grid_points = 8;
  unsigned level = 10;
  std::uint64_t seed = 42;
  bool bridge = false;
  double tail_tolerance = 1e-4;
  double gamma_fixed = kUnset;
  std::string json_out;
  std::string csv_out;
  std::string svg_out;
  CLI::Option *o_eps, *o_n, *o_points, *o_level, *o_seed, *o_bridge, *o_tail, *o_gamma, *o_json, *o_csv, *o_svg;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("smallball", "Monte-Carlo small ball probabilities and the rate fit");
    common.add(cmd);
    proc.add(cmd);
    spec_opt.add(cmd);
    o_eps = cmd->add_option("--eps", epsilons, "Radii (default: pilot grid with >= 50 expected hits)");
    o_n = cmd->add_option("--samples,-n", n_samples, "Number of paths")->capture_default_str();
    o_points = cmd->add_option("--grid-points", grid_points, "Size of the pilot epsilon grid")->capture_default_str();
    o_level = cmd->add_option("--level,-J", level, "Grid level J")->capture_default_str();
    o_seed = cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
    o_bridge = cmd->add_flag("--bridge-correction", bridge, "Brownian-bridge correction (SUP on Brownian motion)");
    o_tail = cmd->add_option("--tail-tolerance", tail_tolerance, "LMP truncation tolerance")->capture_default_str();
    o_gamma = cmd->add_option("--gamma-fixed", gamma_fixed, "Also fit K with this rate");
    o_json = cmd->add_option("--json", json_out, "Results JSON (default stdout)");
    o_csv = cmd->add_option("--csv", csv_out, "CSV mirror of the estimates");
    o_svg = cmd->add_option("--svg", svg_out, "SVG plot of log(-log p) against log(1/eps)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    auto& ov = common.overlay;
    proc.overlay(ov);
    spec_opt.overlay(ov);
    ov.apply(o_eps, "run.epsilons", epsilons);
    ov.apply(o_n, "run.n_samples", n_samples);
    ov.apply(o_points, "run.grid_points", grid_points);
    ov.apply(o_level, "grid.level", level);
    ov.apply(o_seed, "run.seed", seed);
    ov.apply(o_bridge, "run.bridge_correction", bridge);
    ov.apply(o_tail, "mesh.tail_tolerance", tail_tolerance);
    ov.apply(o_gamma, "run.gamma_fixed", gamma_fixed);
    ov.apply(o_json, "output.json", json_out);
    ov.apply(o_csv, "output.csv", csv_out);
    ov.apply(o_svg, "output.svg", svg_out);
    ov.check_consumed();

    const auto params = proc.params();
    const auto spec = spec_opt.spec();
    const auto cls = seminorm::classify(spec);
    const auto rate = rates::rate_gamma(params.hurst(), cls);
    require(rate.applicable(), errc::not_applicable, rate.violated);
    require(n_samples >= smalldev::kMinSamples, errc::invalid_argument,
            "n_samples must be at least " + std::to_string(smalldev::kMinSamples));
    (void)process::Grid(level);  // validates the level

    smalldev::McOptions opt;
    opt.level = level;
    opt.threads = common.thread_request();
    opt.bridge_correction = bridge;
    opt.mesh.tail_tolerance = tail_tolerance;
    opt.mesh.threads = resolve_threads(common.thread_request());
    const bool pilot = epsilons.empty();
    if (pilot) epsilons = smalldev::pilot_epsilon_grid(params, spec, n_samples, grid_points, seed, opt);
    const auto est = smalldev::mc_small_ball(params, spec, epsilons, n_samples, seed, opt);

    Json eps = Json::array();
    Json p_hat = Json::array();
    Json stderr_ = Json::array();
    Json rows = Json::array();
    for (const auto& e : est) {
      eps.push_back(e.epsilon);
      p_hat.push_back(e.p_hat);
      stderr_.push_back(e.stderr_);
      rows.push_back(json::to_json(e));
    }
    Json config{{"process", json::to_json(params)},
                {"seminorm", json::to_json(spec)},
                {"n_samples", n_samples},
                {"level", level},
                {"seed", seed},
                {"bridge_correction", bridge},
                {"tail_tolerance", tail_tolerance},
                {"epsilon_source", pilot ? "pilot" : "given"},
                {"grid_points", grid_points}};
    config["gamma_fixed"] = std::isnan(gamma_fixed) ? Json(nullptr) : Json(gamma_fixed);
    Json doc{{"command", "smallball"},
             {"config", config},
             {"params", json::to_json(params)},
             {"seminorm", json::to_json(spec)},
             {"theory", theory(params, spec)},
             {"epsilons", eps},
             {"p_hat", p_hat},
             {"stderr", stderr_},
             {"estimates", rows}};

    Json diagnostics{{"censored", 0}};
    std::optional<Line> line;
    try {
      const auto fit = smalldev::fit_rate(est);
      doc["gamma_hat"] = fit.gamma_hat;
      doc["K_hat"] = fit.K_hat;
      diagnostics["fit"] = json::to_json(fit);
      diagnostics["censored"] = fit.censored;
      line = Line{fit.gamma_hat, std::log(fit.K_hat)};
      if (!std::isnan(gamma_fixed)) diagnostics["fit_fixed"] = json::to_json(smalldev::fit_rate(est, gamma_fixed));
    } catch (const Error& e) {
      doc["gamma_hat"] = nullptr;
      doc["K_hat"] = nullptr;
      diagnostics["fit_error"] = {{"code", e.code()}, {"message", e.what()}};
    }
    doc["diagnostics"] = diagnostics;

    if (!csv_out.empty()) {
      std::ostringstream csv;
      csv << "epsilon,p_hat,stderr,hits,n,log_p,log_p_stderr,censored\n";
      for (const auto& e : est) {
        csv << io::format_double(e.epsilon) << ',' << io::format_double(e.p_hat) << ','
            << io::format_double(e.stderr_) << ',' << e.hits << ',' << e.n_samples << ','
            << (e.censored ? "" : io::format_double(e.log_p)) << ','
            << (e.censored ? "" : io::format_double(e.log_p_stderr)) << ',' << (e.censored ? 1 : 0) << '\n';
      }
      write_text(csv_out, csv.str());
    }
    if (!svg_out.empty()) {
      Series s;
      for (const auto& e : est) {
        if (e.p_hat > 0.0 && e.p_hat < 1.0) {
          s.x.push_back(-std::log(e.epsilon));
          s.y.push_back(std::log(-std::log(e.p_hat)));
        }
      }
      write_text(svg_out, svg_plot(s, line, "small ball: " + seminorm::describe(spec), "log(1/eps)", "log(-log p)"));
    }
    emit(doc, json_out);
  }
};

// ------------------------------------------------------------------ ratefit

struct RatefitCmd {
  Common common;
  std::string input;
  double gamma_fixed = kUnset;
  std::string json_out;
  CLI::Option *o_input, *o_gamma;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("ratefit", "Fit gamma and K to small ball estimates from a JSON file");
    common.add(cmd);
    o_input = cmd->add_option("--input,-i", input, "JSON with an 'estimates' array (smallball output)");
    o_gamma = cmd->add_option("--gamma-fixed", gamma_fixed, "Fix the rate and fit K only");
    cmd->add_option("--json", json_out, "Output JSON file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    auto& ov = common.overlay;
    ov.apply(o_input, "input.results", input);
    ov.apply(o_gamma, "run.gamma_fixed", gamma_fixed);
    ov.check_consumed();
    require(!input.empty(), errc::invalid_argument, "ratefit needs --input");
    const Json src = read_json(input);
    require(src.contains("estimates") && src.at("estimates").is_array(), errc::invalid_argument,
            "input JSON needs an 'estimates' array");
    std::vector<smalldev::SmallBallEstimate> est;
    for (const auto& e : src.at("estimates")) est.push_back(json::estimate_from_json(e));
    const std::optional<double> fixed = std::isnan(gamma_fixed) ? std::nullopt : std::optional<double>(gamma_fixed);
    const auto fit = smalldev::fit_rate(est, fixed);
    Json config{{"input", input}};
    config["gamma_fixed"] = fixed ? Json(*fixed) : Json(nullptr);
    Json doc{{"command", "ratefit"}, {"config", config}, {"fit", json::to_json(fit)}};
    emit(doc, json_out);
  }
};

// ------------------------------------------------------------------ axioms

struct AxiomsCmd {
  Common common;
  SpecOptions spec_opt;
  std::uint64_t corpus_seed = 1;
  std::size_t corpus_size = 10000;
  unsigned level = 8;
  double tolerance = 1e-9;
  std::string json_out;
  CLI::Option *o_seed, *o_size, *o_level, *o_tol;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("axioms", "Check the semi-norm axioms on a seeded function corpus");
    common.add(cmd);
    spec_opt.add(cmd);
    o_seed = cmd->add_option("--corpus-seed", corpus_seed, "Corpus seed")->capture_default_str();
    o_size = cmd->add_option("--corpus-size", corpus_size, "Number of corpus members")->capture_default_str();
    o_level = cmd->add_option("--level,-J", level, "Grid level of the corpus")->capture_default_str();
    o_tol = cmd->add_option("--tolerance", tolerance, "Relative comparison tolerance")->capture_default_str();
    cmd->add_option("--json", json_out, "Report JSON file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    auto& ov = common.overlay;
    spec_opt.overlay(ov);
    ov.apply(o_seed, "axioms.corpus_seed", corpus_seed);
    ov.apply(o_size, "axioms.corpus_size", corpus_size);
    ov.apply(o_level, "axioms.level", level);
    ov.apply(o_tol, "axioms.tolerance", tolerance);
    ov.check_consumed();
    const auto spec = spec_opt.spec();
    const auto corpus = seminorm::make_corpus(corpus_size, corpus_seed, level);
    const auto report = seminorm::check_axioms(spec, corpus, tolerance, common.thread_request());
    Json doc{{"command", "axioms"},
             {"config",
              {{"spec", json::to_json(spec)},
               {"corpus_seed", corpus_seed},
               {"corpus_size", corpus_size},
               {"level", level},
               {"tolerance", tolerance}}},
             {"report", json::to_json(report)}};
    emit(doc, json_out);
  }
};

// ------------------------------------------------------------------ table

struct TableCmd {
  Common common;
  std::string family = "brownian";
  std::string out;
  CLI::Option* o_family;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("table", "Rate table of a process family as CSV");
    common.add(cmd);
    o_family = cmd->add_option("--family", family, "brownian, gaussian_fractional, stable_levy, stable_fractional")
                   ->capture_default_str();
    cmd->add_option("--out,-o", out, "CSV file (default stdout)");
    cmd->callback([this] { run(); });
  }

  void run() {
    common.load();
    common.overlay.apply(o_family, "table.family", family);
    common.overlay.check_consumed();
    const std::string csv = rates::rate_table_csv(rates::family_from_string(family));
    if (out.empty() || out == "-") {
      std::cout << csv;
    } else {
      write_text(out, csv);
    }
  }
};

void report_error(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", {{"code", code}, {"message", message}}}}.dump() << std::endl;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"fracdev: small deviations of stable fractional processes"};
  app.require_subcommand(1);
  SimulateCmd simulate;
  SeminormCmd seminorm_cmd;
  DecomposeCmd decompose;
  SmallballCmd smallball;
  RatefitCmd ratefit;
  AxiomsCmd axioms;
  TableCmd table;
  simulate.add(app);
  seminorm_cmd.add(app);
  decompose.add(app);
  smallball.add(app);
  ratefit.add(app);
  axioms.add(app);
  table.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  } catch (const Error& e) {
    report_error(e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 3;
  }
  return 0;
}

}  // namespace fracdev::cli

int main(int argc, char** argv) { return fracdev::cli::run(argc, argv); }
