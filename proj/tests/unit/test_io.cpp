#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fracdev/error.hpp"
#include "fracdev/path_io.hpp"
#include "fracdev/serialization.hpp"

using namespace fracdev;
using process::Kind;
using process::ProcessParams;

TEST_SUITE("io") {

TEST_CASE("shortest round-trip decimals") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 5e-324}) {
    CHECK(io::parse_double(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.1) == "0.1");
  CHECK_THROWS_AS(io::parse_double("1.5x"), Error);
}

TEST_CASE("path files are bit-exact") {
  const ProcessParams p(Kind::lfsm, 1.5, 0.9);
  const auto path = process::PathSimulator(p, process::Grid(7, 2.0)).simulate(3, 1);

  std::stringstream csv;
  io::write_csv(path, csv);
  const auto from_csv = io::read_csv(csv);
  CHECK(from_csv.values == path.values);
  CHECK(from_csv.grid == path.grid);
  CHECK_FALSE(from_csv.params.has_value());

  std::stringstream bin;
  io::write_binary(path, bin);
  const auto from_bin = io::read_binary(bin);
  CHECK(from_bin.values == path.values);
  CHECK(from_bin.grid == path.grid);
  REQUIRE(from_bin.params.has_value());
  CHECK(*from_bin.params == p);
}

TEST_CASE("malformed path files") {
  std::stringstream bad_header("time,value\n0,0\n1,1\n");
  CHECK_THROWS_AS(io::read_csv(bad_header), Error);
  std::stringstream uneven("t,value\n0,0\n0.4,1\n1,2\n");
  CHECK_THROWS_AS(io::read_csv(uneven), Error);
  std::stringstream three("t,value\n0,0\n0.5,1\n1,2\n");
  CHECK_NOTHROW(io::read_csv(three));
  std::stringstream junk("definitely not a path");
  CHECK_THROWS_AS(io::read_binary(junk), Error);
}

TEST_CASE("JSON numbers") {
  CHECK(json::number(INFINITY) == "inf");
  CHECK(json::number(-INFINITY) == "-inf");
  CHECK(json::number(std::nan("")).is_null());
  CHECK(json::read_number(json::Json("inf")) == INFINITY);
  CHECK(json::read_number(json::Json(2.5)) == 2.5);
}

TEST_CASE("parameter and spec round trips") {
  const ProcessParams p(Kind::rlp, 2.0, 0.5, true);
  CHECK(json::params_from_json(json::to_json(p)) == p);
  for (const auto& s : {seminorm::SemiNormSpec::sup(), seminorm::SemiNormSpec::pvar(3.0),
                        seminorm::SemiNormSpec::besov(0.3, seminorm::kInf, 2.0),
                        seminorm::SemiNormSpec::sobolev(0.2, 2.0)}) {
    CHECK(json::spec_from_json(json::to_json(s)) == s);
  }
  const auto j = json::to_json(seminorm::SemiNormSpec::holder(0.25));
  CHECK(j.at("kind") == "HOLDER");
  CHECK(j.at("eta") == 0.25);
  CHECK_FALSE(j.contains("p"));
}

TEST_CASE("estimate round trip") {
  smalldev::SmallBallEstimate e;
  e.epsilon = 0.5;
  e.p_hat = 0.25;
  e.n_samples = 4000;
  e.hits = 1000;
  e.stderr_ = std::sqrt(0.25 * 0.75 / 4000.0);
  e.log_p = std::log(0.25);
  e.log_p_stderr = 0.01;
  e.upper_ci = 0.26;
  const auto back = json::estimate_from_json(json::to_json(e));
  CHECK(back.epsilon == e.epsilon);
  CHECK(back.p_hat == e.p_hat);
  CHECK(back.hits == e.hits);
  CHECK(back.n_samples == e.n_samples);
  CHECK(back.stderr_ == e.stderr_);
  CHECK(back.log_p == e.log_p);

  smalldev::SmallBallEstimate censored;
  censored.epsilon = 0.01;
  censored.censored = true;
  censored.log_p = std::nan("");
  const auto j = json::to_json(censored);
  CHECK(j.at("log_p").is_null());
  CHECK(json::estimate_from_json(j).censored);
}

}
