#include "doctest.h"
#include "spreadfft/config.hpp"
#include "spreadfft/errors.hpp"

#include <fstream>
#include <sstream>

using namespace spreadfft;

namespace {

const char* kBenchmark = R"(# benchmark
[model]
variant = proportional
sigma = 1.0, 0.5
kappa = 1.0
v_bar = 0.04
vol_of_vol = 0.05
v0 = 0.04
rho_ss = 0.5
rho_sv = -0.5, 0.25
lambda = 1.0
k_bar = 0.05, 0.05
delta = 0.05, 0.05

[market]
s0 = 100, 96
r = 0.1

[contract]
K = 2
T = 1
)";

KeyValues parse(const std::string& text) {
  std::istringstream in(text);
  return parse_key_values(in);
}

std::string error_of(const std::string& text) {
  try {
    std::istringstream in(text);
    parse_config(in);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("shipped benchmark config") {
  const RunConfig cfg = parse_config(std::string(SPREADFFT_SOURCE_DIR) + "/configs/benchmark.cfg");
  const auto [bm, bs] = benchmark_proportional();
  const auto& m = std::get<ProportionalVolModel>(cfg.model);
  CHECK(m.sigma == bm.sigma);
  CHECK(m.cir.kappa == bm.cir.kappa);
  CHECK(m.cir.v_bar == bm.cir.v_bar);
  CHECK(m.cir.vol_of_vol == bm.cir.vol_of_vol);
  CHECK(m.cir.v0 == bm.cir.v0);
  CHECK(m.rho_ss == bm.rho_ss);
  CHECK(m.rho_sv == bm.rho_sv);
  CHECK(m.jumps.lambda == bm.jumps.lambda);
  CHECK(m.jumps.k_bar == bm.jumps.k_bar);
  CHECK(m.jumps.jump_cov == bm.jumps.jump_cov);
  CHECK(cfg.market.s0 == bs.s0);
  CHECK(cfg.market.r == bs.r);
  CHECK(cfg.contract.strike == 2.0);
  CHECK(cfg.contract.maturity == 1.0);
  CHECK(cfg.compare_strikes == std::vector<double>{2.0, 3.0, 4.0});
}

TEST_CASE("defaults are filled") {
  std::istringstream in(kBenchmark);
  const RunConfig cfg = parse_config(in);
  CHECK(cfg.fft.n == 512);
  CHECK(cfg.fft.u_min == 40.0);
  CHECK(cfg.fft.eps == Vec2{-3.0, 1.0});
  CHECK(cfg.fft.sign == 1);
  CHECK(cfg.mc.n_paths == 1'000'000);
  CHECK(cfg.sweep.empty());
}

TEST_CASE("missing strike names the field") {
  std::string text = kBenchmark;
  text.replace(text.find("K = 2\n"), 6, "");
  const std::string msg = error_of(text);
  CHECK(msg.find("contract.K") != std::string::npos);
  std::istringstream in(text);
  CHECK_THROWS_AS(parse_config(in), ValidationError);
}

TEST_CASE("invalid damping is a validation error") {
  const std::string msg = error_of(std::string(kBenchmark) + "[fft]\neps = 0, 0\n");
  CHECK(msg.find("damping region") != std::string::npos);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse("[model]\nvariant = proportional\nthis line is broken\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("key = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("[a]\nx = 1\nx = 2\n"), ParseError);
  CHECK_THROWS_AS(parse("[a\n"), ParseError);
}

TEST_CASE("unknown keys and variants are rejected") {
  CHECK(error_of(std::string(kBenchmark) + "[fft]\nbogus = 1\n").find("fft.bogus") != std::string::npos);
  std::string text = kBenchmark;
  text.replace(text.find("proportional"), 12, "heston");
  CHECK(error_of(text).find("model.variant") != std::string::npos);
}

TEST_CASE("model violations are reported") {
  auto kv = parse(kBenchmark);
  apply_override(kv, "model.rho_ss=1.5");
  CHECK_THROWS_AS(build_run_config(kv), ValidationError);
  const RunConfig lenient = build_run_config_lenient(kv);
  CHECK_FALSE(lenient.report.ok());
}

TEST_CASE("overrides and component addressing") {
  auto kv = parse(kBenchmark);
  apply_override(kv, "model.sigma[2]=0.7");
  apply_override(kv, "contract.K = 3.5");
  apply_override(kv, "market.spread=2");
  const RunConfig cfg = build_run_config(kv);
  const auto& m = std::get<ProportionalVolModel>(cfg.model);
  CHECK(m.sigma == Vec2{1.0, 0.7});
  CHECK(cfg.contract.strike == 3.5);
  CHECK(cfg.market.s0 == Vec2{98.0, 96.0});
  CHECK_THROWS_AS(apply_override(kv, "model.nothing=1"), ValidationError);
  CHECK_THROWS_AS(apply_override(kv, "model.rho_ss[3]=1"), ValidationError);
  CHECK_THROWS_AS(apply_override(kv, "no equals sign"), ValidationError);
}

TEST_CASE("independent variant accepts scalar or per-asset variance parameters") {
  std::string text = kBenchmark;
  text.replace(text.find("proportional"), 12, "independent");
  text.replace(text.find("rho_ss = 0.5\n"), 13, "");
  text.replace(text.find("kappa = 1.0"), 11, "kappa = 1.0, 2.0");
  std::istringstream in(text);
  const RunConfig cfg = parse_config(in);
  const auto& m = std::get<IndependentVolModel>(cfg.model);
  CHECK(m.cir[0].kappa == 1.0);
  CHECK(m.cir[1].kappa == 2.0);
  CHECK(m.cir[1].v_bar == 0.04);
}

TEST_CASE("sweep axes") {
  auto kv = parse(kBenchmark);
  apply_override(kv, "sweep.axis1=model.lambda");
  apply_override(kv, "sweep.values1=0.1:9.48:10");
  apply_override(kv, "sweep.axis2=model.sigma[1]");
  apply_override(kv, "sweep.values2=0.5, 1.0");
  const RunConfig cfg = build_run_config(kv);
  REQUIRE(cfg.sweep.size() == 2);
  CHECK(cfg.sweep[0].values.size() == 10);
  CHECK(cfg.sweep[0].values.front() == 0.1);
  CHECK(cfg.sweep[0].values.back() == doctest::Approx(9.48));
  CHECK(cfg.sweep[0].values[1] == doctest::Approx(1.14).epsilon(0.005));  // table labels are rounded
  CHECK(cfg.sweep[1].values == std::vector<double>{0.5, 1.0});

  apply_override(kv, "sweep.axis2=model.variant");
  CHECK_THROWS_AS(build_run_config(kv), ValidationError);
}

TEST_CASE("value lists") {
  CHECK(parse_value_list("1, 2,3") == std::vector<double>{1, 2, 3});
  CHECK(parse_value_list("0:1:3") == std::vector<double>{0, 0.5, 1});
  CHECK(parse_value_list("4:4:1") == std::vector<double>{4});
  CHECK_THROWS(parse_value_list("0:1"));
  CHECK_THROWS(parse_value_list("a,b"));
}
