#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "etnes/io.hpp"
#include "fixtures.hpp"

using namespace etnes;

namespace {

const char* kBase = R"(name: t
map:
  Qstar: 100
  Hstar: [[100, 30], [30, 20]]
  thetastar: [2, 4]
dither:
  amplitudes: [0.1, 0.1]
  multipliers: ["1", "7"]
  omega: 1
controller:
  scheme: newton_et
  K: [1, 1]
trigger:
  sigma: 0.75
  alpha: 0.8
init:
  theta_hat0: [2.5, 5]
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("parsing fills defaults") {
  const Scenario sc = parse_scenario_text(kBase);
  CHECK(sc.name == "t");
  CHECK(sc.omega_r == kDefaultOmegaR);
  CHECK(sc.gamma0 == kDefaultGamma0 * Matrix::Identity(2, 2));
  CHECK(sc.t_end == kDefaultHorizon);
  CHECK(sc.stride == kDefaultStride);
  CHECK_FALSE(sc.step.has_value());
}

TEST_CASE("bundled newton scenario carries the two-input parameters") {
  const Scenario sc = parse_scenario(std::filesystem::path(ETNES_SCENARIO_DIR) / "paper_sec6_newton.yaml");
  CHECK(sc.map.q_star() == 100.0);
  CHECK(sc.map.h_star() == fixtures::bench_hessian());
  CHECK(sc.map.theta_star() == fixtures::vec({2, 4}));
  CHECK(sc.design.multipliers()[1] == Rational(7));
  CHECK(sc.trigger.sigma == 0.75);
  CHECK(sc.trigger.alpha == 0.8);
  CHECK(sc.scheme() == Scheme::NewtonEventTriggered);
  CHECK(sc.theta_hat0 == fixtures::vec({2.5, 5}));
}

TEST_CASE("validation errors are line anchored") {
  try {
    parse_scenario_text(replace(kBase, "sigma: 0.75", "sigma: 1.2"), "x.yaml");
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.line() == 14);
    CHECK(e.field() == "trigger.sigma");
    CHECK(e.rule() == "sigma must lie in (0,1)");
    CHECK(std::string(e.what()).rfind("x.yaml:14:", 0) == 0);
  }
  try {
    parse_scenario_text(replace(kBase, R"(["1", "7"])", R"(["1", "3"])"));
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field() == "dither.multipliers");
    CHECK(e.line() == 8);
    CHECK(e.rule().find("w'_i = w'_j + 2 w'_k") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scenario_text(replace(kBase, "omega: 1", "omega: fast")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(replace(kBase, "name: t", "name: t\nextra: 1")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(replace(kBase, "K: [1, 1]", "K: [-1, -1]")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text("map: [1"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("/nonexistent/file.yaml"), ScenarioError);
}

TEST_CASE("emit then parse reproduces the scenario") {
  Scenario sc = parse_scenario_text(replace(kBase, R"(["1", "7"])", R"(["1/3", "7/5"])"));
  sc.step = 0.1 / 3.0;
  sc.t_end = 12.345678901234567;
  sc.refine_events = true;
  const std::string text = emit_scenario(sc);
  const Scenario back = parse_scenario_text(text);
  CHECK(emit_scenario(back) == text);
  CHECK(back.design.multipliers() == sc.design.multipliers());
  CHECK(back.step == sc.step);
  CHECK(back.t_end == sc.t_end);
  CHECK(back.trigger.alpha == sc.trigger.alpha);
  CHECK(back.gamma0 == sc.gamma0);
  CHECK(back.refine_events);
}

TEST_CASE("trajectory csv schema") {
  const auto cols = trajectory_columns(2);
  const std::vector<std::string> expect{"t",     "theta_1", "theta_2", "y",        "theta_hat_1", "theta_hat_2",
                                        "Ghat_1", "Ghat_2", "u_1",     "u_2",      "Gamma_11",    "Gamma_12",
                                        "Gamma_21", "Gamma_22", "margin"};
  CHECK(cols == expect);
  Scenario sc = parse_scenario_text(kBase);
  sc.t_end = 0.0;
  const RunResult r = run(sc);
  std::ostringstream os;
  write_trajectory_csv(os, r.trajectory, 2);
  const std::string csv = os.str();
  CHECK(csv.rfind("t,theta_1,theta_2,y,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("plot script") {
  Scenario sc = parse_scenario_text(kBase);
  sc.t_end = 0.0;
  Report rep;
  rep.entries.push_back(analyze(sc));
  const std::string empty = emit_plot_script(rep, {"trajectory.csv"}, "events.csv");
  CHECK(empty.find("warning") != std::string::npos);
  sc.t_end = 1.0;
  Report full;
  full.entries.push_back(analyze(sc));
  full.entries.push_back(analyze(sc));
  const std::string s = emit_plot_script(full, {"a.csv", "b.csv"}, "events.csv");
  CHECK(s.find("warning") == std::string::npos);
  CHECK(s.find("plt.subplots(5, 1") != std::string::npos);
  CHECK(s.find("\"a.csv\"") != std::string::npos);
  CHECK(s.find("\"b.csv\"") != std::string::npos);
}
