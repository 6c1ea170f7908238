#include <cmath>
#include <limits>

#include "doctest.h"
#include "etnes/control.hpp"
#include "etnes/errors.hpp"
#include "etnes/trigger.hpp"
#include "fixtures.hpp"

using namespace etnes;
using fixtures::vec;

TEST_CASE("trigger configuration") {
  CHECK_NOTHROW(TriggerConfig::create(0.75, 0.8));
  CHECK_THROWS_WITH_AS(TriggerConfig::create(1.2, 0.8), "trigger.sigma: sigma must lie in (0,1)", ValidationError);
  CHECK_THROWS_AS(TriggerConfig::create(0.0, 0.8), ValidationError);
  CHECK_THROWS_AS(TriggerConfig::create(0.5, 0.0), ValidationError);
}

TEST_CASE("trigger margin") {
  const TriggerConfig cfg = TriggerConfig::create(0.75, 0.8);
  const TriggerState held{vec({3, 4}), 0.0};
  CHECK(trigger_margin(vec({3, 4}), held, cfg) == doctest::Approx(0.75 * 5));
  CHECK(trigger_margin(vec({0, 0}), held, cfg) == doctest::Approx(-0.8 * 5));
  // |z| = 1, |e| = 0.9
  const TriggerState h2{vec({1.0, 0.9}), 0.0};
  CHECK(trigger_margin(vec({1.0, 0.0}), h2, cfg) == doctest::Approx(0.03));
}

TEST_CASE("fire resets the error and enforces monotone times") {
  const TriggerConfig cfg = TriggerConfig::create(0.75, 0.8);
  EventLog log;
  TriggerState s = fire(TriggerState{vec({0, 0}), 0.0}, vec({1, 2}), 0.0, log);
  CHECK(s.error(vec({1, 2})).norm() == 0.0);
  CHECK(trigger_margin(vec({1, 2}), s, cfg) >= 0.0);
  s = fire(s, vec({2, 2}), 0.5, log);
  CHECK_THROWS(fire(s, vec({2, 2}), 0.5, log));
  CHECK_THROWS(log.append(0.4));
  CHECK(log.count() == 2);
  CHECK(log.min_interval() == doctest::Approx(0.5));
  CHECK(log.mean_interval() == doctest::Approx(0.5));
}

TEST_CASE("event log statistics") {
  EventLog log;
  CHECK(std::isinf(log.min_interval()));
  CHECK(std::isnan(log.mean_interval()));
  for (double t : {0.0, 1.0, 1.5, 4.0}) log.append(t);
  CHECK(log.min_interval() == doctest::Approx(0.5));
  CHECK(log.mean_interval() == doctest::Approx(4.0 / 3));
  CHECK(log.intervals().size() == 3);
}

TEST_CASE("Zeno lower bound") {
  const TriggerConfig cfg = TriggerConfig::create(0.75, 0.8);
  const double tau = zeno_lower_bound(1.0, cfg);
  CHECK(tau == doctest::Approx(0.5505).epsilon(1e-4));
  CHECK(zeno_lower_bound(2.0, cfg) == doctest::Approx(tau / 2));
  CHECK(zeno_lower_bound(1.0, TriggerConfig::create(0.5, 0.5)) == doctest::Approx(0.5));
  CHECK(zeno_lower_bound(1.0, cfg, 100.0, 5.0) < tau);
  CHECK_THROWS(zeno_lower_bound(0.0, cfg));
}

TEST_CASE("tuning laws") {
  const ControllerGains grad = ControllerGains::create(-Vector::Ones(2), Scheme::GradientEventTriggered);
  const Vector u = control_gradient_continuous(grad, vec({80, 35}));
  CHECK(u[0] == -80.0);
  CHECK(u[1] == -35.0);
  const ControllerGains g2 = ControllerGains::create(vec({-1, -2}), Scheme::GradientContinuous);
  CHECK(control_gradient_continuous(g2, vec({1, 1}))[1] == -2.0);
  CHECK(control_gradient_continuous(g2, Vector::Zero(2)).norm() == 0.0);

  const ControllerGains newton = ControllerGains::create(Vector::Ones(2), Scheme::NewtonEventTriggered);
  const Vector un = control_newton(newton, vec({0.5, 1}));
  CHECK(un[0] == -0.5);
  CHECK(un[1] == -1.0);
  CHECK(control_law(newton, vec({0.5, 1})) == un);
  CHECK(control_law(grad, vec({0.5, 1})) == control_gradient_continuous(grad, vec({0.5, 1})));

  // K = I, Gamma = H*^{-1}, G = H* theta_tilde gives the Newton step -theta_tilde.
  const Matrix h = fixtures::bench_hessian();
  const Vector tt = vec({0.3, -0.2});
  CHECK((control_newton(newton, h.inverse() * (h * tt)) + tt).norm() < 1e-14);
}

TEST_CASE("gain validation") {
  CHECK_THROWS_AS(ControllerGains::create(vec({1, 0}), Scheme::GradientEventTriggered), ValidationError);
  CHECK_THROWS_AS(ControllerGains::create(vec({1, -1}), Scheme::NewtonContinuous), ValidationError);
  CHECK_THROWS_AS(parse_scheme("newton"), ValidationError);
  for (Scheme s : {Scheme::GradientContinuous, Scheme::GradientEventTriggered, Scheme::NewtonContinuous,
                   Scheme::NewtonEventTriggered}) {
    CHECK(parse_scheme(to_string(s)) == s);
  }
}

TEST_CASE("zero-order hold") {
  const ControlSample s{vec({1, 2}), 3.0};
  CHECK(held_control(s, 3.0) == s.u);
  CHECK(held_control(s, 3.3) == s.u);
  CHECK_THROWS(held_control(s, 2.9));
}
