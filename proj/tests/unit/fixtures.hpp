#pragma once

#include <initializer_list>

#include "etnes/sim.hpp"

namespace fixtures {

inline etnes::Vector vec(std::initializer_list<double> xs) {
  etnes::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline etnes::Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  etnes::Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) m.row(i++) = vec(r).transpose();
  return m;
}

inline etnes::Matrix bench_hessian() { return mat({{100, 30}, {30, 20}}); }

inline etnes::QuadraticMap bench_map() {
  return etnes::QuadraticMap::create(100.0, bench_hessian(), vec({2, 4}));
}

inline etnes::DitherDesign bench_design(double omega = 1.0) {
  return etnes::DitherDesign::create(etnes::Vector::Constant(2, 0.1), {etnes::Rational(1), etnes::Rational(7)},
                                     omega);
}

inline etnes::Scenario bench_newton(double omega = 1.0) {
  using namespace etnes;
  return make_scenario("bench_newton", bench_map(), bench_design(omega),
                       ControllerGains::create(Vector::Ones(2), Scheme::NewtonEventTriggered),
                       TriggerConfig::create(0.75, 0.8), vec({2.5, 5}));
}

inline etnes::Scenario bench_gradient() {
  using namespace etnes;
  return make_scenario("bench_gradient", bench_map(), bench_design(),
                       ControllerGains::create(-Vector::Ones(2), Scheme::GradientEventTriggered),
                       TriggerConfig::create(0.75, 0.8), vec({2.5, 5}));
}

}  // namespace fixtures
