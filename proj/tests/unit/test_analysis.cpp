#include <cmath>

#include "doctest.h"
#include "etnes/analysis.hpp"
#include "fixtures.hpp"

using namespace etnes;
using fixtures::mat;
using fixtures::vec;

TEST_CASE("Lyapunov closed forms") {
  const LyapunovCertificate c1 = solve_lyapunov(-Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  CHECK((c1.p - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);
  const LyapunovCertificate c2 = solve_lyapunov(mat({{-1, 0}, {0, -2}}), Matrix::Identity(2, 2));
  CHECK((c2.p - mat({{0.5, 0}, {0, 0.25}})).norm() < 1e-14);
  CHECK_THROWS(solve_lyapunov(mat({{1, 0}, {0, -1}}), Matrix::Identity(2, 2)));
  CHECK_THROWS(solve_lyapunov(-Matrix::Identity(2, 2), mat({{1, 2}, {2, 1}})));
}

TEST_CASE("Lyapunov residual on a non-normal matrix") {
  const Matrix a = mat({{-1, 4, 0}, {0, -2, 1}, {0.5, 0, -3}});
  const Matrix q = mat({{2, 0.5, 0}, {0.5, 1, 0}, {0, 0, 3}});
  const LyapunovCertificate c = solve_lyapunov(a, q);
  CHECK(c.residual <= 1e-10 * spectral_norm(q));
  CHECK((c.p - c.p.transpose()).norm() == 0.0);
  CHECK(symmetric_eigenvalues(c.p)[0] > 0.0);
}

TEST_CASE("alpha lower bound") {
  const Matrix h = fixtures::bench_hessian();
  const LyapunovCertificate p1 = solve_lyapunov(-Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  CHECK(alpha_lower_bound(p1, Matrix::Identity(2, 2), h) == doctest::Approx(110.0).epsilon(1e-12));
  CHECK(alpha_lower_bound(p1, 1e-300 * Matrix::Identity(2, 2), h) == doctest::Approx(0.0));
  LyapunovCertificate scaled = p1;
  scaled.p *= 3.0;
  scaled.q *= 3.0;
  CHECK(alpha_lower_bound(scaled, Matrix::Identity(2, 2), h) == doctest::Approx(110.0).epsilon(1e-12));
}

TEST_CASE("certificates for the similarity-transformed gain") {
  const Matrix h = fixtures::bench_hessian();
  const Matrix k = mat({{1, 0}, {0, 3}});
  const CertificatePair c = certify(k, h, Matrix::Identity(2, 2));
  CHECK(c.p1.residual <= 1e-10);
  CHECK(c.p2.residual <= 1e-10);
  const Eigen::VectorXcd ev = (h * k * h.inverse()).eigenvalues();
  std::vector<double> re{ev[0].real(), ev[1].real()};
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(re[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("averaged right-hand side") {
  const Matrix h = fixtures::bench_hessian();
  const Matrix k = Matrix::Identity(2, 2);
  AveragedState zero{Vector::Zero(2), Vector::Zero(2), Matrix::Zero(2, 2), Vector::Zero(2)};
  const AveragedDerivative d0 = averaged_rhs(zero, k, h, 1.0, 1.0);
  CHECK(d0.g_hat.norm() == 0.0);
  CHECK(d0.theta_tilde.norm() == 0.0);
  CHECK(d0.gamma_tilde.norm() == 0.0);

  AveragedState s = zero;
  s.gamma_tilde = -h.inverse();
  CHECK(averaged_rhs(s, k, h, 1.0, 1.0).gamma_tilde.norm() < 1e-14);

  AveragedState lin = zero;
  lin.theta_tilde = vec({0.3, -0.7});
  lin.gamma_tilde = 0.1 * Matrix::Identity(2, 2);
  const AveragedDerivative dl = averaged_rhs(lin, 2.0 * k, h, 4.0, 1.0, true);
  CHECK((dl.theta_tilde + (1.0 / 4.0) * 2.0 * lin.theta_tilde).norm() < 1e-15);
  CHECK((dl.gamma_tilde + (1.0 / 4.0) * lin.gamma_tilde).norm() < 1e-15);
}

TEST_CASE("averaged loop at the optimum stays put") {
  Scenario sc = fixtures::bench_newton();
  sc.theta_hat0 = sc.map.theta_star();
  sc.gamma0 = sc.map.h_star_inverse();
  sc.t_end = 5.0;
  const AveragedRun r = run_averaged(sc);
  CHECK(r.events.count() == 1);
  for (const auto& s : r.states) CHECK(s.theta_tilde.norm() == 0.0);
}

TEST_CASE("linearized averaged loop: V decays between events at the certified rate") {
  Scenario sc = fixtures::bench_newton();
  sc.gamma0 = sc.map.h_star_inverse();
  sc.t_end = 10.0;
  sc.stride = 1;
  const AveragedRun r = run_averaged(sc, true);
  const LyapunovCertificate p1 = solve_lyapunov(-sc.gains.matrix(), Matrix::Identity(2, 2));
  const double rate = 1.0 / symmetric_eigenvalues(p1.p)[1] * (1.0 - sc.trigger.sigma);
  const auto& ev = r.events.times();
  REQUIRE(ev.size() >= 2);
  auto v_at = [&](double t) {
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
      if (r.trajectory[i].t == t) {
        const Vector& x = r.states[i].theta_tilde;
        return double(x.transpose() * p1.p * x);
      }
    }
    FAIL("event time not on the sample grid");
    return 0.0;
  };
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
    const double bound = v_at(ev[k]) * std::exp(-rate * (ev[k + 1] - ev[k]));
    CHECK(v_at(ev[k + 1]) <= bound * (1.0 + 1e-6));
  }
  double prev = INFINITY;
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    const Vector& x = r.states[i].theta_tilde;
    const double v = x.transpose() * p1.p * x;
    CHECK(v <= prev * (1.0 + 1e-12));
    prev = v;
  }
}

TEST_CASE("averaged Riccati error obeys the scalar comparison bound") {
  Scenario sc = fixtures::bench_newton();
  const double eps = 1e-3;
  sc.omega_r = 1.0;
  sc.gamma0 = sc.map.h_star_inverse() + eps * Matrix::Identity(2, 2);
  sc.t_end = 5.0;
  const AveragedRun r = run_averaged(sc);
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    const double t = r.trajectory[i].t;
    const double bound = eps * std::exp(-sc.omega_r * t) * (1.0 + 10.0 * eps * 110.0 * t);
    CHECK(spectral_norm(r.states[i].gamma_tilde) <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("envelope formulas") {
  EnvelopeParams p;
  p.lambda_min_p1 = p.lambda_max_p1 = 0.5;
  p.lambda_min_q = 1.0;
  p.sigma = 0.75;
  p.omega = 10.0;
  p.omega_r = 2.0;
  p.a = 0.1;
  EnvelopeInitial init{2.0, 3.0, 4.0, 0.5};
  ResidualConstants c{1.0, 1.0, 1.0, 1.0};
  const EnvelopeValues v0 = convergence_envelopes(p, init, c, 0.0);
  CHECK(v0.theta == doctest::Approx(2.0 + 0.2));
  CHECK(v0.gamma == doctest::Approx(0.5 + 0.1));
  // lambda_min(Q)/lambda_max(P1) = 2, sigma = 0.75: exponent -t/4.
  CHECK(p.decay_rate() == doctest::Approx(0.25));
  const EnvelopeValues v1 = convergence_envelopes(p, init, ResidualConstants{}, 4.0);
  CHECK(v1.theta == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK(v1.gamma == doctest::Approx(0.5 * std::exp(-8.0)));
}

TEST_CASE("averaging gap") {
  Trajectory a(3);
  for (std::size_t i = 0; i < 3; ++i) {
    a[i].t = static_cast<double>(i);
    a[i].theta_hat = vec({double(i), 0});
    a[i].g_hat = Vector::Zero(2);
    a[i].gamma = Matrix::Zero(2, 2);
  }
  CHECK(averaging_gap(a, a).theta_hat == 0.0);
  Trajectory b = a;
  b[2].theta_hat[1] = 0.5;
  b[1].t = 1.5;  // compared with the full sample at t = 1
  const AveragingGap g = averaging_gap(a, b);
  CHECK(g.theta_hat == doctest::Approx(0.5));
  Trajectory late = a;
  for (auto& r : late) r.t += 10;
  CHECK_THROWS(averaging_gap(a, late));
  CHECK_THROWS(averaging_gap(a, Trajectory{}));
}
