// Randomized invariants with fixed seeds, so failures reproduce.

#include <algorithm>
#include <random>

#include "doctest.h"
#include "etnes/analysis.hpp"
#include "etnes/io.hpp"
#include "etnes/signals.hpp"
#include "etnes/trigger.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace etnes;
using fixtures::vec;

namespace {

Matrix random_spd(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = g(rng);
  return b * b.transpose() + 0.5 * Matrix::Identity(n, n);
}

// Independent brute-force check of the resonance relations, written directly
// from their definitions.
bool brute_force_ok(const std::vector<Rational>& w) {
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i) {
    if (w[i] <= Rational(0)) return false;
    for (int j = 0; j < n; ++j)
      if (i != j && w[i] == w[j]) return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!(j == i && k == i) && w[i] * Rational(2) == w[j] + w[k]) return false;
        if (w[i] == w[j] + Rational(2) * w[k]) return false;
        for (int l = 0; l < n; ++l) {
          if (w[i] == w[k] + w[l]) return false;
          if (k != l && w[i] == w[k] - w[l]) return false;
        }
      }
  return true;
}

}  // namespace

TEST_CASE("property: rational field identities") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    CHECK((a + b) - b == a);
    if (b != Rational(0)) CHECK((a * b) / b == a);
    CHECK(Rational::parse(a.to_string()) == a);
    const Rational pa(std::abs(num(rng)) + 1, den(rng)), pb(std::abs(num(rng)) + 1, den(rng));
    const Rational l = rational_lcm(pa, pb);
    CHECK((l / pa).den() == 1);
    CHECK((l / pb).den() == 1);
  }
}

TEST_CASE("property: clause checker agrees with brute force") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> num(1, 12), den(1, 4), size(1, 4);
  int passes = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Rational> w;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) w.push_back(Rational(num(rng), den(rng)));
    const bool ok = check_probing_frequencies(w).ok;
    CHECK(ok == brute_force_ok(w));
    passes += ok;
  }
  CHECK(passes > 10);
}

TEST_CASE("property: accepted designs give periodic, zero-mean cross terms") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(1, 15);
  int checked = 0;
  while (checked < 4) {
    std::vector<Rational> w{Rational(num(rng)), Rational(num(rng))};
    if (!check_probing_frequencies(w).ok) continue;
    const DitherDesign d = DitherDesign::create(vec({0.2, 0.05}), w, 1.5);
    const Matrix avg = oracle::period_mean(
        [&](double t) { return Matrix(demod(d, t) * dither(d, t).transpose()); }, d.period());
    CHECK((avg - Matrix::Identity(2, 2)).norm() < 1e-9);
    ++checked;
  }
}

TEST_CASE("property: Lyapunov certificates for random Hurwitz matrices") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    Matrix skew(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) skew(i, j) = g(rng);
    skew = (skew - skew.transpose()).eval();
    const Matrix a = -random_spd(rng, n) + skew;
    const Matrix q = random_spd(rng, n);
    const LyapunovCertificate c = solve_lyapunov(a, q);
    CHECK(c.residual <= 1e-10 * spectral_norm(q));
    CHECK(symmetric_eigenvalues(c.p)[0] > 0.0);
  }
}

TEST_CASE("property: H* K H*^{-1} has the spectrum of K") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Matrix h = random_spd(rng, n);
    Vector kd(n);
    for (Eigen::Index i = 0; i < n; ++i) kd[i] = u(rng);
    const Eigen::VectorXcd ev = (h * kd.asDiagonal() * h.inverse()).eigenvalues();
    std::vector<double> got, want(kd.data(), kd.data() + n);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(std::abs(ev[i].imag()) < 1e-8);
      got.push_back(ev[i].real());
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (Eigen::Index i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));
  }
}

TEST_CASE("property: fire always restores a non-negative margin") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> s(0.01, 0.99), a(0.01, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const TriggerConfig cfg = TriggerConfig::create(s(rng), a(rng));
    EventLog log;
    TriggerState st{vec({g(rng), g(rng)}), 0.0};
    const Vector z = vec({g(rng), g(rng)});
    st = fire(st, z, 1.0, log);
    CHECK(trigger_margin(z, st, cfg) >= 0.0);
    CHECK(st.error(z).norm() == 0.0);
  }
}

TEST_CASE("property: averaged Hessian estimate for random frozen estimates") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  const QuadraticMap map = fixtures::bench_map();
  const DitherDesign d = fixtures::bench_design();
  for (int trial = 0; trial < 2; ++trial) {
    const Vector th = map.theta_star() + vec({u(rng), u(rng)});
    const Matrix avg = oracle::period_mean(
        [&](double t) { return Matrix(hessian_probe(d, t) * map.evaluate(th + dither(d, t))); }, d.period());
    CHECK((avg - map.h_star()).norm() <= 1e-6 * 110.0);
  }
}

TEST_CASE("property: scenario text round trip") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    Scenario sc = fixtures::bench_newton();
    sc.trigger = TriggerConfig::create(u(rng) / 3.1, u(rng));
    sc.omega_r = u(rng);
    sc.theta_hat0 = vec({u(rng), -u(rng)});
    sc.gamma0 = u(rng) * Matrix::Identity(2, 2);
    sc.step = u(rng) * 1e-3;
    const Scenario back = parse_scenario_text(emit_scenario(sc));
    CHECK(back.trigger.sigma == sc.trigger.sigma);
    CHECK(back.trigger.alpha == sc.trigger.alpha);
    CHECK(back.omega_r == sc.omega_r);
    CHECK(back.theta_hat0 == sc.theta_hat0);
    CHECK(back.gamma0 == sc.gamma0);
    CHECK(back.step == sc.step);
  }
}
