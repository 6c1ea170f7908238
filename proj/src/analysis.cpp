#include "etnes/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "etnes/errors.hpp"

namespace etnes {

LyapunovCertificate solve_lyapunov(const Matrix& a, const Matrix& q) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols()) {
    throw std::invalid_argument("solve_lyapunov: A and Q must be square and of equal size");
  }
  if (!is_hurwitz(a)) throw std::invalid_argument("solve_lyapunov: A is not Hurwitz");
  if (!is_symmetric(q) || symmetric_eigenvalues(q)[0] <= 0.0) {
    throw std::invalid_argument("solve_lyapunov: Q must be symmetric positive definite");
  }
  const Eigen::Index n = a.rows();
  const Matrix eye = Matrix::Identity(n, n);
  const Matrix at = a.transpose();
  const Matrix big = Eigen::kroneckerProduct(eye, at).eval() + Eigen::kroneckerProduct(at, eye).eval();
  Eigen::FullPivLU<Matrix> lu(big);
  if (!lu.isInvertible()) throw std::runtime_error("solve_lyapunov: singular Kronecker system");
  const Vector rhs = -Eigen::Map<const Vector>(q.data(), n * n);
  const Vector vec_p = lu.solve(rhs);
  Matrix p = Eigen::Map<const Matrix>(vec_p.data(), n, n);
  p = 0.5 * (p + p.transpose()).eval();
  if (symmetric_eigenvalues(p)[0] <= 0.0) {
    throw std::runtime_error("solve_lyapunov: solution is not positive definite");
  }
  LyapunovCertificate c{a, p, q, 0.0};
  c.residual = spectral_norm(at * p + p * a + q);
  return c;
}

double alpha_lower_bound(const LyapunovCertificate& p1, const Matrix& k, const Matrix& h_star) {
  return 2.0 * spectral_norm(p1.p * k * h_star) / symmetric_eigenvalues(p1.q)[0];
}

CertificatePair certify(const Matrix& k, const Matrix& h_star, const Matrix& q) {
  return CertificatePair{solve_lyapunov(-k, q),
                         solve_lyapunov(h_star * (-k) * h_star.inverse(), q)};
}

AveragedDerivative averaged_rhs(const AveragedState& s, const Matrix& k, const Matrix& h,
                                double omega, double omega_r, bool linearized) {
  const Matrix hk = h * k;
  AveragedDerivative d;
  d.g_hat = hk * h.inverse() * s.g_hat + hk * s.e;
  d.theta_tilde = k * s.theta_tilde + k * s.e;
  d.gamma_tilde = s.gamma_tilde;
  if (!linearized) {
    d.g_hat += hk * s.gamma_tilde * s.g_hat;
    d.theta_tilde += k * s.gamma_tilde * h * s.theta_tilde;
    d.gamma_tilde += s.gamma_tilde * h * s.gamma_tilde;
  }
  d.g_hat *= -1.0 / omega;
  d.theta_tilde *= -1.0 / omega;
  d.gamma_tilde *= -omega_r / omega;
  return d;
}

Vector averaged_decision(const AveragedState& s, const Matrix& h_star, bool linearized) {
  if (linearized) return s.theta_tilde;
  return s.theta_tilde + s.gamma_tilde * h_star * s.theta_tilde;
}

namespace {

struct AveragedLoop {
  const Scenario& sc;
  Matrix k;
  Matrix h;
  Matrix h_inv;
  bool linearized;

  // Time derivative in original time for a state whose e is rebuilt from the
  // held decision signal.
  AveragedDerivative rhs(AveragedState s, const Vector& held_z) const {
    s.e = held_z - averaged_decision(s, h, linearized);
    AveragedDerivative d = averaged_rhs(s, k, h, sc.design.omega(), sc.omega_r, linearized);
    const double w = sc.design.omega();
    d.g_hat *= w;
    d.theta_tilde *= w;
    d.gamma_tilde *= w;
    return d;
  }

  AveragedState advance(const AveragedState& s, const Vector& held_z, double dt) const {
    auto add = [](const AveragedState& base, const AveragedDerivative& d, double c) {
      return AveragedState{base.g_hat + c * d.g_hat, base.theta_tilde + c * d.theta_tilde,
                           base.gamma_tilde + c * d.gamma_tilde, base.e};
    };
    const AveragedDerivative k1 = rhs(s, held_z);
    const AveragedDerivative k2 = rhs(add(s, k1, dt / 2), held_z);
    const AveragedDerivative k3 = rhs(add(s, k2, dt / 2), held_z);
    const AveragedDerivative k4 = rhs(add(s, k3, dt), held_z);
    AveragedState out = s;
    out.g_hat += (dt / 6) * (k1.g_hat + 2 * k2.g_hat + 2 * k3.g_hat + k4.g_hat);
    out.theta_tilde += (dt / 6) * (k1.theta_tilde + 2 * k2.theta_tilde + 2 * k3.theta_tilde + k4.theta_tilde);
    out.gamma_tilde += (dt / 6) * (k1.gamma_tilde + 2 * k2.gamma_tilde + 2 * k3.gamma_tilde + k4.gamma_tilde);
    out.e = held_z - averaged_decision(out, h, linearized);
    return out;
  }

  TrajectoryRecord record(double t, const AveragedState& s, const Vector& held_z) const {
    const Vector theta_hat = sc.map.theta_star() + s.theta_tilde;
    const Vector z = averaged_decision(s, h, linearized);
    const double margin = sc.trigger.sigma * z.norm() - sc.trigger.alpha * (held_z - z).norm();
    return TrajectoryRecord{t,
                            theta_hat,
                            sc.map.evaluate(theta_hat),
                            theta_hat,
                            s.g_hat,
                            Vector(-k * held_z),
                            Matrix(h_inv + s.gamma_tilde),
                            margin};
  }
};

}  // namespace

AveragedRun run_averaged(const Scenario& sc, bool linearized) {
  validate(sc);
  const Matrix& h = sc.map.h_star();
  AveragedLoop loop{sc, sc.gains.matrix(), h, sc.map.h_star_inverse(), linearized};

  AveragedState s;
  s.theta_tilde = sc.theta_hat0 - sc.map.theta_star();
  s.g_hat = h * s.theta_tilde;
  s.gamma_tilde = sc.gamma0 - loop.h_inv;
  Vector held_z = averaged_decision(s, h, linearized);
  s.e = Vector::Zero(held_z.size());

  AveragedRun out;
  out.events.append(0.0);
  out.trajectory.push_back(loop.record(0.0, s, held_z));
  out.states.push_back(s);

  const double step = sc.effective_step();
  const auto n_steps = static_cast<std::size_t>(std::ceil(sc.t_end / step - 1e-9));
  double t = 0.0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t_next = (i + 1 == n_steps) ? sc.t_end : static_cast<double>(i + 1) * step;
    s = loop.advance(s, held_z, t_next - t);
    t = t_next;
    if (!s.theta_tilde.allFinite() || !s.gamma_tilde.allFinite() || !s.g_hat.allFinite()) {
      out.status = RunStatus::Diverged;
      out.diagnostic = "non-finite averaged state at t=" + std::to_string(t);
      return out;
    }
    const Vector z = averaged_decision(s, h, linearized);
    if (sc.trigger.sigma * z.norm() - sc.trigger.alpha * s.e.norm() < 0.0) {
      out.events.append(t);
      held_z = z;
      s.e.setZero();
    }
    if ((i + 1) % static_cast<std::size_t>(sc.stride) == 0 || i + 1 == n_steps) {
      out.trajectory.push_back(loop.record(t, s, held_z));
      out.states.push_back(s);
    }
  }
  return out;
}

EnvelopeParams envelope_params(const Scenario& sc, const Matrix& q) {
  const LyapunovCertificate p1 = solve_lyapunov(-sc.gains.matrix(), q);
  const Vector lp = symmetric_eigenvalues(p1.p);
  const Vector lq = symmetric_eigenvalues(q);
  const ExtremumKind kind = sc.map.kind();
  const Matrix signed_h = (kind.op == 0 ? 1.0 : -1.0) * sc.map.h_star();
  const Vector lh = symmetric_eigenvalues(signed_h);
  EnvelopeParams p;
  p.lambda_min_p1 = lp[0];
  p.lambda_max_p1 = lp[lp.size() - 1];
  p.lambda_min_q = lq[0];
  p.sigma = sc.trigger.sigma;
  p.omega = sc.design.omega();
  p.omega_r = sc.omega_r;
  p.a = sc.design.rss_amplitude();
  p.hessian_condition = lh[lh.size() - 1] / lh[0];
  p.hessian_norm_product = spectral_norm(sc.map.h_star()) * spectral_norm(sc.map.h_star_inverse());
  p.op = kind.op;
  return p;
}

EnvelopeValues convergence_envelopes(const EnvelopeParams& p, const EnvelopeInitial& init,
                                  const ResidualConstants& c, double t) {
  const double kappa_p = p.lambda_max_p1 / p.lambda_min_p1;
  const double rate = p.decay_rate();
  EnvelopeValues v;
  v.theta = std::sqrt(kappa_p) * std::exp(-rate * t) * init.theta_error + c.theta * (p.a + 1.0 / p.omega);
  v.output = 2.0 * p.hessian_condition * kappa_p * std::exp(-2.0 * rate * t) * init.output_error +
             c.output * (p.a * p.a + 1.0 / (p.omega * p.omega));
  v.g_hat = std::sqrt(kappa_p) * p.hessian_norm_product * std::exp(-rate * t) * init.g_hat + c.g_hat / p.omega;
  v.gamma = std::exp(-p.omega_r * t) * init.gamma_error + c.gamma / p.omega;
  return v;
}

namespace {

struct Observed {
  double theta, output, g_hat, gamma;
};

Observed observe(const Scenario& sc, const TrajectoryRecord& r) {
  return Observed{(r.theta - sc.map.theta_star()).norm(), std::abs(r.y - sc.map.q_star()),
                  r.g_hat.norm(), spectral_norm(r.gamma - sc.map.h_star_inverse())};
}

void score(EnvelopeQuantity& q, double observed, double envelope, double t) {
  const double ratio = envelope > 0.0 ? observed / envelope
                                      : (observed > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  q.worst_ratio = std::max(q.worst_ratio, ratio);
  if (!(observed <= envelope * (1.0 + 1e-12)) && q.pass) {
    q.pass = false;
    q.first_violation = t;
  }
}

}  // namespace

EnvelopeCheck check_envelopes(const Scenario& sc, const Trajectory& traj, double tail_fraction) {
  if (traj.empty()) throw std::invalid_argument("check_envelopes: empty trajectory");
  const EnvelopeParams p = envelope_params(sc, Matrix::Identity(sc.map.size(), sc.map.size()));
  EnvelopeCheck out;
  const Vector theta_tilde0 = sc.theta_hat0 - sc.map.theta_star();
  const Observed first = observe(sc, traj.front());
  out.initial = EnvelopeInitial{first.theta, first.output, (sc.map.h_star() * theta_tilde0).norm(),
                                first.gamma};

  std::vector<Observed> obs;
  obs.reserve(traj.size());
  for (const auto& r : traj) obs.push_back(observe(sc, r));

  const double t_last = traj.back().t;
  const double t_tail = t_last - tail_fraction * t_last;
  ResidualConstants& c = out.constants;
  const double s_theta = p.a + 1.0 / p.omega;
  const double s_output = p.a * p.a + 1.0 / (p.omega * p.omega);
  const double s_inv = 1.0 / p.omega;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj[i].t < t_tail) continue;
    c.theta = std::max(c.theta, obs[i].theta / s_theta);
    c.output = std::max(c.output, obs[i].output / s_output);
    c.g_hat = std::max(c.g_hat, obs[i].g_hat / s_inv);
    c.gamma = std::max(c.gamma, obs[i].gamma / s_inv);
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const EnvelopeValues v = convergence_envelopes(p, out.initial, c, traj[i].t);
    score(out.theta, obs[i].theta, v.theta, traj[i].t);
    score(out.output, obs[i].output, v.output, traj[i].t);
    score(out.g_hat, obs[i].g_hat, v.g_hat, traj[i].t);
    score(out.gamma, obs[i].gamma, v.gamma, traj[i].t);
  }
  return out;
}

AveragingGap averaging_gap(const Trajectory& full, const Trajectory& averaged) {
  if (full.empty() || averaged.empty() || averaged.back().t < full.front().t ||
      full.back().t < averaged.front().t) {
    throw std::invalid_argument("averaging_gap: trajectories do not overlap");
  }
  AveragingGap g;
  std::size_t j = 0;
  bool any = false;
  for (const auto& r : averaged) {
    if (r.t < full.front().t) continue;
    while (j + 1 < full.size() && full[j + 1].t <= r.t) ++j;
    const TrajectoryRecord& f = full[j];
    g.theta_hat = std::max(g.theta_hat, (f.theta_hat - r.theta_hat).norm());
    g.g_hat = std::max(g.g_hat, (f.g_hat - r.g_hat).norm());
    g.gamma = std::max(g.gamma, spectral_norm(f.gamma - r.gamma));
    any = true;
  }
  if (!any) throw std::invalid_argument("averaging_gap: trajectories do not overlap");
  return g;
}

}  // namespace etnes
