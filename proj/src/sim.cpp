#include "etnes/sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "etnes/errors.hpp"

namespace etnes {
namespace {

constexpr double kEstimateCeiling = 1e6;
constexpr double kRefineWindow = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Derivative {
  Vector theta_hat;
  Matrix gamma;
};

Derivative loop_rhs(const Scenario& sc, double t, const Vector& theta_hat, const Matrix& gamma,
                    const Vector& u) {
  Derivative d{u, Matrix::Zero(gamma.rows(), gamma.cols())};
  if (is_newton(sc.scheme())) {
    const SignalFrame f = evaluate_signals(sc.design, t);
    const double y = sc.map.evaluate(theta_hat + f.dither);
    d.gamma = riccati_rhs(gamma, sc.omega_r, hessian_estimate(f.hessian_probe, y));
  }
  return d;
}

void rk4(const Scenario& sc, double t, double h, const Vector& u, Vector& theta_hat,
         Matrix& gamma) {
  const Derivative k1 = loop_rhs(sc, t, theta_hat, gamma, u);
  const Derivative k2 =
      loop_rhs(sc, t + h / 2, theta_hat + (h / 2) * k1.theta_hat, gamma + (h / 2) * k1.gamma, u);
  const Derivative k3 =
      loop_rhs(sc, t + h / 2, theta_hat + (h / 2) * k2.theta_hat, gamma + (h / 2) * k2.gamma, u);
  const Derivative k4 = loop_rhs(sc, t + h, theta_hat + h * k3.theta_hat, gamma + h * k3.gamma, u);
  theta_hat += (h / 6) * (k1.theta_hat + 2 * k2.theta_hat + 2 * k3.theta_hat + k4.theta_hat);
  gamma += (h / 6) * (k1.gamma + 2 * k2.gamma + 2 * k3.gamma + k4.gamma);
}

void check_state(const Scenario& sc, double t, const Vector& theta_hat, const Matrix& gamma) {
  if (!theta_hat.allFinite()) throw SimulationError("non-finite theta_hat at t=" + std::to_string(t), t);
  if (!gamma.allFinite()) throw SimulationError("non-finite Gamma at t=" + std::to_string(t), t);
  const double bound = kEstimateCeiling * (1.0 + sc.theta_hat0.norm());
  if (theta_hat.norm() > bound) {
    std::ostringstream os;
    os << "theta_hat diverged at t=" << t << ": |theta_hat| = " << theta_hat.norm() << " exceeds " << bound;
    throw SimulationError(os.str(), t);
  }
  const double ceiling = sc.riccati_ceiling * sc.gamma0.norm();
  if (gamma.norm() > ceiling) {
    std::ostringstream os;
    os << "Riccati blow-up at t=" << t << ": |Gamma| = " << gamma.norm() << " exceeds " << ceiling;
    throw SimulationError(os.str(), t);
  }
}

double margin_of(const Scenario& sc, const LoopState& s, const Vector& z) {
  return is_event_triggered(sc.scheme()) ? trigger_margin(z, s.trigger, sc.trigger) : kNaN;
}

}  // namespace

double default_step(const DitherDesign& design) {
  return (2.0 * std::numbers::pi / design.fastest_frequency()) / kStepsPerFastPeriod;
}

void validate(const Scenario& sc) {
  const Eigen::Index n = sc.map.size();
  if (sc.design.size() != n) throw ValidationError("dither.amplitudes", "dimension must match map.thetastar");
  if (sc.gains.diagonal().size() != n) throw ValidationError("controller.K", "dimension must match map.thetastar");
  if (sc.theta_hat0.size() != n) throw ValidationError("init.theta_hat0", "dimension must match map.thetastar");
  if (!sc.theta_hat0.allFinite()) throw ValidationError("init.theta_hat0", "must be finite");
  if (sc.gamma0.rows() != n || sc.gamma0.cols() != n) {
    throw ValidationError("init.gamma0", "must be an n x n matrix");
  }
  if (!sc.gamma0.allFinite() || sc.gamma0.norm() == 0.0) {
    throw ValidationError("init.gamma0", "must be finite and nonzero");
  }
  const FrequencyReport freq = check_probing_frequencies(sc.design.multipliers());
  if (!freq.ok) throw ValidationError("dither.multipliers", freq.summary(sc.design.multipliers()));
  if (!is_newton(sc.scheme()) && !is_hurwitz(sc.map.h_star() * sc.gains.matrix())) {
    throw ValidationError("controller.K", "gradient schemes need H* K Hurwitz");
  }
  if (!std::isfinite(sc.omega_r) || sc.omega_r <= 0.0) throw ValidationError("controller.omega_r", "must be positive");
  if (!(sc.trigger.sigma > 0.0 && sc.trigger.sigma < 1.0)) {
    throw ValidationError("trigger.sigma", "sigma must lie in (0,1)");
  }
  if (!(sc.trigger.alpha > 0.0) || !std::isfinite(sc.trigger.alpha)) {
    throw ValidationError("trigger.alpha", "alpha must be positive");
  }
  if (sc.step && !(*sc.step > 0.0 && std::isfinite(*sc.step))) throw ValidationError("sim.h", "must be positive");
  if (!(sc.t_end >= 0.0) || !std::isfinite(sc.t_end)) throw ValidationError("sim.T_end", "must be non-negative");
  if (sc.stride < 1) throw ValidationError("sim.stride", "must be at least 1");
  if (!(sc.riccati_ceiling > 1.0)) throw ValidationError("sim.riccati_ceiling", "must exceed 1");
}

Scenario make_scenario(std::string name, QuadraticMap map, DitherDesign design,
                       ControllerGains gains, TriggerConfig trigger, Vector theta_hat0,
                       Matrix gamma0, double omega_r, std::optional<double> step,
                       double t_end, int stride) {
  const Eigen::Index n = map.size();
  if (gamma0.size() == 0) gamma0 = kDefaultGamma0 * Matrix::Identity(n, n);
  Scenario sc{std::move(name), std::move(map), std::move(design), std::move(gains), trigger,
              std::move(theta_hat0), std::move(gamma0), omega_r, step, t_end, stride};
  validate(sc);
  return sc;
}

Measurement measure(const Scenario& sc, double t, const Vector& theta_hat, const Matrix& gamma) {
  Measurement m;
  m.dither = dither(sc.design, t);
  m.theta = theta_hat + m.dither;
  m.y = sc.map.evaluate(m.theta);
  m.g_hat = gradient_estimate(demod(sc.design, t), m.y);
  m.z = is_newton(sc.scheme()) ? Vector(gamma * m.g_hat) : m.g_hat;
  return m;
}

LoopState initial_state(const Scenario& sc) {
  LoopState s;
  s.t = 0.0;
  s.theta_hat = sc.theta_hat0;
  s.gamma = sc.gamma0;
  const Measurement m = measure(sc, 0.0, s.theta_hat, s.gamma);
  s.trigger = TriggerState{m.z, 0.0};
  s.held_u = ControlSample{control_law(sc.gains, m.z), 0.0};
  return s;
}

LoopState step(const LoopState& state, const Scenario& sc, double h, EventLog* log, StepInfo* info) {
  if (!(h > 0.0)) throw std::invalid_argument("step: h must be positive");
  EventLog scratch;
  EventLog& events = log ? *log : scratch;

  LoopState next = state;
  const double t1 = state.t + h;
  rk4(sc, state.t, h, state.held_u.u, next.theta_hat, next.gamma);
  next.t = t1;
  check_state(sc, t1, next.theta_hat, next.gamma);
  Measurement m = measure(sc, t1, next.theta_hat, next.gamma);
  if (!std::isfinite(m.y)) throw SimulationError("non-finite output at t=" + std::to_string(t1), t1);

  StepInfo local;
  local.t = t1;
  local.event_time = t1;

  if (!is_event_triggered(sc.scheme())) {
    local.margin = kNaN;
    local.fired = true;
    events.append(t1);
    next.trigger = TriggerState{m.z, t1};
    next.held_u = ControlSample{control_law(sc.gains, m.z), t1};
    local.error_after = 0.0;
    if (info) *info = local;
    return next;
  }

  local.margin = margin_of(sc, next, m.z);
  if (local.margin < 0.0) {
    if (sc.refine_events) {
      // Bisect on the sub-step length; margin(0) >= 0 because e = 0 right
      // after the previous update or the trigger would already have fired.
      double lo = 0.0;
      double hi = h;
      Vector th_hi = next.theta_hat;
      Matrix g_hi = next.gamma;
      while (hi - lo > kRefineWindow * h) {
        const double mid = 0.5 * (lo + hi);
        Vector th = state.theta_hat;
        Matrix g = state.gamma;
        rk4(sc, state.t, mid, state.held_u.u, th, g);
        const Measurement mm = measure(sc, state.t + mid, th, g);
        if (trigger_margin(mm.z, state.trigger, sc.trigger) < 0.0) {
          hi = mid;
          th_hi = std::move(th);
          g_hi = std::move(g);
        } else {
          lo = mid;
        }
      }
      const double te = state.t + hi;
      const Measurement me = measure(sc, te, th_hi, g_hi);
      next.trigger = fire(state.trigger, me.z, te, events);
      const Vector u_new = control_law(sc.gains, me.z);
      next.held_u = ControlSample{u_new, te};
      local.event_time = te;
      next.theta_hat = th_hi;
      next.gamma = g_hi;
      local.error_after = next.trigger.error(me.z).norm();
      if (t1 - te > 0.0) {
        rk4(sc, te, t1 - te, u_new, next.theta_hat, next.gamma);
        check_state(sc, t1, next.theta_hat, next.gamma);
        m = measure(sc, t1, next.theta_hat, next.gamma);
        // A second crossing inside the same step falls back to the sample.
        local.margin = margin_of(sc, next, m.z);
        if (local.margin < 0.0) {
          next.trigger = fire(next.trigger, m.z, t1, events);
          next.held_u = ControlSample{control_law(sc.gains, m.z), t1};
          local.event_time = t1;
          local.error_after = 0.0;
        }
      }
      local.fired = true;
      if (info) *info = local;
      return next;
    } else {
      next.trigger = fire(state.trigger, m.z, t1, events);
      next.held_u = ControlSample{control_law(sc.gains, m.z), t1};
    }
    local.fired = true;
  }
  local.error_after = next.trigger.error(m.z).norm();
  if (info) *info = local;
  return next;
}

const char* to_string(RunStatus status) {
  return status == RunStatus::Completed ? "completed" : "diverged";
}

namespace {

TrajectoryRecord make_record(const Scenario& sc, const LoopState& s) {
  const Measurement m = measure(sc, s.t, s.theta_hat, s.gamma);
  return TrajectoryRecord{s.t,       m.theta,   m.y,     s.theta_hat, m.g_hat,
                          s.held_u.u, s.gamma, margin_of(sc, s, m.z)};
}

void finish_summary(const Scenario& sc, RunResult& r) {
  RunSummary& sum = r.summary;
  const LoopState& s = r.final_state;
  sum.final_time = s.t;
  sum.final_theta_hat = s.theta_hat;
  sum.update_count = r.events.count();
  sum.min_interval = r.events.min_interval();
  sum.mean_interval = r.events.mean_interval();
  sum.tau_star = zeno_lower_bound(sc.gains.norm(), sc.trigger);
  if (s.theta_hat.allFinite()) {
    const Measurement m = measure(sc, s.t, s.theta_hat, s.gamma);
    sum.final_theta_error = (m.theta - sc.map.theta_star()).norm();
    sum.final_theta_hat_error = (s.theta_hat - sc.map.theta_star()).norm();
    sum.final_output_error = std::abs(m.y - sc.map.q_star());
  } else {
    sum.final_theta_error = sum.final_theta_hat_error = sum.final_output_error = kNaN;
  }
}

}  // namespace

RunResult simulate(const Scenario& sc, const StepObserver& observer) {
  validate(sc);
  RunResult r;
  r.name = sc.name;
  r.scheme = sc.scheme();
  RunSummary& sum = r.summary;
  const double h = sc.effective_step();
  sum.step = h;
  sum.min_non_event_margin = std::numeric_limits<double>::infinity();
  sum.max_error_after_fire = 0.0;
  sum.convergence_time = kNaN;

  const double radius = 2.0 * sc.design.rss_amplitude();
  const Vector& theta_star = sc.map.theta_star();

  LoopState s = initial_state(sc);
  r.events.append(0.0);
  r.event_records.push_back(EventRecord{0.0, kNaN, s.trigger.held_z, s.held_u.u});
  r.trajectory.push_back(make_record(sc, s));
  if ((s.theta_hat - theta_star).norm() <= radius) sum.convergence_time = 0.0;

  const auto n_steps = static_cast<std::size_t>(std::ceil(sc.t_end / h - 1e-9));
  try {
    for (std::size_t k = 0; k < n_steps; ++k) {
      const double t_next = (k + 1 == n_steps) ? sc.t_end : static_cast<double>(k + 1) * h;
      StepInfo info;
      s = step(s, sc, t_next - s.t, &r.events, &info);
      s.t = t_next;
      info.index = k + 1;
      ++sum.steps;
      if (info.fired) {
        r.event_records.push_back(
            EventRecord{info.event_time, info.margin, s.trigger.held_z, s.held_u.u});
        sum.max_error_after_fire = std::max(sum.max_error_after_fire, info.error_after);
      } else {
        sum.min_non_event_margin = std::min(sum.min_non_event_margin, info.margin);
      }
      if (std::isnan(sum.convergence_time) && (s.theta_hat - theta_star).norm() <= radius) {
        sum.convergence_time = s.t;
      }
      if (observer) observer(info);
      if ((k + 1) % static_cast<std::size_t>(sc.stride) == 0 || k + 1 == n_steps) {
        r.trajectory.push_back(make_record(sc, s));
      }
    }
  } catch (const SimulationError& e) {
    sum.status = RunStatus::Diverged;
    sum.diagnostic = e.what();
    r.final_state = s;
    finish_summary(sc, r);
    return r;
  }
  r.final_state = s;
  finish_summary(sc, r);
  return r;
}

RunResult run(const Scenario& sc, const StepObserver& observer) {
  RunResult r = simulate(sc, observer);
  if (r.summary.status == RunStatus::Diverged) {
    throw SimulationError(sc.name + ": " + r.summary.diagnostic, r.final_state.t);
  }
  return r;
}

}  // namespace etnes
