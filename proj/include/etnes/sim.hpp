#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "etnes/control.hpp"
#include "etnes/estimators.hpp"
#include "etnes/linalg.hpp"
#include "etnes/plant.hpp"
#include "etnes/signals.hpp"
#include "etnes/trigger.hpp"

namespace etnes {

inline constexpr double kDefaultGamma0 = 1e-4;
inline constexpr double kDefaultOmegaR = 1e-3;
inline constexpr double kDefaultHorizon = 100.0;
inline constexpr int kDefaultStride = 10;
inline constexpr int kStepsPerFastPeriod = 200;
inline constexpr double kDefaultRiccatiCeiling = 1e6;

/// h = (2*pi / max_i w_i) / 200.
double default_step(const DitherDesign& design);

/// Everything needed to reproduce one closed-loop run. Fully deterministic.
struct Scenario {
  std::string name = "scenario";
  QuadraticMap map;
  DitherDesign design;
  ControllerGains gains;
  TriggerConfig trigger;
  Vector theta_hat0;
  Matrix gamma0;
  double omega_r = kDefaultOmegaR;
  std::optional<double> step;  // empty: default_step(design)
  double t_end = kDefaultHorizon;
  int stride = kDefaultStride;
  bool refine_events = false;
  double riccati_ceiling = kDefaultRiccatiCeiling;  // abort once |Gamma| > this * |Gamma(0)|

  Scheme scheme() const { return gains.scheme(); }
  double effective_step() const { return step ? *step : default_step(design); }
};

/// Throws ValidationError naming the field and rule on any violated
/// precondition: dimensions, the probing-frequency exclusion set, K sign rules
/// (H*K Hurwitz for gradient schemes), w_r > 0, h > 0, T_end >= 0,
/// stride >= 1.
void validate(const Scenario& scenario);

/// Fills Gamma(0) = 1e-4 I when `gamma0` is empty and validates.
Scenario make_scenario(std::string name, QuadraticMap map, DitherDesign design,
                       ControllerGains gains, TriggerConfig trigger, Vector theta_hat0,
                       Matrix gamma0 = {}, double omega_r = kDefaultOmegaR,
                       std::optional<double> step = std::nullopt,
                       double t_end = kDefaultHorizon, int stride = kDefaultStride);

/// The complete integrable state of one closed loop. theta_tilde and
/// Gamma_tilde are never stored: the loop does not know theta*.
struct LoopState {
  double t = 0.0;
  Vector theta_hat;
  Matrix gamma;           // integrated for Newton schemes only
  TriggerState trigger;   // meaningful for event-triggered schemes
  ControlSample held_u;
};

struct TrajectoryRecord {
  double t = 0.0;
  Vector theta;
  double y = 0.0;
  Vector theta_hat;
  Vector g_hat;
  Vector u;
  Matrix gamma;
  double margin = 0.0;  // NaN for continuous schemes
};

using Trajectory = std::vector<TrajectoryRecord>;

/// One control update. `margin` is the trigger margin that caused it (NaN at
/// initialization and for continuous schemes).
struct EventRecord {
  double t = 0.0;
  double margin = 0.0;
  Vector z;
  Vector u;
};

/// Per-step diagnostics handed to an optional observer.
struct StepInfo {
  std::size_t index = 0;
  double t = 0.0;
  double margin = 0.0;       // before any fire at this step
  double event_time = 0.0;   // equals t unless the crossing was refined
  bool fired = false;
  double error_after = 0.0;  // |e| once the step is complete
};

using StepObserver = std::function<void(const StepInfo&)>;

enum class RunStatus { Completed, Diverged };

struct RunSummary {
  RunStatus status = RunStatus::Completed;
  std::string diagnostic;
  std::size_t steps = 0;
  double step = 0.0;
  std::size_t update_count = 0;
  double final_time = 0.0;
  double final_theta_error = 0.0;      // |theta(T) - theta*|, dither included
  double final_theta_hat_error = 0.0;  // |theta_hat(T) - theta*|
  double final_output_error = 0.0;     // |y(T) - Q*|
  double min_interval = 0.0;
  double mean_interval = 0.0;
  double convergence_time = 0.0;       // first t with |theta_hat - theta*| <= 2a; NaN if never
  double tau_star = 0.0;               // idealized omega -> inf bound
  double min_non_event_margin = 0.0;   // +inf when every step fired
  double max_error_after_fire = 0.0;
  Vector final_theta_hat;
};

struct RunResult {
  std::string name;
  Scheme scheme = Scheme::NewtonEventTriggered;
  Trajectory trajectory;
  EventLog events;
  std::vector<EventRecord> event_records;
  RunSummary summary;
  LoopState final_state;
};

/// Initial loop state: z(0) is held and, for event-triggered schemes, t0 = 0
/// is logged as the first event.
LoopState initial_state(const Scenario& scenario);

/// One RK4 step of (theta_hat, Gamma) with u held, followed by signal
/// evaluation and the trigger check at t + h. Fires are appended to `log` when
/// given; `info` receives the step diagnostics. With scenario.refine_events the
/// crossing is located by bisection and the remainder of the step runs on the
/// new input. Throws SimulationError on a non-finite state, when |Gamma|
/// exceeds riccati_ceiling |Gamma(0)| or when |theta_hat| exceeds 1e6 (1 + |theta_hat(0)|).
LoopState step(const LoopState& state, const Scenario& scenario, double h,
               EventLog* log = nullptr, StepInfo* info = nullptr);

/// Integrates to T_end and never throws on divergence: the partial result is
/// returned with status Diverged and a diagnostic.
RunResult simulate(const Scenario& scenario, const StepObserver& observer = {});

/// As simulate, but a diverged run raises SimulationError.
RunResult run(const Scenario& scenario, const StepObserver& observer = {});

/// The decision signal z (Gamma*G_hat for Newton, G_hat for gradient) and the
/// measurement quantities at (t, theta_hat, Gamma).
struct Measurement {
  Vector dither;
  Vector theta;
  double y = 0.0;
  Vector g_hat;
  Vector z;
};

Measurement measure(const Scenario& scenario, double t, const Vector& theta_hat,
                    const Matrix& gamma);

const char* to_string(RunStatus status);

}  // namespace etnes
