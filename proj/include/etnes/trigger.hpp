#pragma once

#include <limits>
#include <vector>

#include "etnes/linalg.hpp"

namespace etnes {

/// Static triggering rule parameters: fire when sigma*|z| - alpha*|e| < 0.
struct TriggerConfig {
  double sigma = 0.75;
  double alpha = 0.8;

  /// Throws ValidationError unless 0 < sigma < 1 and alpha > 0.
  static TriggerConfig create(double sigma, double alpha);
};

/// Decision signal frozen at the last event. For Newton loops z = Gamma*G_hat,
/// for the gradient baseline z = G_hat.
struct TriggerState {
  Vector held_z;
  double last_event_time = 0.0;

  /// e(t) = held_z - z(t).
  Vector error(const Vector& z_now) const { return held_z - z_now; }
};

/// Strictly increasing event instants, starting with the initialization
/// event at t0.
class EventLog {
 public:
  /// Throws std::invalid_argument if t does not exceed the last entry.
  void append(double t);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t count() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  /// Smallest / mean gap between consecutive events; +inf / NaN with fewer
  /// than two events.
  double min_interval() const;
  double mean_interval() const;
  std::vector<double> intervals() const;

 private:
  std::vector<double> times_;
};

double trigger_margin(const Vector& z_now, const TriggerState& state, const TriggerConfig& cfg);

/// Records an event at t: the held signal becomes z_now and t is appended to
/// the log. Rejects t <= last_event_time once the log is non-empty.
TriggerState fire(const TriggerState& state, const Vector& z_now, double t, EventLog& log);

/// Lower bound on the inter-event time of the averaged loop,
///   tau* = (1/|K|) (1/sb^2) (1 - c/w) / (1 + 1/sb - c/w),  sb = sigma/alpha.
/// omega = +inf (the default) gives the idealized bound; `finite_omega_constant`
/// is the c multiplying the O(1/omega) terms.
double zeno_lower_bound(double k_norm, const TriggerConfig& cfg,
                        double omega = std::numeric_limits<double>::infinity(),
                        double finite_omega_constant = 0.0);

}  // namespace etnes
