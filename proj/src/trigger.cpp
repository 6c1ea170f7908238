#include "etnes/trigger.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "etnes/errors.hpp"

namespace etnes {

TriggerConfig TriggerConfig::create(double sigma, double alpha) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw ValidationError("trigger.sigma", "sigma must lie in (0,1)");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("trigger.alpha", "alpha must be positive");
  }
  return TriggerConfig{sigma, alpha};
}

void EventLog::append(double t) {
  if (!times_.empty() && !(t > times_.back())) {
    throw std::invalid_argument("EventLog: event at t=" + std::to_string(t) +
                                " does not follow t=" + std::to_string(times_.back()));
  }
  times_.push_back(t);
}

std::vector<double> EventLog::intervals() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < times_.size(); ++k) out.push_back(times_[k] - times_[k - 1]);
  return out;
}

double EventLog::min_interval() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < times_.size(); ++k) m = std::min(m, times_[k] - times_[k - 1]);
  return m;
}

double EventLog::mean_interval() const {
  if (times_.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
}

double trigger_margin(const Vector& z_now, const TriggerState& state, const TriggerConfig& cfg) {
  if (z_now.size() != state.held_z.size()) {
    throw std::invalid_argument("trigger_margin: dimension mismatch");
  }
  return cfg.sigma * z_now.norm() - cfg.alpha * (state.held_z - z_now).norm();
}

TriggerState fire(const TriggerState& state, const Vector& z_now, double t, EventLog& log) {
  if (!log.empty() && !(t > state.last_event_time)) {
    throw std::invalid_argument("fire: non-monotone event time " + std::to_string(t));
  }
  log.append(t);
  return TriggerState{z_now, t};
}

double zeno_lower_bound(double k_norm, const TriggerConfig& cfg, double omega,
                        double finite_omega_constant) {
  if (!(k_norm > 0.0)) throw std::invalid_argument("zeno_lower_bound: |K| must be positive");
  const double sb = cfg.sigma / cfg.alpha;
  if (!(sb > 0.0)) throw std::invalid_argument("zeno_lower_bound: sigma/alpha must be positive");
  const double corr = std::isinf(omega) ? 0.0 : finite_omega_constant / omega;
  return (1.0 / k_norm) * (1.0 / (sb * sb)) * (1.0 - corr) / (1.0 + 1.0 / sb - corr);
}

}  // namespace etnes
