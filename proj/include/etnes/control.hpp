#pragma once

#include <string>
#include <string_view>

#include "etnes/linalg.hpp"

namespace etnes {

enum class Scheme { GradientContinuous, GradientEventTriggered, NewtonContinuous, NewtonEventTriggered };

std::string_view to_string(Scheme scheme);
/// Accepts gradient_continuous, gradient_et, newton_continuous, newton_et.
Scheme parse_scheme(std::string_view name);

inline bool is_newton(Scheme s) {
  return s == Scheme::NewtonContinuous || s == Scheme::NewtonEventTriggered;
}
inline bool is_event_triggered(Scheme s) {
  return s == Scheme::GradientEventTriggered || s == Scheme::NewtonEventTriggered;
}

/// Diagonal adaptation gain K and the tuning law it drives.
class ControllerGains {
 public:
  /// Entries must be nonzero; Newton schemes additionally need K > 0. The
  /// gradient requirement (H* K Hurwitz) needs H* and is checked by the
  /// simulator at scenario load.
  static ControllerGains create(Vector diagonal, Scheme scheme);

  const Vector& diagonal() const noexcept { return diagonal_; }
  Matrix matrix() const { return diagonal_.asDiagonal(); }
  Scheme scheme() const noexcept { return scheme_; }
  double norm() const { return diagonal_.cwiseAbs().maxCoeff(); }

 private:
  ControllerGains() = default;
  Vector diagonal_;
  Scheme scheme_ = Scheme::NewtonEventTriggered;
};

/// A control value and the instant it was computed; held until replaced.
struct ControlSample {
  Vector u;
  double computed_at = 0.0;
};

/// u = K G_hat.
Vector control_gradient_continuous(const ControllerGains& gains, const Vector& g_hat);

/// u = -K z, with z = Gamma*G_hat (instantaneous or held at the last event).
Vector control_newton(const ControllerGains& gains, const Vector& z);

/// The scheme's law applied to its decision signal.
Vector control_law(const ControllerGains& gains, const Vector& z);

/// Zero-order hold: the sample's value for any t >= computed_at.
const Vector& held_control(const ControlSample& sample, double t);

}  // namespace etnes
