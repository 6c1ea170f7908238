#include "etnes/control.hpp"

#include <cmath>
#include <stdexcept>

#include "etnes/errors.hpp"

namespace etnes {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::GradientContinuous: return "gradient_continuous";
    case Scheme::GradientEventTriggered: return "gradient_et";
    case Scheme::NewtonContinuous: return "newton_continuous";
    case Scheme::NewtonEventTriggered: return "newton_et";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "gradient_continuous") return Scheme::GradientContinuous;
  if (name == "gradient_et") return Scheme::GradientEventTriggered;
  if (name == "newton_continuous") return Scheme::NewtonContinuous;
  if (name == "newton_et") return Scheme::NewtonEventTriggered;
  throw ValidationError("controller.scheme",
                        "unknown scheme '" + std::string(name) +
                            "' (expected gradient_continuous, gradient_et, newton_continuous, newton_et)");
}

ControllerGains ControllerGains::create(Vector diagonal, Scheme scheme) {
  if (diagonal.size() == 0) throw ValidationError("controller.K", "must be non-empty");
  for (Eigen::Index i = 0; i < diagonal.size(); ++i) {
    if (!std::isfinite(diagonal[i]) || diagonal[i] == 0.0) {
      throw ValidationError("controller.K", "diagonal entries must be finite and nonzero");
    }
    if (is_newton(scheme) && diagonal[i] < 0.0) {
      throw ValidationError("controller.K", "Newton schemes need K positive definite so that -K is Hurwitz");
    }
  }
  ControllerGains g;
  g.diagonal_ = std::move(diagonal);
  g.scheme_ = scheme;
  return g;
}

Vector control_gradient_continuous(const ControllerGains& gains, const Vector& g_hat) {
  return gains.diagonal().cwiseProduct(g_hat);
}

Vector control_newton(const ControllerGains& gains, const Vector& z) {
  return -gains.diagonal().cwiseProduct(z);
}

Vector control_law(const ControllerGains& gains, const Vector& z) {
  return is_newton(gains.scheme()) ? control_newton(gains, z)
                                   : control_gradient_continuous(gains, z);
}

const Vector& held_control(const ControlSample& sample, double t) {
  if (t < sample.computed_at) {
    throw std::invalid_argument("held_control: query precedes the sample time");
  }
  return sample.u;
}

}  // namespace etnes
