#include "etnes/estimators.hpp"

#include <cmath>

#include "etnes/errors.hpp"

namespace etnes {

RiccatiState RiccatiState::create(Matrix gamma, double omega_r) {
  if (!std::isfinite(omega_r) || omega_r <= 0.0) {
    throw ValidationError("controller.omega_r", "must be positive");
  }
  if (gamma.rows() != gamma.cols() || gamma.rows() == 0) {
    throw ValidationError("init.gamma0", "must be a non-empty square matrix");
  }
  if (!gamma.allFinite()) throw ValidationError("init.gamma0", "must be finite");
  return RiccatiState{std::move(gamma), omega_r};
}

Matrix riccati_rhs(const Matrix& gamma, double omega_r, const Matrix& hessian_estimate) {
  return omega_r * (gamma - gamma * hessian_estimate * gamma);
}

}  // namespace etnes
