#pragma once

#include "etnes/linalg.hpp"

namespace etnes {

/// G_hat = M(t) y(t).
inline Vector gradient_estimate(const Vector& demod, double y) { return demod * y; }

/// H_hat = N(t) y(t). Symmetric whenever N is.
inline Matrix hessian_estimate(const Matrix& probe, double y) { return probe * y; }

/// Inverse-Hessian filter state dGamma/dt = w_r Gamma - w_r Gamma H_hat Gamma.
struct RiccatiState {
  Matrix gamma;
  double omega_r = 1.0;

  /// Throws ValidationError for w_r <= 0, a non-square or non-finite Gamma.
  static RiccatiState create(Matrix gamma, double omega_r);
};

Matrix riccati_rhs(const Matrix& gamma, double omega_r, const Matrix& hessian_estimate);

inline Matrix riccati_rhs(const RiccatiState& state, const Matrix& hessian_estimate) {
  return riccati_rhs(state.gamma, state.omega_r, hessian_estimate);
}

}  // namespace etnes
