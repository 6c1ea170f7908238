#include "etnes/plant.hpp"

#include <cmath>
#include <string>

#include "etnes/errors.hpp"

namespace etnes {

ExtremumKind extremum_kind(const Matrix& hessian) {
  if (hessian.rows() != hessian.cols() || hessian.rows() == 0) {
    throw ValidationError("map.Hstar", "must be a non-empty square matrix");
  }
  const Vector ev = symmetric_eigenvalues(hessian);
  if (ev[0] > 0.0) return {Extremum::Minimum, 0};
  if (ev[ev.size() - 1] < 0.0) return {Extremum::Maximum, 1};
  throw ValidationError("map.Hstar", "must be sign-definite (eigenvalues " +
                                         std::to_string(ev[0]) + " .. " +
                                         std::to_string(ev[ev.size() - 1]) + ")");
}

QuadraticMap QuadraticMap::create(double q_star, Matrix h_star, Vector theta_star) {
  if (!std::isfinite(q_star)) throw ValidationError("map.Qstar", "must be finite");
  if (h_star.rows() != h_star.cols()) throw ValidationError("map.Hstar", "must be square");
  if (h_star.rows() != theta_star.size()) {
    throw ValidationError("map.thetastar", "dimension must match Hstar");
  }
  if (!h_star.allFinite() || !theta_star.allFinite()) {
    throw ValidationError("map", "Hstar and thetastar must be finite");
  }
  if (!is_symmetric(h_star, 1e-12)) throw ValidationError("map.Hstar", "must be symmetric");

  QuadraticMap m;
  m.kind_ = extremum_kind(h_star);
  m.q_star_ = q_star;
  m.h_star_ = std::move(h_star);
  m.theta_star_ = std::move(theta_star);
  m.h_inverse_ = m.h_star_.inverse();
  return m;
}

void QuadraticMap::check_dim(const Vector& theta) const {
  if (theta.size() != theta_star_.size()) {
    throw std::invalid_argument("QuadraticMap: input has dimension " +
                                std::to_string(theta.size()) + ", expected " +
                                std::to_string(theta_star_.size()));
  }
}

double QuadraticMap::evaluate(const Vector& theta) const {
  check_dim(theta);
  const Vector d = theta - theta_star_;
  return q_star_ + 0.5 * d.dot(h_star_ * d);
}

Vector QuadraticMap::true_gradient(const Vector& theta) const {
  check_dim(theta);
  return h_star_ * (theta - theta_star_);
}

}  // namespace etnes
