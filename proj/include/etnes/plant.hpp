#pragma once

#include <functional>

#include "etnes/linalg.hpp"

namespace etnes {

enum class Extremum { Minimum, Maximum };

/// Whether the extremum is a minimum (op = 0, H* > 0) or a maximum (op = 1,
/// H* < 0); (-1)^op H* is positive definite in both cases.
struct ExtremumKind {
  Extremum kind = Extremum::Minimum;
  int op = 0;
};

/// Classifies a symmetric Hessian. Throws ValidationError when it is
/// indefinite or singular.
ExtremumKind extremum_kind(const Matrix& hessian);

/// y = Q* + 1/2 (theta - theta*)^T H* (theta - theta*).
///
/// Ground truth held by the simulator and by test oracles. Controllers only
/// see y.
class QuadraticMap {
 public:
  /// Throws ValidationError unless H* is square, symmetric to 1e-12 and
  /// sign-definite, and theta* matches its dimension.
  static QuadraticMap create(double q_star, Matrix h_star, Vector theta_star);

  Eigen::Index size() const noexcept { return theta_star_.size(); }
  double q_star() const noexcept { return q_star_; }
  const Matrix& h_star() const noexcept { return h_star_; }
  const Vector& theta_star() const noexcept { return theta_star_; }
  const Matrix& h_star_inverse() const noexcept { return h_inverse_; }
  ExtremumKind kind() const noexcept { return kind_; }

  double evaluate(const Vector& theta) const;
  Vector true_gradient(const Vector& theta) const;

 private:
  QuadraticMap() = default;
  void check_dim(const Vector& theta) const;

  double q_star_ = 0.0;
  Matrix h_star_;
  Vector theta_star_;
  Matrix h_inverse_;
  ExtremumKind kind_;
};

inline ExtremumKind extremum_kind(const QuadraticMap& map) { return map.kind(); }

/// Measurement hook for non-quadratic static maps. Analysis results that rely
/// on H* and theta* still refer to the scenario's QuadraticMap.
using MapFunction = std::function<double(const Vector&)>;

}  // namespace etnes
