#pragma once

#include <span>
#include <string>
#include <vector>

#include "etnes/linalg.hpp"
#include "etnes/rational.hpp"

namespace etnes {

/// Which relation of the probing-frequency exclusion set a multiplier hit.
enum class FrequencyClause {
  NonPositive,    // w'_i <= 0 (rejected before clause checking)
  Duplicate,      // w'_i == w'_j, i != j (rejected before clause checking)
  Midpoint,       // w'_i == (w'_j + w'_k) / 2
  SumWithDouble,  // w'_i == w'_j + 2 w'_k
  Sum,            // w'_i == w'_k + w'_l
  Difference,     // w'_i == w'_k - w'_l
};

const char* to_string(FrequencyClause clause);

/// One violated tuple. Indices are 1-based; unused slots hold 0.
struct ClauseViolation {
  FrequencyClause clause;
  int i = 0;
  int j = 0;
  int k = 0;
  int l = 0;

  std::string describe(std::span<const Rational> multipliers) const;
};

struct FrequencyReport {
  bool ok = true;
  std::vector<ClauseViolation> violations;

  std::string summary(std::span<const Rational> multipliers) const;
};

/// Exhaustive exact check of the resonance-exclusion conditions on the
/// frequency multipliers. Repeated indices are allowed except where the
/// relation collapses to an identity (j = k = i in the midpoint clause, k = l
/// in the difference clause).
FrequencyReport check_probing_frequencies(std::span<const Rational> multipliers);

/// LCM{1/w'_i} over exact rationals, so that the common period is
/// T = 2*pi*LCM{1/w'_i} / omega.
Rational period_factor(std::span<const Rational> multipliers);

/// Sinusoidal probing design: channel i uses amplitude a_i and frequency
/// w_i = w'_i * omega with w'_i an exact rational.
class DitherDesign {
 public:
  /// Throws ValidationError on size mismatch, zero/non-finite amplitudes,
  /// non-positive or repeated multipliers, or omega <= 0.
  static DitherDesign create(Vector amplitudes, std::vector<Rational> multipliers,
                             double omega);

  Eigen::Index size() const noexcept { return amplitudes_.size(); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<Rational>& multipliers() const noexcept { return multipliers_; }
  double omega() const noexcept { return omega_; }
  const Vector& frequencies() const noexcept { return frequencies_; }

  /// Exact LCM{1/w'_i}.
  const Rational& period_factor() const noexcept { return period_factor_; }
  /// Common period T in seconds.
  double period() const noexcept { return period_; }
  /// a = sqrt(sum a_i^2).
  double rss_amplitude() const noexcept { return rss_amplitude_; }
  double fastest_frequency() const noexcept { return frequencies_.maxCoeff(); }

  DitherDesign with_omega(double omega) const;
  DitherDesign with_amplitudes(Vector amplitudes) const;

 private:
  DitherDesign() = default;

  Vector amplitudes_;
  std::vector<Rational> multipliers_;
  double omega_ = 1.0;
  Vector frequencies_;
  Rational period_factor_;
  double period_ = 0.0;
  double rss_amplitude_ = 0.0;
};

double common_period(const DitherDesign& design);

/// S(t), S_i = a_i sin(w_i t).
Vector dither(const DitherDesign& design, double t);
/// M(t), M_i = (2/a_i) sin(w_i t).
Vector demod(const DitherDesign& design, double t);
/// N(t): N_ii = -(8/a_i^2) cos(2 w_i t),
///       N_ij = (2/(a_i a_j)) [cos((w_i - w_j) t) - cos((w_i + w_j) t)].
Matrix hessian_probe(const DitherDesign& design, double t);

/// S, M and N at one instant, sharing the trigonometric evaluations.
struct SignalFrame {
  Vector dither;
  Vector demod;
  Matrix hessian_probe;
};

SignalFrame evaluate_signals(const DitherDesign& design, double t);

}  // namespace etnes
