#include "etnes/signals.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "etnes/errors.hpp"

namespace etnes {
namespace {

// Phases are reduced modulo the common period so that f(t + T) reproduces
// f(t) up to the rounding of the reduction itself.
double reduce(const DitherDesign& design, double t) {
  const double period = design.period();
  if (t >= 0.0 && t < period) return t;
  const double r = std::fmod(t, period);
  return r < 0.0 ? r + period : r;
}

std::string label(std::span<const Rational> m, int idx) {
  return "w'" + std::to_string(idx) + "=" + m[static_cast<std::size_t>(idx - 1)].to_string();
}

}  // namespace

const char* to_string(FrequencyClause clause) {
  switch (clause) {
    case FrequencyClause::NonPositive: return "non-positive multiplier";
    case FrequencyClause::Duplicate: return "duplicate multiplier (w'_i = w'_j)";
    case FrequencyClause::Midpoint: return "w'_i = (w'_j + w'_k)/2";
    case FrequencyClause::SumWithDouble: return "w'_i = w'_j + 2 w'_k";
    case FrequencyClause::Sum: return "w'_i = w'_k + w'_l";
    case FrequencyClause::Difference: return "w'_i = w'_k - w'_l";
  }
  return "unknown";
}

std::string ClauseViolation::describe(std::span<const Rational> m) const {
  std::ostringstream os;
  os << to_string(clause) << " with ";
  switch (clause) {
    case FrequencyClause::NonPositive:
      os << "(i=" << i << ") " << label(m, i);
      break;
    case FrequencyClause::Duplicate:
      os << "(i=" << i << ", j=" << j << ") " << label(m, i) << ", " << label(m, j);
      break;
    case FrequencyClause::Midpoint:
    case FrequencyClause::SumWithDouble:
      os << "(i=" << i << ", j=" << j << ", k=" << k << ") " << label(m, i) << ", "
         << label(m, j) << ", " << label(m, k);
      break;
    case FrequencyClause::Sum:
    case FrequencyClause::Difference:
      os << "(i=" << i << ", k=" << k << ", l=" << l << ") " << label(m, i) << ", "
         << label(m, k) << ", " << label(m, l);
      break;
  }
  return os.str();
}

std::string FrequencyReport::summary(std::span<const Rational> m) const {
  if (ok) return "probing frequencies satisfy the exclusion conditions";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (const auto& v : violations) os << "\n  " << v.describe(m);
  return os.str();
}

FrequencyReport check_probing_frequencies(std::span<const Rational> m) {
  if (m.empty()) throw std::invalid_argument("check_probing_frequencies: no multipliers");
  const int n = static_cast<int>(m.size());
  auto at = [&](int idx) -> const Rational& { return m[static_cast<std::size_t>(idx)]; };

  FrequencyReport report;
  for (int i = 0; i < n; ++i) {
    if (at(i) <= Rational(0)) report.violations.push_back({FrequencyClause::NonPositive, i + 1});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (at(i) == at(j)) report.violations.push_back({FrequencyClause::Duplicate, i + 1, j + 1});
    }
  }
  if (!report.violations.empty()) {
    report.ok = false;
    return report;
  }

  const Rational two(2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (!(j == i && k == i) && at(i) * two == at(j) + at(k)) {
          report.violations.push_back({FrequencyClause::Midpoint, i + 1, j + 1, k + 1, 0});
        }
        if (at(i) == at(j) + two * at(k)) {
          report.violations.push_back({FrequencyClause::SumWithDouble, i + 1, j + 1, k + 1, 0});
        }
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        if (at(i) == at(k) + at(l)) {
          report.violations.push_back({FrequencyClause::Sum, i + 1, 0, k + 1, l + 1});
        }
        if (k != l && at(i) == at(k) - at(l)) {
          report.violations.push_back({FrequencyClause::Difference, i + 1, 0, k + 1, l + 1});
        }
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

Rational period_factor(std::span<const Rational> multipliers) {
  if (multipliers.empty()) throw std::invalid_argument("period_factor: no multipliers");
  Rational acc = multipliers.front().reciprocal();
  for (std::size_t i = 1; i < multipliers.size(); ++i) {
    acc = rational_lcm(acc, multipliers[i].reciprocal());
  }
  return acc;
}

DitherDesign DitherDesign::create(Vector amplitudes, std::vector<Rational> multipliers,
                                  double omega) {
  const auto n = amplitudes.size();
  if (n == 0) throw ValidationError("dither.amplitudes", "must be non-empty");
  if (static_cast<std::size_t>(n) != multipliers.size()) {
    throw ValidationError("dither.multipliers", "must have one entry per amplitude");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(amplitudes[i]) || amplitudes[i] == 0.0) {
      throw ValidationError("dither.amplitudes", "every amplitude must be finite and nonzero");
    }
  }
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    if (multipliers[i] <= Rational(0)) {
      throw ValidationError("dither.multipliers", "every multiplier must be positive");
    }
    for (std::size_t j = i + 1; j < multipliers.size(); ++j) {
      if (multipliers[i] == multipliers[j]) {
        throw ValidationError("dither.multipliers", "multipliers must be pairwise distinct");
      }
    }
  }
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw ValidationError("dither.omega", "must be positive and finite");
  }

  DitherDesign d;
  d.amplitudes_ = std::move(amplitudes);
  d.multipliers_ = std::move(multipliers);
  d.omega_ = omega;
  d.frequencies_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d.frequencies_[i] = d.multipliers_[static_cast<std::size_t>(i)].to_double() * omega;
  }
  d.period_factor_ = etnes::period_factor(d.multipliers_);
  d.period_ = 2.0 * std::numbers::pi * d.period_factor_.to_double() / omega;
  d.rss_amplitude_ = d.amplitudes_.norm();
  return d;
}

DitherDesign DitherDesign::with_omega(double omega) const {
  return create(amplitudes_, multipliers_, omega);
}

DitherDesign DitherDesign::with_amplitudes(Vector amplitudes) const {
  return create(std::move(amplitudes), multipliers_, omega_);
}

double common_period(const DitherDesign& design) { return design.period(); }

Vector dither(const DitherDesign& design, double t) {
  const double tau = reduce(design, t);
  return design.amplitudes().array() * (design.frequencies().array() * tau).sin();
}

Vector demod(const DitherDesign& design, double t) {
  const double tau = reduce(design, t);
  return 2.0 * (design.frequencies().array() * tau).sin() / design.amplitudes().array();
}

Matrix hessian_probe(const DitherDesign& design, double t) {
  return evaluate_signals(design, t).hessian_probe;
}

SignalFrame evaluate_signals(const DitherDesign& design, double t) {
  const double tau = reduce(design, t);
  const Vector& a = design.amplitudes();
  const Vector& w = design.frequencies();
  const auto n = design.size();

  SignalFrame f;
  const Vector s = (w.array() * tau).sin();
  f.dither = a.array() * s.array();
  f.demod = 2.0 * s.array() / a.array();
  f.hessian_probe.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f.hessian_probe(i, i) = -8.0 / (a[i] * a[i]) * std::cos(2.0 * w[i] * tau);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 2.0 / (a[i] * a[j]) *
                       (std::cos((w[i] - w[j]) * tau) - std::cos((w[i] + w[j]) * tau));
      f.hessian_probe(i, j) = v;
      f.hessian_probe(j, i) = v;
    }
  }
  return f;
}

}  // namespace etnes
