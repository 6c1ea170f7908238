#pragma once

#include <limits>
#include <string>
#include <vector>

#include "etnes/linalg.hpp"
#include "etnes/sim.hpp"

namespace etnes {

/// A^T P + P A + Q = 0 with P = P^T > 0.
struct LyapunovCertificate {
  Matrix a;
  Matrix p;
  Matrix q;
  double residual = 0.0;  // spectral norm of A^T P + P A + Q
};

/// Solves the Lyapunov equation through the Kronecker-vectorized system
/// (I (x) A^T + A^T (x) I) vec(P) = -vec(Q). Throws std::invalid_argument if A
/// is not Hurwitz or Q is not symmetric positive definite, std::runtime_error
/// if the linear system is singular or P fails to be positive definite.
LyapunovCertificate solve_lyapunov(const Matrix& a, const Matrix& q);

/// alpha_min = 2 |P1 K H*| / lambda_min(Q).
double alpha_lower_bound(const LyapunovCertificate& p1, const Matrix& k, const Matrix& h_star);

/// Both certificates used by the convergence analysis: A1 = -K and
/// A2 = H* (-K) H*^{-1}.
struct CertificatePair {
  LyapunovCertificate p1;
  LyapunovCertificate p2;
};

CertificatePair certify(const Matrix& k, const Matrix& h_star, const Matrix& q);

struct AveragedState {
  Vector g_hat;
  Vector theta_tilde;
  Matrix gamma_tilde;
  Vector e;
};

struct AveragedDerivative {
  Vector g_hat;
  Vector theta_tilde;
  Matrix gamma_tilde;
};

/// Right-hand side in the rescaled time t_bar = omega t. `linearized` drops the
/// couplings quadratic in Gamma_tilde.
AveragedDerivative averaged_rhs(const AveragedState& state, const Matrix& k, const Matrix& h_star,
                                double omega, double omega_r, bool linearized = false);

/// Decision signal of the averaged loop: (I + Gamma_tilde H*) theta_tilde,
/// which reduces to theta_tilde in the linearized variant.
Vector averaged_decision(const AveragedState& state, const Matrix& h_star, bool linearized);

struct AveragedRun {
  Trajectory trajectory;  // theta_hat = theta* + theta_tilde_av, Gamma = H*^{-1} + Gamma_tilde_av
  EventLog events;
  std::vector<AveragedState> states;  // aligned with trajectory
  RunStatus status = RunStatus::Completed;
  std::string diagnostic;
};

/// Integrates the averaged event-triggered loop on the scenario's time grid
/// (original time, so the 1/omega factors cancel), firing when
/// sigma |z_av| - alpha |e_av| < 0 and holding u_av = -K z_av(t_k).
AveragedRun run_averaged(const Scenario& scenario, bool linearized = false);

struct EnvelopeParams {
  double lambda_min_p1 = 1.0;
  double lambda_max_p1 = 1.0;
  double lambda_min_q = 1.0;
  double sigma = 0.0;
  double omega = 1.0;
  double omega_r = 1.0;
  double a = 0.0;                    // sqrt(sum a_i^2)
  double hessian_condition = 1.0;    // lambda_max/lambda_min of (-1)^op H*
  double hessian_norm_product = 1.0; // |H*| |H*^{-1}|
  int op = 0;

  /// 1/2 lambda_min(Q)/lambda_max(P1) (1 - sigma).
  double decay_rate() const { return 0.5 * lambda_min_q / lambda_max_p1 * (1.0 - sigma); }
};

EnvelopeParams envelope_params(const Scenario& scenario, const Matrix& q);

struct EnvelopeInitial {
  double theta_error = 0.0;   // |theta(0) - theta*|
  double output_error = 0.0;  // |y(0) - Q*|
  double g_hat = 0.0;         // |G(0)|, taken as |H* theta_tilde(0)|
  double gamma_error = 0.0;   // |Gamma(0) - H*^{-1}|
};

/// Multipliers of the residual terms c_theta (a + 1/omega), c_y (a^2 + 1/omega^2),
/// c_G / omega and c_Gamma / omega.
struct ResidualConstants {
  double theta = 0.0;
  double output = 0.0;
  double g_hat = 0.0;
  double gamma = 0.0;
};

struct EnvelopeValues {
  double theta = 0.0;
  double output = 0.0;
  double g_hat = 0.0;
  double gamma = 0.0;
};

EnvelopeValues convergence_envelopes(const EnvelopeParams& params, const EnvelopeInitial& init,
                                  const ResidualConstants& residual, double t);

struct EnvelopeQuantity {
  bool pass = true;
  double worst_ratio = 0.0;  // max over samples of observed / envelope
  double first_violation = std::numeric_limits<double>::quiet_NaN();
};

struct EnvelopeCheck {
  ResidualConstants constants;
  EnvelopeInitial initial;
  EnvelopeQuantity theta;
  EnvelopeQuantity output;
  EnvelopeQuantity g_hat;
  EnvelopeQuantity gamma;
  bool all_pass() const { return theta.pass && output.pass && g_hat.pass && gamma.pass; }
};

/// Calibrates each residual constant from the final `tail_fraction` of the
/// sampled run (steady-state ripple), then checks dominance at every sample.
EnvelopeCheck check_envelopes(const Scenario& scenario, const Trajectory& trajectory,
                              double tail_fraction = 0.2);

struct AveragingGap {
  double theta_hat = 0.0;
  double g_hat = 0.0;
  double gamma = 0.0;
};

/// Sup-norm gaps between a full and an averaged trajectory. Each averaged
/// sample is compared with the nearest earlier full sample. Throws
/// std::invalid_argument when the time ranges do not overlap.
AveragingGap averaging_gap(const Trajectory& full, const Trajectory& averaged);

}  // namespace etnes
