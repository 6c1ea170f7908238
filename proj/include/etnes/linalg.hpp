#pragma once

#include <Eigen/Dense>

namespace etnes {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Eigen-decomposition of a real symmetric matrix. Values ascend; column k of
/// `vectors` belongs to `values[k]`.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations. Intended for the small matrices used here (n up
/// to ~10); the input is symmetrized before iterating.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-15,
                            int max_sweeps = 100);

Vector symmetric_eigenvalues(const Matrix& a);

bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);

/// Induced 2-norm, sqrt(lambda_max(A^T A)).
double spectral_norm(const Matrix& a);

/// Largest real part over the (possibly complex) spectrum of a square matrix.
double spectral_abscissa(const Matrix& a);

inline bool is_hurwitz(const Matrix& a) { return spectral_abscissa(a) < 0.0; }

}  // namespace etnes
