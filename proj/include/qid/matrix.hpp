#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qid {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Construction tolerances shared by the state/channel types.
inline constexpr double kHermTol = 1e-8;
inline constexpr double kPsdTol = 1e-8;
inline constexpr double kTraceTol = 1e-8;

inline Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kHermTol);

// Hermitian eigendecomposition with eigenvalues sorted descending.
// Eigenvectors carry a fixed phase (first significant component real
// positive) and degenerate clusters are ordered lexicographically, so the
// decomposition is reproducible run to run.
struct EighResult {
  Eigen::VectorXd values;
  Matrix vectors;  // columns
};
EighResult eigh_descending(const Matrix& herm);

// Eigenvalues only (ascending, Eigen's native order).
Eigen::VectorXd hermitian_eigenvalues(const Matrix& herm);

// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm_hermitian(const Matrix& herm);

}  // namespace qid
