#pragma once

#include <stdexcept>

#include "qid/matrix.hpp"
#include "qid/rng.hpp"

namespace qid {

// Thrown when a randomized construction runs out of retry budget
// (parameters too aggressive rather than a caller bug).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Positive unit-trace operator. The constructor enforces Hermiticity,
// positivity and unit trace within the shared tolerances.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Unit vector; squared amplitudes sum to one within tolerance.
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vector& amplitudes() const { return v_; }
  Matrix projector() const { return v_ * v_.adjoint(); }
  DensityOperator projector_state() const {
    return DensityOperator(projector());
  }

 private:
  Vector v_;
};

enum class Subsystem { A, B };

// Partial trace of a state on A (x) B; index convention a * dim_b + b.
Matrix partial_trace_matrix(const Matrix& joint, Subsystem keep, int dim_a,
                            int dim_b);
DensityOperator partial_trace(const DensityOperator& joint, Subsystem keep,
                              int dim_a, int dim_b);

// Half trace norm of the difference, computed from the eigenvalues of
// rho - sigma. Result lies in [0, 1].
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Purification on A (x) A', with |A'| = |A|. Built from the spectral
// decomposition ordered by descending eigenvalue (ties broken by
// lexicographic order of the phase-fixed eigenvectors).
PureState purify(const DensityOperator& rho);

DensityOperator maximally_mixed(int dim);
PureState basis_state(int dim, int index);
PureState maximally_entangled(int local_dim);

PureState random_pure(int dim, RandomStream& rng);
DensityOperator random_density(int dim, RandomStream& rng);
Matrix random_hermitian(int dim, RandomStream& rng);

}  // namespace qid
