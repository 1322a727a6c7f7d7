#include "qid/state.hpp"

#include <cmath>

namespace qid {

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw std::invalid_argument("density operator: matrix must be square");
  if (!m_.allFinite())
    throw std::invalid_argument("density operator: entries must be finite");
  if (!is_hermitian(m_, kHermTol))
    throw std::invalid_argument("density operator: not Hermitian within tolerance");
  const Complex tr = m_.trace();
  if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol)
    throw std::invalid_argument("density operator: trace must be 1");
  if (hermitian_eigenvalues(m_).minCoeff() < -kPsdTol)
    throw std::invalid_argument("density operator: negative eigenvalue");
}

PureState::PureState(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0)
    throw std::invalid_argument("pure state: empty amplitude vector");
  if (!v_.allFinite())
    throw std::invalid_argument("pure state: amplitudes must be finite");
  if (std::abs(v_.squaredNorm() - 1.0) > kTraceTol)
    throw std::invalid_argument("pure state: amplitudes must have unit norm");
}

Matrix partial_trace_matrix(const Matrix& joint, Subsystem keep, int dim_a,
                            int dim_b) {
  if (joint.rows() != joint.cols() ||
      joint.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("partial trace: dimension mismatch");
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int b = 0; b < dim_b; ++b)
          out(i, j) += joint(i * dim_b + b, j * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int a = 0; a < dim_a; ++a)
        out(i, j) += joint(a * dim_b + i, a * dim_b + j);
  return out;
}

DensityOperator partial_trace(const DensityOperator& joint, Subsystem keep,
                              int dim_a, int dim_b) {
  return DensityOperator(
      partial_trace_matrix(joint.matrix(), keep, dim_a, dim_b));
}

double trace_distance(const DensityOperator& rho,
                      const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("trace distance: dimension mismatch");
  const double d = 0.5 * trace_norm_hermitian(rho.matrix() - sigma.matrix());
  return std::clamp(d, 0.0, 1.0);
}

PureState purify(const DensityOperator& rho) {
  const int d = rho.dim();
  const EighResult eig = eigh_descending(rho.matrix());
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    const double lam = eig.values[i];
    if (lam <= 0.0) continue;
    const double s = std::sqrt(lam);
    for (int a = 0; a < d; ++a) amp[a * d + i] += s * eig.vectors(a, i);
  }
  amp /= amp.norm();
  return PureState(std::move(amp));
}

DensityOperator maximally_mixed(int dim) {
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

PureState basis_state(int dim, int index) {
  if (index < 0 || index >= dim)
    throw std::invalid_argument("basis state: index out of range");
  Vector v = Vector::Zero(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

PureState maximally_entangled(int local_dim) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(local_dim) * local_dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(local_dim));
  for (int i = 0; i < local_dim; ++i) v[i * local_dim + i] = amp;
  return PureState(std::move(v));
}

PureState random_pure(int dim, RandomStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.normal(), rng.normal());
  const double n = v.norm();
  if (n < 1e-12) return basis_state(dim, 0);
  v /= n;
  return PureState(std::move(v));
}

Matrix random_hermitian(int dim, RandomStream& rng) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  return 0.5 * (g + g.adjoint());
}

DensityOperator random_density(int dim, RandomStream& rng) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  Matrix h = g * g.adjoint();
  h /= h.trace().real();
  // Exact Hermitian symmetrization guards the constructor checks.
  h = 0.5 * (h + h.adjoint());
  return DensityOperator(std::move(h));
}

}  // namespace qid
