#include "qid/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace qid {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// Fix the phase so the first significant component is real positive.
void canonicalize_phase(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-12) {
      v *= std::conj(v[i]) / mag;
      return;
    }
  }
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

EighResult eigh_descending(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  const Eigen::Index n = herm.rows();
  Matrix vecs = es.eigenvectors();
  Eigen::VectorXd vals = es.eigenvalues();

  for (Eigen::Index c = 0; c < n; ++c) canonicalize_phase(vecs.col(c));

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return vals[a] > vals[b]; });

  // Within near-degenerate runs, order eigenvectors lexicographically so
  // the decomposition does not depend on solver internals.
  constexpr double tie_tol = 1e-10;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && vals[order[start]] - vals[order[stop]] <= tie_tol) ++stop;
    std::sort(order.begin() + start, order.begin() + stop,
              [&](Eigen::Index a, Eigen::Index b) {
                return lex_less(vecs.col(a), vecs.col(b));
              });
    start = stop;
  }

  EighResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = vals[order[i]];
    out.vectors.col(i) = vecs.col(order[i]);
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double trace_norm_hermitian(const Matrix& herm) {
  return hermitian_eigenvalues(herm).cwiseAbs().sum();
}

}  // namespace qid
