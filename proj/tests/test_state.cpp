#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qid/state.hpp"

using namespace qid;

namespace {
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_SUITE("state") {

TEST_CASE("density operator constructor enforces invariants") {
  CHECK_NOTHROW(DensityOperator(diag2(0.5, 0.5)));
  CHECK_THROWS_AS(DensityOperator(diag2(0.6, 0.6)), std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator(diag2(1.5, -0.5)), std::invalid_argument);
  Matrix nonherm = diag2(0.5, 0.5);
  nonherm(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS(DensityOperator(nonherm), std::invalid_argument);
  Matrix rect(2, 3);
  CHECK_THROWS_AS(DensityOperator(rect), std::invalid_argument);
}

TEST_CASE("pure state constructor enforces unit norm") {
  Vector v(2);
  v << 1.0, 0.0;
  CHECK_NOTHROW(PureState(v));
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState(v), std::invalid_argument);
}

TEST_CASE("partial trace of the maximally entangled pair is maximally mixed") {
  const DensityOperator phi = maximally_entangled(2).projector_state();
  const DensityOperator reduced = partial_trace(phi, Subsystem::A, 2, 2);
  CHECK((reduced.matrix() - maximally_mixed(2).matrix()).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("partial trace of a product state returns the kept factor") {
  RandomStream rng(7);
  const DensityOperator rho = random_density(2, rng);
  const DensityOperator sigma = random_density(3, rng);
  const DensityOperator joint =
      DensityOperator(kron(rho.matrix(), sigma.matrix()));
  const DensityOperator kept = partial_trace(joint, Subsystem::A, 2, 3);
  CHECK((kept.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("partial trace of a classical mixture, hand-computed 4x4 oracle") {
  // (3/4)|00><00| + (1/4)|11><11| assembled entry by entry.
  Matrix joint = Matrix::Zero(4, 4);
  joint(0, 0) = 0.75;  // |00>
  joint(3, 3) = 0.25;  // |11>
  const DensityOperator reduced =
      partial_trace(DensityOperator(joint), Subsystem::B, 2, 2);
  CHECK(reduced.matrix()(0, 0).real() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(reduced.matrix()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(reduced.matrix()(0, 1)) <= 1e-12);
}

TEST_CASE("partial trace rejects dimension mismatch") {
  const DensityOperator rho = maximally_mixed(4);
  CHECK_THROWS_AS(partial_trace(rho, Subsystem::A, 3, 2), std::invalid_argument);
}

TEST_CASE("trace distance basics") {
  RandomStream rng(11);
  const DensityOperator rho = random_density(3, rng);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  const DensityOperator e0 = basis_state(2, 0).projector_state();
  const DensityOperator e1 = basis_state(2, 1).projector_state();
  CHECK(trace_distance(e0, e1) == doctest::Approx(1.0).epsilon(1e-12));

  // diag(3/4, 1/4) vs maximally mixed: difference has eigenvalues +-1/4.
  const DensityOperator skew = DensityOperator(diag2(0.75, 0.25));
  CHECK(trace_distance(skew, maximally_mixed(2)) ==
        doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(trace_distance(rho, e0), std::invalid_argument);
}

TEST_CASE("purify maximally mixed gives a maximally entangled state") {
  const PureState phi = purify(maximally_mixed(2));
  const DensityOperator reduced =
      partial_trace(phi.projector_state(), Subsystem::A, 2, 2);
  CHECK((reduced.matrix() - maximally_mixed(2).matrix()).cwiseAbs().maxCoeff() <=
        1e-9);
  // Both marginals maximally mixed means maximal entanglement.
  const DensityOperator other =
      partial_trace(phi.projector_state(), Subsystem::B, 2, 2);
  CHECK((other.matrix() - maximally_mixed(2).matrix()).cwiseAbs().maxCoeff() <=
        1e-9);
}

TEST_CASE("purify a pure state appends |0>") {
  RandomStream rng(3);
  const PureState psi = random_pure(3, rng);
  const PureState phi = purify(psi.projector_state());
  Vector expected = Vector::Zero(9);
  for (int a = 0; a < 3; ++a) expected[a * 3 + 0] = psi.amplitudes()[a];
  // Equal up to a global phase fixed by the canonical eigenvector phase.
  const double overlap = std::abs(expected.dot(phi.amplitudes()));
  CHECK(overlap == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("purify diag(3/4,1/4) spectrally") {
  const PureState phi = purify(DensityOperator(diag2(0.75, 0.25)));
  Vector expected = Vector::Zero(4);
  expected[0] = std::sqrt(0.75);  // |0>|0>
  expected[3] = std::sqrt(0.25);  // |1>|1>
  CHECK((phi.amplitudes() - expected).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("purification round-trip on random states, dims 2..8") {
  int cases = 0;
  for (int dim = 2; dim <= 8; ++dim) {
    for (int rep = 0; rep < 15 && cases < 100; ++rep, ++cases) {
      RandomStream rng(1000 + cases);
      const DensityOperator rho = random_density(dim, rng);
      const PureState phi = purify(rho);
      const Matrix reduced = partial_trace_matrix(
          phi.projector(), Subsystem::A, dim, dim);
      CHECK((reduced - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("trace distance triangle inequality on random triples") {
  for (int rep = 0; rep < 100; ++rep) {
    RandomStream rng(2000 + rep);
    const int dim = 2 + static_cast<int>(rng.below(4));
    const DensityOperator a = random_density(dim, rng);
    const DensityOperator b = random_density(dim, rng);
    const DensityOperator c = random_density(dim, rng);
    CHECK(trace_distance(a, c) <=
          trace_distance(a, b) + trace_distance(b, c) + 1e-9);
  }
}

TEST_CASE("hermitian eigendecomposition reconstructs up to dim 64") {
  for (int dim : {2, 8, 64}) {
    RandomStream rng(42 + dim);
    const Matrix h = random_hermitian(dim, rng);
    const EighResult eig = eigh_descending(h);
    const Matrix rebuilt = eig.vectors * eig.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                           eig.vectors.adjoint();
    CHECK((rebuilt - h).norm() <= 1e-9 * std::max(1.0, h.norm()));
    // Descending order.
    for (int i = 1; i < dim; ++i) CHECK(eig.values[i - 1] >= eig.values[i] - 1e-12);
  }
}

}  // TEST_SUITE
