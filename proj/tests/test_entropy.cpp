#include <doctest.h>

#include <cmath>

#include "qid/entropy.hpp"

using namespace qid;

namespace {

// Independent binary-entropy oracle in bits.
double h2(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

DensityOperator diag_state(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return DensityOperator(std::move(m));
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("von Neumann entropy reference values") {
  CHECK(von_neumann_entropy(maximally_mixed(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  RandomStream rng(3);
  CHECK(von_neumann_entropy(random_pure(5, rng).projector_state()) ==
        doctest::Approx(0.0).epsilon(1e-9));
  // Direct binary-entropy evaluation: h(1/4) = 0.811278...
  CHECK(von_neumann_entropy(diag_state({0.75, 0.25})) ==
        doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(von_neumann_entropy(diag_state({0.75, 0.25})) ==
        doctest::Approx(h2(0.25)).epsilon(1e-12));
}

TEST_CASE("binary relative entropy in nats") {
  CHECK(binary_relative_entropy(0.5, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(binary_relative_entropy(1.0, 0.5) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // Literal formula evaluation as the oracle.
  const double oracle = 0.75 * std::log(0.75 / 0.5) + 0.25 * std::log(0.25 / 0.5);
  CHECK(binary_relative_entropy(0.75, 0.5) ==
        doctest::Approx(0.130812).epsilon(1e-5));
  CHECK(binary_relative_entropy(0.75, 0.5) ==
        doctest::Approx(oracle).epsilon(1e-14));
  CHECK(binary_relative_entropy(0.0, 0.25) ==
        doctest::Approx(std::log(1.0 / 0.75)).epsilon(1e-12));

  CHECK_THROWS_AS(binary_relative_entropy(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(binary_relative_entropy(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(binary_relative_entropy(1.2, 0.5), std::invalid_argument);
}

TEST_CASE("channel information on the identity is maximal") {
  const InfoReport r = channel_information(identity_channel(2), maximally_mixed(2));
  CHECK(r.mutual == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.coherent == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.entropy_ab == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("channel information through the erasure channel at q=1/4") {
  const InfoReport r =
      channel_information(erasure_channel(0.25), maximally_mixed(2));
  CHECK(r.mutual == doctest::Approx(1.5).epsilon(1e-9));    // 2 - 2q
  CHECK(r.coherent == doctest::Approx(0.5).epsilon(1e-9));  // 1 - 2q
  // Entropy bookkeeping oracle: S(B) = 1 - q + h(q), S(AB) = q + h(q).
  CHECK(r.entropy_b == doctest::Approx(0.75 + h2(0.25)).epsilon(1e-9));
  CHECK(r.entropy_ab == doctest::Approx(0.25 + h2(0.25)).epsilon(1e-9));
}

TEST_CASE("channel information through dephasing is classical") {
  const InfoReport r =
      channel_information(dephasing_channel(2), maximally_mixed(2));
  CHECK(r.mutual == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.coherent == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("info report identities hold by construction") {
  RandomStream rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const DensityOperator rho = random_density(2, rng);
    const InfoReport r = channel_information(depolarizing_channel(0.2), rho);
    CHECK(r.mutual ==
          doctest::Approx(r.entropy_a + r.entropy_b - r.entropy_ab).epsilon(1e-9));
    CHECK(r.coherent == doctest::Approx(r.entropy_b - r.entropy_ab).epsilon(1e-9));
  }
}

TEST_CASE("coherent information of the identity equals the input entropy") {
  for (int rep = 0; rep < 25; ++rep) {
    RandomStream rng(900 + rep);
    const int dim = 2 + static_cast<int>(rng.below(3));
    const DensityOperator rho = random_density(dim, rng);
    const InfoReport r = channel_information(identity_channel(dim), rho);
    CHECK(r.coherent == doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-9));
  }
}

TEST_CASE("holevo quantity reference values") {
  RandomStream rng(23);
  const DensityOperator rho = random_density(2, rng);
  CHECK(holevo_quantity(identity_channel(2), {{1.0, rho}}) ==
        doctest::Approx(0.0).epsilon(1e-9));

  const Ensemble basis{{0.5, basis_state(2, 0).projector_state()},
                       {0.5, basis_state(2, 1).projector_state()}};
  CHECK(holevo_quantity(identity_channel(2), basis) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // S((1-q) tau (+) q flag) - h(q) = 1 - q at q = 1/4.
  CHECK(holevo_quantity(erasure_channel(0.25), basis) ==
        doctest::Approx(0.75).epsilon(1e-9));

  CHECK_THROWS_AS(holevo_quantity(identity_channel(2),
                                  {{0.5, basis_state(2, 0).projector_state()}}),
                  std::invalid_argument);
}

TEST_CASE("entropy concavity spot-check") {
  for (int rep = 0; rep < 100; ++rep) {
    RandomStream rng(3000 + rep);
    const int dim = 2 + static_cast<int>(rng.below(3));
    const DensityOperator a = random_density(dim, rng);
    const DensityOperator b = random_density(dim, rng);
    const DensityOperator mix =
        DensityOperator(0.5 * a.matrix() + 0.5 * b.matrix());
    CHECK(von_neumann_entropy(mix) >=
          0.5 * von_neumann_entropy(a) + 0.5 * von_neumann_entropy(b) - 1e-9);
  }
}

TEST_CASE("holevo bounded by the entropy of the average output") {
  for (int rep = 0; rep < 30; ++rep) {
    RandomStream rng(4000 + rep);
    Ensemble ens;
    Matrix avg_out = Matrix::Zero(3, 3);
    const QuantumChannel ch = erasure_channel(0.3);
    double left = 1.0;
    for (int s = 0; s < 3; ++s) {
      const double p = (s == 2) ? left : left * rng.uniform();
      left -= (s == 2) ? 0.0 : p;
      ens.push_back({p, random_density(2, rng)});
    }
    double total = 0.0;
    for (auto& e : ens) total += e.probability;
    for (auto& e : ens) e.probability /= total;
    for (const auto& e : ens)
      avg_out += e.probability * ch.apply_matrix(e.state.matrix());
    CHECK(holevo_quantity(ch, ens) <= entropy_bits(avg_out) + 1e-9);
  }
}

}  // TEST_SUITE
