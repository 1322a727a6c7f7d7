#include <doctest.h>

#include <cmath>
#include <cstring>

#include "qid/idcode.hpp"

using namespace qid;

namespace {

ClassicalIdCode two_orthogonal_code() {
  std::vector<ClassicalIdEntry> entries;
  entries.push_back(
      {basis_state(2, 0).projector_state(), basis_state(2, 0).projector()});
  entries.push_back(
      {basis_state(2, 1).projector_state(), basis_state(2, 1).projector()});
  return ClassicalIdCode(2, std::move(entries));
}

// Transmission block pieces: computational-basis encoding and measurement
// on a dim-m space.
std::vector<DensityOperator> basis_encoder(int m) {
  std::vector<DensityOperator> enc;
  for (int s = 0; s < m; ++s) enc.push_back(basis_state(m, s).projector_state());
  return enc;
}

Povm basis_decoder(int m) {
  std::vector<Matrix> elements;
  for (int s = 0; s < m; ++s) elements.push_back(basis_state(m, s).projector());
  return Povm(std::move(elements));
}

}  // namespace

TEST_SUITE("idcode") {

TEST_CASE("galois field arithmetic over all supported orders") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 13u, 16u, 25u, 27u, 32u,
                          49u, 61u, 64u}) {
    const GaloisField gf(q);
    // Multiplicative group sanity via the log tables.
    for (std::uint32_t a = 1; a < q; ++a) {
      CHECK(gf.antilog(gf.log(a)) == a);
      CHECK(gf.mul(a, 1) == a);
    }
    // Spot-check field axioms on a deterministic sample.
    for (std::uint32_t a = 0; a < q; a += 3)
      for (std::uint32_t b = 1; b < q; b += 5) {
        CHECK(gf.mul(a, b) == gf.mul(b, a));
        CHECK(gf.add(a, b) == gf.add(b, a));
        CHECK(gf.sub(gf.add(a, b), b) == a);
        const std::uint32_t c = (a + 2 * b) % q;
        CHECK(gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c)));
      }
  }
  CHECK_THROWS_AS(GaloisField(6), std::invalid_argument);
  CHECK_THROWS_AS(GaloisField(65), std::invalid_argument);
}

TEST_CASE("verify_classical_id on two orthogonal signals") {
  const IdVerificationReport r =
      verify_classical_id(two_orthogonal_code(), identity_channel(2));
  CHECK(r.lambda1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.lambda2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.pair_count == 2);
}

TEST_CASE("verify_classical_id is exact and reproducible") {
  const std::vector<PureState> prints = fingerprint_generate(8, 12, 0.6, 5);
  const ClassicalIdCode code = fingerprint_code(prints);
  const IdVerificationReport a = verify_classical_id(code, identity_channel(8));
  const IdVerificationReport b = verify_classical_id(code, identity_channel(8));
  CHECK(std::memcmp(&a.lambda1, &b.lambda1, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.lambda2, &b.lambda2, sizeof(double)) == 0);

  // Fingerprint code: lambda1 = 0 and lambda2 bounded by the squared
  // overlap, checked exhaustively.
  CHECK(a.lambda1 <= 1e-9);
  double max_sq_overlap = 0.0;
  for (std::size_t i = 0; i < prints.size(); ++i)
    for (std::size_t j = 0; j < prints.size(); ++j) {
      if (i == j) continue;
      max_sq_overlap = std::max(
          max_sq_overlap,
          std::norm(prints[i].amplitudes().dot(prints[j].amplitudes())));
    }
  CHECK(a.lambda2 == doctest::Approx(max_sq_overlap).epsilon(1e-9));
  CHECK(a.lambda2 <= 0.36 + 1e-9);
}

TEST_CASE("simultaneity witness for orthogonal projector tests") {
  const SimultaneityWitness witness{
      Povm({basis_state(2, 0).projector(), basis_state(2, 1).projector()}),
      {{0}, {1}}};
  const SimultaneityReport r =
      verify_simultaneity(two_orthogonal_code(), witness);
  CHECK(r.ok);
  CHECK(r.residual <= 1e-12);

  // Overlapping index sets violate the disjointness invariant.
  const SimultaneityWitness overlapping{
      Povm({basis_state(2, 0).projector(), basis_state(2, 1).projector()}),
      {{0, 1}, {1}}};
  const SimultaneityReport bad =
      verify_simultaneity(two_orthogonal_code(), overlapping);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.disjoint);
}

TEST_CASE("rs code with k=1 has disjoint supports and a valid witness") {
  const RsIdCode code = rs_id_code(8, 1);
  CHECK(code.message_count() == 8);
  const IdVerificationReport r = rs_verify_exhaustive(code);
  CHECK(r.lambda1 == 0.0);
  CHECK(r.lambda2 == 0.0);  // distinct constants never agree

  const ClassicalIdCode dense = rs_materialize(code);
  const SimultaneityWitness witness = rs_simultaneity_witness(code);
  const SimultaneityReport sim = verify_simultaneity(dense, witness);
  CHECK(sim.ok);
  CHECK(sim.residual <= 1e-12);
}

TEST_CASE("rs(8,2): 64 messages, lambda2 = 1/8 exactly, both paths") {
  const RsIdCode code = rs_id_code(8, 2);
  CHECK(code.message_count() == 64);

  const IdVerificationReport combinatorial = rs_verify_exhaustive(code);
  CHECK(combinatorial.lambda1 == 0.0);
  CHECK(combinatorial.lambda2 == 0.125);
  CHECK(combinatorial.pair_count == 64 * 63);

  // Dense-matrix route through the generic verifier agrees exactly.
  const ClassicalIdCode dense = rs_materialize(code);
  const IdVerificationReport matrix_path =
      verify_classical_id(dense, rs_channel(code));
  CHECK(matrix_path.lambda1 <= 1e-12);
  CHECK(matrix_path.lambda2 == doctest::Approx(0.125).epsilon(1e-12));

  // Overlapping supports rule out any disjoint coarse-graining witness:
  // sum_i D_i reaches q^(k-1) = 8 on the diagonal.
  Matrix total = Matrix::Zero(64, 64);
  for (const ClassicalIdEntry& e : dense.entries()) total += e.test;
  CHECK(total.diagonal().real().maxCoeff() == doctest::Approx(8.0));
  const SimultaneityReport sim =
      verify_simultaneity(dense, rs_simultaneity_witness(code));
  CHECK_FALSE(sim.disjoint);
  CHECK_FALSE(sim.ok);
}

TEST_CASE("rs(16,4): sampled second-kind error within the algebraic bound") {
  const RsIdCode code = rs_id_code(16, 4);
  CHECK(code.message_count() == 65536);
  CHECK(code.lambda2_bound() == doctest::Approx(3.0 / 16.0));

  const IdVerificationReport sampled = rs_verify_sampled(code, 10000, 1);
  CHECK(sampled.lambda1 == 0.0);
  CHECK(sampled.lambda2 <= 3.0 / 16.0 + 1e-12);

  // Exhaustive difference scan attains the bound exactly.
  const IdVerificationReport exact = rs_verify_exhaustive(code);
  CHECK(exact.lambda2 == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("rs algebraic guarantee lambda2 * q <= k - 1, exhaustively") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    for (std::uint32_t k = 1; k <= std::min<std::uint32_t>(4, q); ++k) {
      const RsIdCode code = rs_id_code(q, k);
      const IdVerificationReport r = rs_verify_exhaustive(code);
      CHECK(r.lambda2 * q <= static_cast<double>(k - 1) + 1e-12);
    }
  }
}

TEST_CASE("fingerprints: orthogonal head of the candidate stream") {
  const std::vector<PureState> basis_prints = fingerprint_generate(2, 2, 1e-8, 1);
  CHECK((basis_prints[0].amplitudes() - basis_state(2, 0).amplitudes()).norm() <=
        1e-12);
  CHECK((basis_prints[1].amplitudes() - basis_state(2, 1).amplitudes()).norm() <=
        1e-12);
}

TEST_CASE("fingerprints: 64 states in dimension 16 at overlap 0.9") {
  const std::vector<PureState> prints = fingerprint_generate(16, 64, 0.9, 1);
  CHECK(prints.size() == 64);
  for (std::size_t i = 0; i < prints.size(); ++i)
    for (std::size_t j = i + 1; j < prints.size(); ++j)
      CHECK(std::abs(prints[i].amplitudes().dot(prints[j].amplitudes())) <=
            0.9 + 1e-12);
}

TEST_CASE("fingerprints: achievable count grows with dimension at eps 0.8") {
  int previous = 0;
  for (int dim : {2, 4, 8, 16}) {
    const int count = fingerprint_achievable_count(dim, 0.8, 7, 4000);
    CHECK(count > previous);
    previous = count;
  }
}

TEST_CASE("fingerprints: infeasible request exhausts the budget") {
  CHECK_THROWS_AS(fingerprint_generate(2, 50, 0.05, 3, 2000), InfeasibleError);
}

TEST_CASE("concatenation with an identity transmission block keeps the report") {
  const RsIdCode rs = rs_id_code(4, 2);
  const ClassicalIdCode inner = rs_materialize(rs);
  const IdVerificationReport before = verify_classical_id(inner, rs_channel(rs));

  const int m = 16;
  const ClassicalIdCode outer = concatenate_with_transmission(
      inner, basis_encoder(m), basis_decoder(m), identity_channel(m));
  const IdVerificationReport after =
      verify_classical_id(outer, identity_channel(m));
  CHECK(after.lambda1 == doctest::Approx(before.lambda1).epsilon(1e-12));
  CHECK(after.lambda2 == doctest::Approx(before.lambda2).epsilon(1e-12));
}

TEST_CASE("rs(8,2) carried over six noiseless or dephasing qubits") {
  const RsIdCode rs = rs_id_code(8, 2);
  const ClassicalIdCode inner = rs_materialize(rs);
  const int m = 64;

  const QuantumChannel ideal =
      combine(std::vector<QuantumChannel>(6, identity_channel(2)),
              CombineMode::Tensor);
  const ClassicalIdCode over_ideal = concatenate_with_transmission(
      inner, basis_encoder(m), basis_decoder(m), ideal);
  CHECK(verify_classical_id(over_ideal, ideal).lambda2 ==
        doctest::Approx(0.125).epsilon(1e-9));

  // Dephasing fixes the computational basis, so nothing changes.
  const QuantumChannel noisy =
      combine(std::vector<QuantumChannel>(6, dephasing_channel(2)),
              CombineMode::Tensor);
  const ClassicalIdCode over_noisy = concatenate_with_transmission(
      inner, basis_encoder(m), basis_decoder(m), noisy);
  CHECK(verify_classical_id(over_noisy, noisy).lambda2 ==
        doctest::Approx(0.125).epsilon(1e-9));
  CHECK(block_error(basis_encoder(m), basis_decoder(m), noisy) <= 1e-12);
}

TEST_CASE("concatenation error bounds against the block error") {
  // Noisy transmission: depolarizing on each of two qubits.
  const RsIdCode rs = rs_id_code(4, 2);
  const ClassicalIdCode inner = rs_materialize(rs);
  const IdVerificationReport before = verify_classical_id(inner, rs_channel(rs));
  const int m = 16;
  const QuantumChannel noisy =
      combine({depolarizing_channel(0.05), depolarizing_channel(0.05)},
              CombineMode::Tensor);
  const double p_err = block_error(basis_encoder(m), basis_decoder(m), noisy);
  const ClassicalIdCode outer = concatenate_with_transmission(
      inner, basis_encoder(m), basis_decoder(m), noisy);
  const IdVerificationReport after = verify_classical_id(outer, noisy);
  CHECK(after.lambda1 <= before.lambda1 + p_err + 1e-9);
  CHECK(after.lambda2 <= before.lambda2 + p_err + 1e-9);
}

TEST_CASE("rate bookkeeping for common-randomness augmentation") {
  CHECK(augmented_rate(0.7, 2.0) == doctest::Approx(2.7));
  CHECK(augmented_rate(0.0, 0.0) == 0.0);
}

TEST_CASE("verify_quantum_id on the identity with projector tests") {
  const QuantumIdReport r =
      verify_quantum_id(projector_code(4), identity_channel(4), 100, 3);
  CHECK(r.epsilon <= 1e-9);
  CHECK(r.test_set_size == 16 + 200);
}

TEST_CASE("verify_quantum_id detects halved tests on the diagonal") {
  QuantumIdCode code = projector_code(2);
  code.decoder_test = [](const PureState& phi) {
    return Matrix(0.5 * phi.projector());
  };
  const QuantumIdReport r =
      verify_quantum_id(code, identity_channel(2), 50, 3);
  CHECK(r.epsilon >= 0.5 - 1e-9);
}

TEST_CASE("verify_quantum_id on the depolarizing channel with naive tests") {
  const QuantumIdReport r = verify_quantum_id(projector_code(2),
                                              depolarizing_channel(0.1), 100, 3);
  // Diagonal pairs deviate by exactly p/2.
  CHECK(r.epsilon == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("fingerprint concatenation of a perfect quantum code") {
  const FingerprintConcatenation fc = fingerprint_to_classical(
      projector_code(4), identity_channel(4), 16, 0.5, 11);
  CHECK(fc.code.size() == 16);
  CHECK(fc.quantum_epsilon <= 1e-9);
  CHECK(fc.verification.lambda1 <= fc.quantum_epsilon + 1e-9);
  CHECK(fc.verification.lambda2 <= 0.25 + 2.0 * fc.quantum_epsilon + 1e-9);
}

TEST_CASE("fingerprint concatenation of two orthogonal signals is perfect") {
  const FingerprintConcatenation fc = fingerprint_to_classical(
      projector_code(2), identity_channel(2), 2, 1e-8, 1);
  CHECK(fc.verification.lambda1 <= 1e-10);
  CHECK(fc.verification.lambda2 <= 1e-10);
}

TEST_CASE("fingerprint concatenation tracks the quantum deviation") {
  const FingerprintConcatenation fc = fingerprint_to_classical(
      projector_code(2), depolarizing_channel(0.1), 2, 0.3, 5);
  CHECK(fc.quantum_epsilon == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(fc.verification.lambda1 <= fc.quantum_epsilon + 1e-9);
  CHECK(fc.verification.lambda2 <=
        0.3 * 0.3 + 2.0 * fc.quantum_epsilon + 1e-9);
}

}  // TEST_SUITE
