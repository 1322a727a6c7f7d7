#pragma once

#include <functional>

#include "qid/channel.hpp"
#include "qid/gf.hpp"

namespace qid {

// ---------------------------------------------------------------------
// Classical identification codes: indexed (signal state, test operator)
// pairs. A test answers "was message i sent?"; first-kind errors are
// misses on i = j, second-kind errors false accepts on i != j.
// ---------------------------------------------------------------------

struct ClassicalIdEntry {
  DensityOperator state;
  Matrix test;  // 0 <= D <= 1 within tolerance
};

class ClassicalIdCode {
 public:
  ClassicalIdCode(int channel_dim_in, std::vector<ClassicalIdEntry> entries);

  int channel_dim_in() const { return channel_dim_in_; }
  const std::vector<ClassicalIdEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

 private:
  int channel_dim_in_;
  std::vector<ClassicalIdEntry> entries_;
};

struct IdVerificationReport {
  double lambda1 = 0.0;  // max_i  1 - tr(N(rho_i) D_i)
  double lambda2 = 0.0;  // max_{i != j} tr(N(rho_i) D_j); 0 for one message
  long pair_count = 0;   // ordered pairs checked for the second kind
};

// Exact (no sampling), deterministic verification over all messages and
// all ordered pairs.
IdVerificationReport verify_classical_id(const ClassicalIdCode& code,
                                         const QuantumChannel& channel);

// Common measurement from which every test must arise as a partial sum
// over its (pairwise disjoint) index set.
struct SimultaneityWitness {
  Povm povm;
  std::vector<std::vector<int>> partition;  // one index set per message
};

struct SimultaneityReport {
  bool ok = false;
  bool disjoint = false;
  double residual = 0.0;  // max |D_i - sum_{t in set_i} E_t|
};

SimultaneityReport verify_simultaneity(const ClassicalIdCode& code,
                                       const SimultaneityWitness& witness);

// Test-set-based rate bookkeeping: r bits of common randomness raise an
// identification rate by r. Arithmetic only; no construction.
inline double augmented_rate(double base_rate, double randomness_bits) {
  return base_rate + randomness_bits;
}

// ---------------------------------------------------------------------
// Fingerprinting: pairwise almost orthogonal pure states.
// ---------------------------------------------------------------------

// Deterministic candidate stream: computational basis vectors first, then
// seeded random unit vectors; a candidate is kept when its overlap with
// every accepted state stays within max_overlap. Throws InfeasibleError
// when the draw budget runs out.
std::vector<PureState> fingerprint_generate(int dim, int count,
                                            double max_overlap,
                                            std::uint64_t seed,
                                            long draw_budget = 200000);

// Greedy achievable count under a fixed draw budget (for growth scans).
int fingerprint_achievable_count(int dim, double max_overlap,
                                 std::uint64_t seed, long draw_budget);

// Classical ID code with rho_i = D_i = |psi_i><psi_i|.
ClassicalIdCode fingerprint_code(const std::vector<PureState>& states);

// ---------------------------------------------------------------------
// Polynomial-evaluation codes over GF(q): messages are the q^k
// polynomials of degree < k; the signal is a uniform mixture over the
// graph points (x, p(x)) of the dim-q^2 classical alphabet and the test
// accepts exactly on that graph. Two distinct messages agree in at most
// k-1 points, so lambda2 <= (k-1)/q while lambda1 = 0.
// ---------------------------------------------------------------------

class RsIdCode {
 public:
  RsIdCode(std::uint32_t field_order, std::uint32_t degree_bound);

  std::uint32_t field_order() const { return q_; }
  std::uint32_t degree_bound() const { return k_; }
  const GaloisField& field() const { return field_; }
  std::uint64_t message_count() const { return message_count_; }

  // Value of message polynomial at x; message digits base q are the
  // coefficients, lowest degree first.
  std::uint32_t eval(std::uint64_t message, std::uint32_t x) const;
  // Output-alphabet indices x * q + p(x).
  std::vector<std::uint32_t> support(std::uint64_t message) const;

  double lambda2_bound() const;  // (k-1)/q

 private:
  std::uint32_t q_;
  std::uint32_t k_;
  GaloisField field_;
  std::uint64_t message_count_;
};

RsIdCode rs_id_code(std::uint32_t field_order, std::uint32_t degree_bound);

// The noiseless classical channel the code is built for.
QuantumChannel rs_channel(const RsIdCode& code);

// Dense entries; guarded against oversized message spaces.
ClassicalIdCode rs_materialize(const RsIdCode& code);

// Exact verification covering every ordered pair. Agreement counts of a
// pair depend only on the difference polynomial, so scanning the q^k - 1
// nonzero differences covers all pairs at O(q) work each.
IdVerificationReport rs_verify_exhaustive(const RsIdCode& code);

IdVerificationReport rs_verify_sampled(const RsIdCode& code, long pair_samples,
                                       std::uint64_t seed);

// Output-symbol measurement with the message supports as index sets.
// Satisfies the witness equations exactly; the disjointness requirement
// restricts its validity to codes with non-overlapping supports (k = 1).
SimultaneityWitness rs_simultaneity_witness(const RsIdCode& code);

// ---------------------------------------------------------------------
// Concatenation with a transmission block code.
// ---------------------------------------------------------------------

// Carries an ID code for a noiseless dim-M classical channel over a noisy
// channel: symbols are re-encoded by block_encoder and the tests pulled
// back through the decoder POVM.
ClassicalIdCode concatenate_with_transmission(
    const ClassicalIdCode& id_code,
    const std::vector<DensityOperator>& block_encoder,
    const Povm& block_decoder, const QuantumChannel& channel);

// max_s (1 - tr N(enc(s)) dec_s): worst-case block decoding error.
double block_error(const std::vector<DensityOperator>& block_encoder,
                   const Povm& block_decoder, const QuantumChannel& channel);

// ---------------------------------------------------------------------
// Quantum identification codes.
// ---------------------------------------------------------------------

// Encoder plus a rank-one-test assignment phi -> D_phi. Blind codes carry
// their encoder as a channel; visible codes may use any procedure.
struct QuantumIdCode {
  int code_dim = 0;
  std::optional<QuantumChannel> blind_encoder;
  std::function<DensityOperator(const PureState&)> encode;
  std::function<Matrix(const PureState&)> decoder_test;
};

// Identity encoder with D_phi the projector onto phi.
QuantumIdCode projector_code(int dim);
// Identity encoder with the projector test padded by zeros into a larger
// output space (the naive test for channels such as erasure).
QuantumIdCode embedded_projector_code(int dim, int out_dim);
// Blind code: isometric encoder (dim_out x code_dim) with tests obtained
// by pushing the encoded state through the channel.
QuantumIdCode pushforward_code(const Matrix& isometry,
                               const QuantumChannel& channel);

struct QuantumIdReport {
  double epsilon = 0.0;  // max |tr(psi phi) - tr(N(E(psi)) D_phi)|
  int test_set_size = 0;
};

// Deviation over a structured test set: all ordered basis pairs of K,
// random diagonal pairs, and `trials` random independent pairs.
QuantumIdReport verify_quantum_id(const QuantumIdCode& code,
                                  const QuantumChannel& channel, int trials,
                                  std::uint64_t seed);

struct FingerprintConcatenation {
  ClassicalIdCode code;
  IdVerificationReport verification;
  double quantum_epsilon = 0.0;  // max deviation over the fingerprint pairs
  double max_overlap = 0.0;
};

// Classical code from a quantum ID code and a fingerprint set in K.
FingerprintConcatenation fingerprint_to_classical(const QuantumIdCode& qcode,
                                                  const QuantumChannel& channel,
                                                  int count, double max_overlap,
                                                  std::uint64_t seed);

}  // namespace qid
