#pragma once

#include "qid/idcode.hpp"

namespace qid {

// Numerical checks of the duality between quantum identification and the
// complementary channel forgetting which code state was sent.

// Margin added to exact theorem constants to absorb floating-point noise.
inline constexpr double kStatMargin = 1e-6;

struct DecouplingReport {
  double delta = 0.0;             // forgetfulness estimate
  double epsilon_bound = 0.0;     // theorem bound the check compares against
  double geometry_gap_max = 0.0;  // max ||phi-psi||_1 - ||N'(phi)-N'(psi)||_1
  double geometry_gap_min = 0.0;  // min of the same gap (monotonicity floor)
  double mu = 0.0;                // min nonzero complement eigenvalue seen
  double lambda = 0.0;            // max complement eigenvalue seen
  double eta = 0.0;               // 7 delta^{1/8} sqrt(lambda/mu)
  int test_set_size = 0;
};

struct ForgetfulnessResult {
  double delta = 0.0;
  int test_set_size = 0;
};

// Max over test pairs of (1/2)||N(phi) - N(psi)||_1 for pure states in the
// span of the given orthonormal code basis (columns of code_basis). Pass
// the complementary channel to probe what the environment learns.
ForgetfulnessResult forgetfulness(const QuantumChannel& channel,
                                  const Matrix& code_basis, int trials,
                                  std::uint64_t seed);

struct DualityCheck {
  DecouplingReport report;
  bool pass = false;
  double epsilon = 0.0;  // measured quantum-ID deviation
};

// epsilon from the code, delta from the complement of channel o encoder;
// passes when delta <= 7 epsilon^{1/4} + margin. Requires a blind code.
DualityCheck check_id_implies_forgetful(const QuantumIdCode& code,
                                        const QuantumChannel& channel,
                                        int trials, std::uint64_t seed);

// delta of the complement on the code space; passes when every pair
// satisfies 0 <= ||phi-psi||_1 - ||N(phi)-N(psi)||_1 <= 4 sqrt(2 delta)
// within margins (the lower bound is exact monotonicity).
DualityCheck check_forgetful_implies_geometry(const QuantumChannel& channel,
                                              const Matrix& code_basis,
                                              int trials, std::uint64_t seed);

struct EigenvalueWindow {
  double mu = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
  int test_set_size = 0;
};

// Min/max nonzero (> 1e-10) eigenvalues of complement outputs over the
// test set, and the induced eta for the supplied or measured delta.
EigenvalueWindow eigenvalue_window(const QuantumChannel& channel,
                                   const Matrix& code_basis, int trials,
                                   std::uint64_t seed,
                                   std::optional<double> delta = std::nullopt);

struct DualityInstance {
  std::string label;
  DualityCheck id_forgetful;
  DualityCheck geometry;
};

// Seeded suite of random blind codes (dims <= 8) exercising both
// directions of the duality.
std::vector<DualityInstance> duality_suite(int instances, int trials,
                                           std::uint64_t seed);

}  // namespace qid
