#pragma once

#include <cstdint>
#include <optional>

#include "qid/entropy.hpp"

namespace qid {

// Numerical margin operationalizing the strict positivity constraint on
// the coherent information.
inline constexpr double kStrictPositiveEps = 1e-6;

// Largest input dimension the optimizers accept.
inline constexpr int kMaxOptimizerDim = 8;

struct OptimizerOptions {
  int restarts = 32;
  int max_iters = 2000;
  double step_tol = 1e-9;
  std::uint64_t seed = 0;
};

struct CapacityWitness {
  Ensemble ensemble;                          // product-state ensemble (c1)
  std::optional<DensityOperator> input_state; // single-input optimizers
};

struct CapacityResult {
  double value = 0.0;  // bits per use; recomputable from the witness
  CapacityWitness witness;
  int iterations = 0;  // summed over restarts
  bool converged = false;
};

// Best-found lower bounds by multi-start ascent with finite-difference
// gradients; see the module tests for the closed forms they are pinned to.
CapacityResult c1_capacity(const QuantumChannel& channel,
                           const OptimizerOptions& opts = {});
CapacityResult q1_capacity(const QuantumChannel& channel,
                           const OptimizerOptions& opts = {});
CapacityResult ce_capacity(const QuantumChannel& channel,
                           const OptimizerOptions& opts = {});
// Maximal mutual information subject to strictly positive coherent
// information; 0 with empty witness when no input qualifies.
CapacityResult qid1_capacity(const QuantumChannel& channel,
                             const OptimizerOptions& opts = {});

struct LowNoiseReport {
  bool low_noise = false;
  std::optional<DensityOperator> witness;  // mutual-information maximizer
  double mutual = 0.0;
  double coherent = 0.0;  // coherent information at the witness
};

LowNoiseReport sufficiently_low_noise(const QuantumChannel& channel,
                                      const OptimizerOptions& opts = {});

struct ErasureCurveRow {
  double q = 0.0;
  double c1 = 0.0;                  // 1 - q
  double q1 = 0.0;                  // max(0, 1 - 2q)
  double ce = 0.0;                  // 2 - 2q
  double old_id_bound = 0.0;        // 2 - 4q for q <= 1/3, else 1 - q
  double new_id_bound = 0.0;        // 2 - 2q for q < 1/2, else 1 - q
  double amortization_lower = 0.0;  // max(0, 2q - 1)
};

std::vector<ErasureCurveRow> erasure_curves(const std::vector<double>& q_values);

}  // namespace qid
