#pragma once

#include "qid/channel.hpp"

namespace qid {

// Entropic quantities feeding the capacity formulas. Capacity-facing
// entropies are in bits; binary_relative_entropy is in nats, matching the
// units of the concentration bound it feeds.

struct InfoReport {
  double mutual = 0.0;      // I(A:B), bits
  double coherent = 0.0;    // I(A>B), bits
  double entropy_b = 0.0;   // S(B)
  double entropy_ab = 0.0;  // S(AB)
  double entropy_a = 0.0;   // S(A)
};

double von_neumann_entropy(const DensityOperator& rho);  // bits
// Entropy of a Hermitian PSD unit-trace matrix without revalidation.
double entropy_bits(const Matrix& rho);

// alpha ln(alpha/mu) + (1-alpha) ln((1-alpha)/(1-mu)), with 0 ln 0 = 0.
// Requires mu in (0,1), alpha in [0,1].
double binary_relative_entropy(double alpha, double mu);  // nats

// Purifies the input, sends one side through the channel and reports the
// entropies of the resulting joint state.
InfoReport channel_information(const QuantumChannel& channel,
                               const DensityOperator& input);

struct EnsembleEntry {
  double probability = 0.0;
  DensityOperator state;
};
using Ensemble = std::vector<EnsembleEntry>;

double holevo_quantity(const QuantumChannel& channel, const Ensemble& ensemble);

}  // namespace qid
