#include "qid/entropy.hpp"

#include <cmath>

namespace qid {

namespace {
// Eigenvalues below this are treated as exact zeros before logarithms.
constexpr double kLogClamp = 1e-12;
}

double entropy_bits(const Matrix& rho) {
  const Eigen::VectorXd vals = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const double lam = vals[i];
    if (lam > kLogClamp) s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_bits(rho.matrix());
}

double binary_relative_entropy(double alpha, double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("binary relative entropy: mu must lie in (0,1)");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("binary relative entropy: alpha must lie in [0,1]");
  double s = 0.0;
  if (alpha > 0.0) s += alpha * std::log(alpha / mu);
  if (alpha < 1.0) s += (1.0 - alpha) * std::log((1.0 - alpha) / (1.0 - mu));
  return std::max(s, 0.0);
}

InfoReport channel_information(const QuantumChannel& channel,
                               const DensityOperator& input) {
  if (input.dim() != channel.dim_in())
    throw std::invalid_argument("channel information: dimension mismatch");
  const int da = input.dim();
  const int db = channel.dim_out();

  // Purification lives on A (x) R with the channel acting on the A factor.
  const PureState phi = purify(input);
  const QuantumChannel extended =
      tensor_product(channel, identity_channel(da));
  const Matrix joint = extended.apply_matrix(phi.projector());

  InfoReport report;
  report.entropy_ab = entropy_bits(joint);
  report.entropy_b = entropy_bits(partial_trace_matrix(joint, Subsystem::A, db, da));
  report.entropy_a = entropy_bits(partial_trace_matrix(joint, Subsystem::B, db, da));
  report.mutual = report.entropy_a + report.entropy_b - report.entropy_ab;
  report.coherent = report.entropy_b - report.entropy_ab;
  return report;
}

double holevo_quantity(const QuantumChannel& channel,
                       const Ensemble& ensemble) {
  if (ensemble.empty())
    throw std::invalid_argument("holevo: ensemble must be nonempty");
  double total = 0.0;
  for (const EnsembleEntry& e : ensemble) {
    if (e.probability < -1e-12)
      throw std::invalid_argument("holevo: negative probability");
    if (e.state.dim() != channel.dim_in())
      throw std::invalid_argument("holevo: state dimension mismatch");
    total += e.probability;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("holevo: probabilities must sum to 1");

  Matrix average = Matrix::Zero(channel.dim_out(), channel.dim_out());
  double mean_entropy = 0.0;
  for (const EnsembleEntry& e : ensemble) {
    if (e.probability <= 0.0) continue;
    const Matrix out = channel.apply_matrix(e.state.matrix());
    average.noalias() += e.probability * out;
    mean_entropy += e.probability * entropy_bits(out);
  }
  return std::max(entropy_bits(average) - mean_entropy, 0.0);
}

}  // namespace qid
