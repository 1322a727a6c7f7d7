#include "qid/idcode.hpp"

#include <cmath>

namespace qid {

namespace {

// Re tr(A B) for matrices of matching shape, O(d^2).
double re_trace_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

void check_test_operator(const Matrix& test, int dim) {
  if (test.rows() != dim || test.cols() != dim)
    throw std::invalid_argument("id code: test operator has wrong shape");
  if (!is_hermitian(test, kHermTol))
    throw std::invalid_argument("id code: test operator not Hermitian");
  const Eigen::VectorXd vals = hermitian_eigenvalues(test);
  if (vals.minCoeff() < -kPsdTol || vals.maxCoeff() > 1.0 + kPsdTol)
    throw std::invalid_argument("id code: test operator outside [0, 1]");
}

}  // namespace

ClassicalIdCode::ClassicalIdCode(int channel_dim_in,
                                 std::vector<ClassicalIdEntry> entries)
    : channel_dim_in_(channel_dim_in), entries_(std::move(entries)) {
  if (entries_.empty())
    throw std::invalid_argument("id code: needs at least one entry");
  const int test_dim = static_cast<int>(entries_.front().test.rows());
  for (const ClassicalIdEntry& e : entries_) {
    if (e.state.dim() != channel_dim_in_)
      throw std::invalid_argument("id code: state dimension mismatch");
    check_test_operator(e.test, test_dim);
  }
}

IdVerificationReport verify_classical_id(const ClassicalIdCode& code,
                                         const QuantumChannel& channel) {
  if (code.channel_dim_in() != channel.dim_in())
    throw std::invalid_argument("verify id: channel input dimension mismatch");
  const int n = code.size();
  if (code.entries().front().test.rows() != channel.dim_out())
    throw std::invalid_argument("verify id: test dimension mismatch");

  std::vector<Matrix> outputs;
  outputs.reserve(n);
  for (const ClassicalIdEntry& e : code.entries())
    outputs.push_back(channel.apply_matrix(e.state.matrix()));

  IdVerificationReport report;
  for (int i = 0; i < n; ++i) {
    const double hit = re_trace_product(outputs[i], code.entries()[i].test);
    report.lambda1 = std::max(report.lambda1, 1.0 - hit);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double false_accept =
          re_trace_product(outputs[i], code.entries()[j].test);
      report.lambda2 = std::max(report.lambda2, false_accept);
    }
  }
  report.lambda1 = std::clamp(report.lambda1, 0.0, 1.0);
  report.lambda2 = std::clamp(report.lambda2, 0.0, 1.0);  // 0 stays 0 for n = 1
  report.pair_count = static_cast<long>(n) * (n - 1);
  return report;
}

SimultaneityReport verify_simultaneity(const ClassicalIdCode& code,
                                       const SimultaneityWitness& witness) {
  const int n = code.size();
  const int t = witness.povm.outcomes();
  SimultaneityReport report;
  if (static_cast<int>(witness.partition.size()) != n)
    throw std::invalid_argument("simultaneity: one index set per message required");

  std::vector<char> used(static_cast<std::size_t>(t), 0);
  report.disjoint = true;
  for (const std::vector<int>& set : witness.partition) {
    for (int idx : set) {
      if (idx < 0 || idx >= t)
        throw std::invalid_argument("simultaneity: index out of range");
      if (used[static_cast<std::size_t>(idx)]) report.disjoint = false;
      used[static_cast<std::size_t>(idx)] = 1;
    }
  }

  for (int i = 0; i < n; ++i) {
    Matrix sum = Matrix::Zero(witness.povm.dim(), witness.povm.dim());
    for (int idx : witness.partition[i]) sum += witness.povm.elements()[idx];
    report.residual = std::max(
        report.residual,
        (sum - code.entries()[i].test).cwiseAbs().maxCoeff());
  }
  report.ok = report.disjoint && report.residual <= 1e-8;
  return report;
}

// ---------------------------------------------------------------------
// Fingerprinting
// ---------------------------------------------------------------------

namespace {

bool fingerprint_accepts(const std::vector<PureState>& accepted,
                         const Vector& candidate, double max_overlap) {
  for (const PureState& s : accepted) {
    const double overlap = std::abs(s.amplitudes().dot(candidate));
    if (overlap > max_overlap) return false;
  }
  return true;
}

// Shared candidate stream: basis vectors first, then seeded random ones.
std::vector<PureState> fingerprint_greedy(int dim, int target_count,
                                          double max_overlap,
                                          std::uint64_t seed, long draw_budget,
                                          bool throw_on_budget) {
  if (dim < 1) throw std::invalid_argument("fingerprints: dim must be positive");
  if (max_overlap < 0.0 || max_overlap >= 1.0)
    throw std::invalid_argument("fingerprints: max_overlap must lie in [0,1)");
  std::vector<PureState> accepted;
  long draws = 0;
  for (int b = 0; b < dim; ++b) {
    if (target_count >= 0 && static_cast<int>(accepted.size()) >= target_count)
      return accepted;
    PureState cand = basis_state(dim, b);
    ++draws;
    if (fingerprint_accepts(accepted, cand.amplitudes(), max_overlap))
      accepted.push_back(std::move(cand));
  }
  RandomStream rng(seed, 0x66707274ULL);  // fingerprint stream tag
  while (draws < draw_budget) {
    if (target_count >= 0 && static_cast<int>(accepted.size()) >= target_count)
      return accepted;
    PureState cand = random_pure(dim, rng);
    ++draws;
    if (fingerprint_accepts(accepted, cand.amplitudes(), max_overlap))
      accepted.push_back(std::move(cand));
  }
  if (target_count >= 0 && static_cast<int>(accepted.size()) < target_count &&
      throw_on_budget)
    throw InfeasibleError("fingerprints: draw budget exhausted before reaching count");
  return accepted;
}

}  // namespace

std::vector<PureState> fingerprint_generate(int dim, int count,
                                            double max_overlap,
                                            std::uint64_t seed,
                                            long draw_budget) {
  if (count < 2)
    throw std::invalid_argument("fingerprints: count must be at least 2");
  std::vector<PureState> states =
      fingerprint_greedy(dim, count, max_overlap, seed, draw_budget, true);
  // Exhaustive final check over all pairs.
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double overlap =
          std::abs(states[i].amplitudes().dot(states[j].amplitudes()));
      if (overlap > max_overlap + 1e-12)
        throw InfeasibleError("fingerprints: verification failed");
    }
  return states;
}

int fingerprint_achievable_count(int dim, double max_overlap,
                                 std::uint64_t seed, long draw_budget) {
  return static_cast<int>(
      fingerprint_greedy(dim, -1, max_overlap, seed, draw_budget, false).size());
}

ClassicalIdCode fingerprint_code(const std::vector<PureState>& states) {
  std::vector<ClassicalIdEntry> entries;
  entries.reserve(states.size());
  for (const PureState& s : states)
    entries.push_back({s.projector_state(), s.projector()});
  return ClassicalIdCode(states.front().dim(), std::move(entries));
}

// ---------------------------------------------------------------------
// Polynomial-evaluation codes
// ---------------------------------------------------------------------

RsIdCode::RsIdCode(std::uint32_t field_order, std::uint32_t degree_bound)
    : q_(field_order), k_(degree_bound), field_(field_order) {
  if (k_ < 1 || k_ > q_)
    throw std::invalid_argument("rs code: need 1 <= k <= q");
  message_count_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (message_count_ > (1ULL << 62) / q_)
      throw std::invalid_argument("rs code: message space too large");
    message_count_ *= q_;
  }
}

RsIdCode rs_id_code(std::uint32_t field_order, std::uint32_t degree_bound) {
  return RsIdCode(field_order, degree_bound);
}

std::uint32_t RsIdCode::eval(std::uint64_t message, std::uint32_t x) const {
  // Horner evaluation; digits of the message are the coefficients.
  std::uint32_t coeffs[64];
  for (std::uint32_t i = 0; i < k_; ++i) {
    coeffs[i] = static_cast<std::uint32_t>(message % q_);
    message /= q_;
  }
  std::uint32_t acc = 0;
  for (std::uint32_t i = k_; i-- > 0;)
    acc = field_.add(field_.mul(acc, x), coeffs[i]);
  return acc;
}

std::vector<std::uint32_t> RsIdCode::support(std::uint64_t message) const {
  std::vector<std::uint32_t> out;
  out.reserve(q_);
  for (std::uint32_t x = 0; x < q_; ++x) out.push_back(x * q_ + eval(message, x));
  return out;
}

double RsIdCode::lambda2_bound() const {
  return static_cast<double>(k_ - 1) / static_cast<double>(q_);
}

QuantumChannel rs_channel(const RsIdCode& code) {
  const int d = static_cast<int>(code.field_order() * code.field_order());
  return dephasing_channel(d);  // noiseless classical channel on the alphabet
}

ClassicalIdCode rs_materialize(const RsIdCode& code) {
  const std::uint64_t n = code.message_count();
  const std::uint64_t d = static_cast<std::uint64_t>(code.field_order()) *
                          code.field_order();
  if (n * d * d > (1ULL << 24))
    throw std::invalid_argument("rs materialize: message space too large for dense form");
  const double weight = 1.0 / static_cast<double>(code.field_order());
  std::vector<ClassicalIdEntry> entries;
  entries.reserve(n);
  for (std::uint64_t m = 0; m < n; ++m) {
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Matrix test = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::uint32_t idx : code.support(m)) {
      rho(idx, idx) = weight;
      test(idx, idx) = 1.0;
    }
    entries.push_back({DensityOperator(std::move(rho)), std::move(test)});
  }
  return ClassicalIdCode(static_cast<int>(d), std::move(entries));
}

IdVerificationReport rs_verify_exhaustive(const RsIdCode& code) {
  const std::uint64_t n = code.message_count();
  const std::uint32_t q = code.field_order();

  IdVerificationReport report;
  // First kind: each test contains its message's full support, so the hit
  // probability is exactly 1 for every message.
  report.lambda1 = 0.0;

  // Second kind: the agreement count of (i, j) depends only on the
  // difference polynomial, so scanning all nonzero differences covers
  // every ordered pair.
  std::uint32_t max_agreements = 0;
  for (std::uint64_t delta = 1; delta < n; ++delta) {
    std::uint32_t agreements = 0;
    for (std::uint32_t x = 0; x < q; ++x)
      if (code.eval(delta, x) == 0) ++agreements;
    max_agreements = std::max(max_agreements, agreements);
  }
  report.lambda2 =
      (n > 1) ? static_cast<double>(max_agreements) / q : 0.0;
  report.pair_count = static_cast<long>(n * (n - 1));
  return report;
}

IdVerificationReport rs_verify_sampled(const RsIdCode& code, long pair_samples,
                                       std::uint64_t seed) {
  const std::uint64_t n = code.message_count();
  const std::uint32_t q = code.field_order();
  IdVerificationReport report;
  report.lambda1 = 0.0;  // support containment is structural
  std::uint32_t max_agreements = 0;
  for (long s = 0; s < pair_samples; ++s) {
    RandomStream rng(seed, static_cast<std::uint64_t>(s));
    const std::uint64_t i = rng.below(n);
    std::uint64_t j = rng.below(n - 1);
    if (j >= i) ++j;
    std::uint32_t agreements = 0;
    for (std::uint32_t x = 0; x < q; ++x)
      if (code.eval(i, x) == code.eval(j, x)) ++agreements;
    max_agreements = std::max(max_agreements, agreements);
  }
  report.lambda2 = static_cast<double>(max_agreements) / q;
  report.pair_count = pair_samples;
  return report;
}

SimultaneityWitness rs_simultaneity_witness(const RsIdCode& code) {
  const int d = static_cast<int>(code.field_order() * code.field_order());
  std::vector<Matrix> elements;
  elements.reserve(d);
  for (int t = 0; t < d; ++t) {
    Matrix e = Matrix::Zero(d, d);
    e(t, t) = 1.0;
    elements.push_back(std::move(e));
  }
  std::vector<std::vector<int>> partition;
  partition.reserve(code.message_count());
  for (std::uint64_t m = 0; m < code.message_count(); ++m) {
    std::vector<int> set;
    for (std::uint32_t idx : code.support(m)) set.push_back(static_cast<int>(idx));
    partition.push_back(std::move(set));
  }
  return SimultaneityWitness{Povm(std::move(elements)), std::move(partition)};
}

// ---------------------------------------------------------------------
// Concatenation with a transmission block code
// ---------------------------------------------------------------------

double block_error(const std::vector<DensityOperator>& block_encoder,
                   const Povm& block_decoder, const QuantumChannel& channel) {
  if (block_encoder.size() != static_cast<std::size_t>(block_decoder.outcomes()))
    throw std::invalid_argument("block error: encoder/decoder size mismatch");
  double worst = 0.0;
  for (std::size_t s = 0; s < block_encoder.size(); ++s) {
    const Matrix out = channel.apply_matrix(block_encoder[s].matrix());
    const double hit = re_trace_product(out, block_decoder.elements()[s]);
    worst = std::max(worst, 1.0 - hit);
  }
  return worst;
}

ClassicalIdCode concatenate_with_transmission(
    const ClassicalIdCode& id_code,
    const std::vector<DensityOperator>& block_encoder,
    const Povm& block_decoder, const QuantumChannel& channel) {
  const int m = id_code.channel_dim_in();
  if (static_cast<int>(block_encoder.size()) != m)
    throw std::invalid_argument("concatenate: block encoder must cover the alphabet");
  if (block_decoder.outcomes() != m)
    throw std::invalid_argument("concatenate: decoder must have one outcome per symbol");
  for (const DensityOperator& enc : block_encoder)
    if (enc.dim() != channel.dim_in())
      throw std::invalid_argument("concatenate: encoder state dimension mismatch");
  if (block_decoder.dim() != channel.dim_out())
    throw std::invalid_argument("concatenate: decoder dimension mismatch");

  std::vector<ClassicalIdEntry> entries;
  entries.reserve(id_code.size());
  for (const ClassicalIdEntry& e : id_code.entries()) {
    Matrix rho = Matrix::Zero(channel.dim_in(), channel.dim_in());
    Matrix test = Matrix::Zero(channel.dim_out(), channel.dim_out());
    for (int s = 0; s < m; ++s) {
      const double weight = e.state.matrix()(s, s).real();
      if (weight > 0.0) rho.noalias() += weight * block_encoder[s].matrix();
      const double accept = e.test(s, s).real();
      if (accept > 0.0) test.noalias() += accept * block_decoder.elements()[s];
    }
    rho = 0.5 * (rho + rho.adjoint());
    test = 0.5 * (test + test.adjoint());
    entries.push_back({DensityOperator(std::move(rho)), std::move(test)});
  }
  return ClassicalIdCode(channel.dim_in(), std::move(entries));
}

// ---------------------------------------------------------------------
// Quantum identification codes
// ---------------------------------------------------------------------

QuantumIdCode projector_code(int dim) {
  QuantumIdCode code;
  code.code_dim = dim;
  code.blind_encoder = identity_channel(dim);
  code.encode = [](const PureState& psi) { return psi.projector_state(); };
  code.decoder_test = [](const PureState& phi) { return phi.projector(); };
  return code;
}

QuantumIdCode embedded_projector_code(int dim, int out_dim) {
  if (out_dim < dim)
    throw std::invalid_argument("embedded projector code: out_dim < dim");
  QuantumIdCode code;
  code.code_dim = dim;
  code.blind_encoder = identity_channel(dim);
  code.encode = [](const PureState& psi) { return psi.projector_state(); };
  code.decoder_test = [dim, out_dim](const PureState& phi) {
    Matrix d = Matrix::Zero(out_dim, out_dim);
    d.topLeftCorner(dim, dim) = phi.projector();
    return d;
  };
  return code;
}

QuantumIdCode pushforward_code(const Matrix& isometry,
                               const QuantumChannel& channel) {
  const int code_dim = static_cast<int>(isometry.cols());
  const int out_dim = static_cast<int>(isometry.rows());
  if (out_dim != channel.dim_in())
    throw std::invalid_argument("pushforward code: isometry range mismatch");
  if ((isometry.adjoint() * isometry - Matrix::Identity(code_dim, code_dim))
          .cwiseAbs()
          .maxCoeff() > 1e-8)
    throw std::invalid_argument("pushforward code: encoder must be an isometry");

  QuantumIdCode code;
  code.code_dim = code_dim;
  code.blind_encoder =
      QuantumChannel(code_dim, out_dim, {isometry}, "isometric-encoder");
  Matrix w = isometry;
  QuantumChannel ch = channel;
  code.encode = [w](const PureState& psi) {
    Matrix rho = w * psi.projector() * w.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityOperator(std::move(rho));
  };
  // Channel output of the encoded state is PSD with eigenvalues <= 1, so
  // it is itself a valid test operator.
  code.decoder_test = [w, ch](const PureState& phi) {
    Matrix out = ch.apply_matrix(w * phi.projector() * w.adjoint());
    return 0.5 * (out + out.adjoint());
  };
  return code;
}

QuantumIdReport verify_quantum_id(const QuantumIdCode& code,
                                  const QuantumChannel& channel, int trials,
                                  std::uint64_t seed) {
  const int k = code.code_dim;
  QuantumIdReport report;

  auto deviation = [&](const PureState& psi, const PureState& phi) {
    const double ideal =
        std::norm(psi.amplitudes().dot(phi.amplitudes()));
    const DensityOperator encoded = code.encode(psi);
    if (encoded.dim() != channel.dim_in())
      throw std::invalid_argument("verify quantum id: encoder output dimension mismatch");
    const Matrix out = channel.apply_matrix(encoded.matrix());
    const Matrix test = code.decoder_test(phi);
    if (test.rows() != channel.dim_out() || test.cols() != channel.dim_out())
      throw std::invalid_argument("verify quantum id: test dimension mismatch");
    const double simulated = re_trace_product(out, test);
    return std::abs(ideal - simulated);
  };

  double eps = 0.0;
  for (int i = 0; i < k; ++i) {
    const PureState psi = basis_state(k, i);
    for (int j = 0; j < k; ++j)
      eps = std::max(eps, deviation(psi, basis_state(k, j)));
  }
  report.test_set_size = k * k;

  for (int t = 0; t < trials; ++t) {
    RandomStream rng(seed, 0x716964ULL + static_cast<std::uint64_t>(t));
    const PureState diag = random_pure(k, rng);
    eps = std::max(eps, deviation(diag, diag));
    const PureState psi = random_pure(k, rng);
    const PureState phi = random_pure(k, rng);
    eps = std::max(eps, deviation(psi, phi));
    report.test_set_size += 2;
  }
  report.epsilon = eps;
  return report;
}

FingerprintConcatenation fingerprint_to_classical(const QuantumIdCode& qcode,
                                                  const QuantumChannel& channel,
                                                  int count, double max_overlap,
                                                  std::uint64_t seed) {
  const std::vector<PureState> prints =
      fingerprint_generate(qcode.code_dim, count, max_overlap, seed);

  std::vector<ClassicalIdEntry> entries;
  entries.reserve(prints.size());
  for (const PureState& psi : prints)
    entries.push_back({qcode.encode(psi), qcode.decoder_test(psi)});
  ClassicalIdCode code(channel.dim_in(), std::move(entries));

  // Deviation of the quantum code on exactly the fingerprint pairs.
  double eps = 0.0;
  for (std::size_t i = 0; i < prints.size(); ++i) {
    const Matrix out = channel.apply_matrix(code.entries()[i].state.matrix());
    for (std::size_t j = 0; j < prints.size(); ++j) {
      const double ideal =
          std::norm(prints[i].amplitudes().dot(prints[j].amplitudes()));
      const double simulated = re_trace_product(out, code.entries()[j].test);
      eps = std::max(eps, std::abs(ideal - simulated));
    }
  }

  FingerprintConcatenation result{std::move(code), {}, eps, max_overlap};
  result.verification = verify_classical_id(result.code, channel);
  return result;
}

}  // namespace qid
