#include "qid/decoupling.hpp"

#include <cmath>

namespace qid {

namespace {

void check_code_basis(const Matrix& basis, int ambient_dim) {
  if (basis.rows() != ambient_dim)
    throw std::invalid_argument("code space: ambient dimension mismatch");
  const Eigen::Index k = basis.cols();
  if (k < 1 || k > basis.rows())
    throw std::invalid_argument("code space: invalid rank");
  if ((basis.adjoint() * basis - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() >
      1e-8)
    throw std::invalid_argument("code space: columns must be orthonormal");
}

// Structured pair set in the span of the code basis: every ordered basis
// pair plus seeded random pairs.
struct PairSet {
  std::vector<std::pair<Vector, Vector>> pairs;
  int size() const { return static_cast<int>(pairs.size()); }
};

PairSet test_pairs(const Matrix& basis, int trials, std::uint64_t seed) {
  const int k = static_cast<int>(basis.cols());
  PairSet set;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      set.pairs.emplace_back(basis.col(i), basis.col(j));
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(seed, 0x646370ULL + static_cast<std::uint64_t>(t));
    const Vector a = basis * random_pure(k, rng).amplitudes();
    const Vector b = basis * random_pure(k, rng).amplitudes();
    set.pairs.emplace_back(a, b);
  }
  return set;
}

double half_trace_norm(const Matrix& herm) {
  return 0.5 * trace_norm_hermitian(herm);
}

}  // namespace

ForgetfulnessResult forgetfulness(const QuantumChannel& channel,
                                  const Matrix& code_basis, int trials,
                                  std::uint64_t seed) {
  check_code_basis(code_basis, channel.dim_in());
  const PairSet set = test_pairs(code_basis, trials, seed);
  double delta = 0.0;
  for (const auto& [a, b] : set.pairs) {
    const Matrix out_a = channel.apply_matrix(a * a.adjoint());
    const Matrix out_b = channel.apply_matrix(b * b.adjoint());
    delta = std::max(delta, half_trace_norm(out_a - out_b));
  }
  return {std::min(delta, 1.0), set.size()};
}

namespace {

// Shared evaluation pass: forgetfulness of the complement, geometry gaps
// of the channel itself, and the complement eigenvalue window.
struct DualityData {
  double delta = 0.0;
  double gap_max = 0.0;
  double gap_min = 0.0;
  double mu = 1.0;
  double lambda = 0.0;
  int test_set_size = 0;
};

DualityData evaluate_duality(const QuantumChannel& channel,
                             const Matrix& code_basis, int trials,
                             std::uint64_t seed) {
  check_code_basis(code_basis, channel.dim_in());
  const auto [isometry, complement] = complementary(channel);
  (void)isometry;
  const PairSet set = test_pairs(code_basis, trials, seed);

  DualityData data;
  data.test_set_size = set.size();
  data.gap_min = std::numeric_limits<double>::infinity();
  bool saw_nonzero = false;
  for (const auto& [a, b] : set.pairs) {
    const Matrix pa = a * a.adjoint();
    const Matrix pb = b * b.adjoint();
    const Matrix env_a = complement.apply_matrix(pa);
    const Matrix env_b = complement.apply_matrix(pb);
    data.delta = std::max(data.delta, half_trace_norm(env_a - env_b));

    const double gap = trace_norm_hermitian(pa - pb) -
                       trace_norm_hermitian(channel.apply_matrix(pa) -
                                            channel.apply_matrix(pb));
    data.gap_max = std::max(data.gap_max, gap);
    data.gap_min = std::min(data.gap_min, gap);

    for (const Matrix& env : {env_a, env_b}) {
      const Eigen::VectorXd vals = hermitian_eigenvalues(env);
      for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals[i] > 1e-10) {
          data.mu = saw_nonzero ? std::min(data.mu, vals[i]) : vals[i];
          data.lambda = std::max(data.lambda, vals[i]);
          saw_nonzero = true;
        }
      }
    }
  }
  data.delta = std::min(data.delta, 1.0);
  if (!saw_nonzero) {
    data.mu = 1.0;
    data.lambda = 1.0;
  }
  return data;
}

double eta_from(double delta, double mu, double lambda) {
  return 7.0 * std::pow(delta, 0.125) * std::sqrt(lambda / mu);
}

}  // namespace

DualityCheck check_id_implies_forgetful(const QuantumIdCode& code,
                                        const QuantumChannel& channel,
                                        int trials, std::uint64_t seed) {
  if (!code.blind_encoder)
    throw std::invalid_argument("duality check: blind code (cptp encoder) required");
  const QuantumChannel effective =
      combine({*code.blind_encoder, channel}, CombineMode::Compose);

  const QuantumIdReport id_report =
      verify_quantum_id(code, channel, trials, seed);
  const Matrix basis = Matrix::Identity(code.code_dim, code.code_dim);
  const DualityData data = evaluate_duality(effective, basis, trials, seed);

  DualityCheck check;
  check.epsilon = id_report.epsilon;
  check.report.delta = data.delta;
  check.report.epsilon_bound = 7.0 * std::pow(id_report.epsilon, 0.25);
  check.report.geometry_gap_max = data.gap_max;
  check.report.geometry_gap_min = std::min(data.gap_min, 0.0);
  check.report.mu = data.mu;
  check.report.lambda = data.lambda;
  check.report.eta = eta_from(data.delta, data.mu, data.lambda);
  check.report.test_set_size = data.test_set_size;
  check.pass = data.delta <= check.report.epsilon_bound + kStatMargin;
  return check;
}

DualityCheck check_forgetful_implies_geometry(const QuantumChannel& channel,
                                              const Matrix& code_basis,
                                              int trials, std::uint64_t seed) {
  const DualityData data = evaluate_duality(channel, code_basis, trials, seed);

  DualityCheck check;
  check.report.delta = data.delta;
  check.report.epsilon_bound = 4.0 * std::sqrt(2.0 * data.delta);
  check.report.geometry_gap_max = data.gap_max;
  check.report.geometry_gap_min = data.gap_min;
  check.report.mu = data.mu;
  check.report.lambda = data.lambda;
  check.report.eta = eta_from(data.delta, data.mu, data.lambda);
  check.report.test_set_size = data.test_set_size;
  // Lower bound is exact monotonicity of the trace norm; upper bound is
  // the forgetfulness consequence.
  check.pass = data.gap_min >= -1e-9 &&
               data.gap_max <= check.report.epsilon_bound + kStatMargin;
  return check;
}

EigenvalueWindow eigenvalue_window(const QuantumChannel& channel,
                                   const Matrix& code_basis, int trials,
                                   std::uint64_t seed,
                                   std::optional<double> delta) {
  const DualityData data = evaluate_duality(channel, code_basis, trials, seed);
  EigenvalueWindow window;
  window.mu = data.mu;
  window.lambda = data.lambda;
  window.eta = eta_from(delta.value_or(data.delta), data.mu, data.lambda);
  window.test_set_size = data.test_set_size;
  return window;
}

std::vector<DualityInstance> duality_suite(int instances, int trials,
                                           std::uint64_t seed) {
  std::vector<DualityInstance> out;
  out.reserve(instances);
  for (int i = 0; i < instances; ++i) {
    RandomStream rng(seed, 0x737569ULL + static_cast<std::uint64_t>(i));
    const int code_dim = 2 + static_cast<int>(rng.below(3));         // 2..4
    const int ambient = code_dim + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(8 - code_dim) + 1));

    QuantumChannel channel = identity_channel(ambient);
    std::string label;
    switch (i % 4) {
      case 0:
        channel = identity_channel(ambient);
        label = "identity";
        break;
      case 1: {
        channel = QuantumChannel(ambient, ambient,
                                 {random_unitary(ambient, rng)}, "unitary");
        label = "unitary";
        break;
      }
      case 2:
        channel = random_channel(ambient, ambient, 2, rng);
        label = "kraus2";
        break;
      default:
        channel = random_channel(ambient, std::min(ambient + 1, 8), 3, rng);
        label = "kraus3";
        break;
    }

    const Matrix encoder = random_isometry(code_dim, ambient, rng);
    const QuantumIdCode code = pushforward_code(encoder, channel);

    DualityInstance instance;
    instance.label = label + "_k" + std::to_string(code_dim) + "_d" +
                     std::to_string(ambient) + "_i" + std::to_string(i);
    instance.id_forgetful =
        check_id_implies_forgetful(code, channel, trials, seed + i);
    const QuantumChannel effective =
        combine({*code.blind_encoder, channel}, CombineMode::Compose);
    instance.geometry = check_forgetful_implies_geometry(
        effective, Matrix::Identity(code_dim, code_dim), trials, seed + i);
    out.push_back(std::move(instance));
  }
  return out;
}

}  // namespace qid
