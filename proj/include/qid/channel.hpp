#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qid/state.hpp"

namespace qid {

// Completely positive trace-preserving map stored as a Kraus family of
// dim_out x dim_in matrices. The constructor checks shapes only; CPTP
// validation is a separate, reportable step.
class QuantumChannel {
 public:
  QuantumChannel(int dim_in, int dim_out, std::vector<Matrix> kraus,
                 std::string label = "");

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }

  // Linear action sum_k K rho K^dag, no state validation.
  Matrix apply_matrix(const Matrix& rho) const;
  // Validated action on states.
  DensityOperator apply(const DensityOperator& rho) const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<Matrix> kraus_;
  std::string label_;
};

struct StinespringIsometry {
  int dim_in = 0;
  int dim_out = 0;  // B factor
  int dim_env = 0;  // E factor
  Matrix matrix;    // (dim_out * dim_env) x dim_in, row index b * dim_env + e
};

class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements);
  const std::vector<Matrix>& elements() const { return elements_; }
  int dim() const { return static_cast<int>(elements_.front().rows()); }
  int outcomes() const { return static_cast<int>(elements_.size()); }

 private:
  std::vector<Matrix> elements_;
};

struct ValidationReport {
  double trace_residual = 0.0;      // max |eig(sum K^dag K - 1)|
  double min_choi_eigenvalue = 0.0;
  bool passes = false;
};

ValidationReport validate_cptp(const QuantumChannel& channel);

// Unnormalized Choi matrix sum_ij |i><j| (x) N(|i><j|); its partial trace
// over the output factor is the identity exactly when N preserves trace.
Matrix choi_matrix(const QuantumChannel& channel);

// Stinespring dilation and the channel to the environment. The Kraus
// family is first reduced to a linearly independent one (Gram-Schmidt on
// vectorized operators, threshold 1e-10) so the environment is minimal.
std::pair<StinespringIsometry, QuantumChannel> complementary(
    const QuantumChannel& channel);

Matrix apply_isometry(const StinespringIsometry& v, const Matrix& rho,
                      Subsystem keep);

// Channel zoo.
QuantumChannel identity_channel(int dim);
QuantumChannel erasure_channel(double q);  // qubit in, qutrit out
QuantumChannel depolarizing_channel(double p);
QuantumChannel dephasing_channel(int dim);
QuantumChannel classical_channel(const Eigen::MatrixXd& kernel);  // kernel(y,x)
QuantumChannel cq_channel(const std::vector<DensityOperator>& signal_states);
QuantumChannel qc_channel(const Povm& measurement);
QuantumChannel binary_symmetric_channel(double flip);

struct StandardChannelSpec {
  enum class Kind { Identity, Erasure, Depolarizing, Dephasing, Classical, Cq, Qc };
  Kind kind = Kind::Identity;
  int dim = 2;          // identity / dephasing
  double noise = 0.0;   // erasure q, depolarizing p, bsc flip
  Eigen::MatrixXd kernel;                 // classical
  std::vector<DensityOperator> cq_states; // cq
  std::optional<Povm> qc_povm;            // qc
};

QuantumChannel make_standard(const StandardChannelSpec& spec);

enum class CombineMode { Tensor, Compose };

// Tensor or sequential composition of a channel list. Compose applies the
// channels in list order (channels[0] acts first).
QuantumChannel combine(const std::vector<QuantumChannel>& channels,
                       CombineMode mode);
QuantumChannel tensor_product(const QuantumChannel& a, const QuantumChannel& b);

Matrix random_isometry(int dim_in, int dim_out, RandomStream& rng);
Matrix random_unitary(int dim, RandomStream& rng);
QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count,
                              RandomStream& rng);

}  // namespace qid
