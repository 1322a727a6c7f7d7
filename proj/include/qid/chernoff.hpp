#pragma once

#include <string>

#include "qid/state.hpp"

namespace qid {

// Monte-Carlo validation of the exponential tail bounds for eigenvalues
// of empirical means of bounded random matrices.

class MatrixEnsembleSpec {
 public:
  enum class Kind { BernoulliScalar, Fixed, RandomProjector, Custom };

  // X = B * 1 with B Bernoulli(mu).
  static MatrixEnsembleSpec bernoulli_scalar(int dim, double mu);
  // X = mu * 1 deterministically.
  static MatrixEnsembleSpec fixed(int dim, double mu);
  // X = projector onto a uniformly random size-(mu*d) subset of the
  // computational basis; requires mu*d to be a positive integer.
  static MatrixEnsembleSpec random_projector(int dim, double mu);
  // Finite ensemble of (probability, matrix); each X must satisfy
  // 0 <= X <= 1 and the mean must equal mu * identity.
  static MatrixEnsembleSpec custom(int dim, double mu,
                                   std::vector<std::pair<double, Matrix>> atoms);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double mu() const { return mu_; }
  const std::vector<std::pair<double, Matrix>>& atoms() const { return atoms_; }
  int projector_rank() const { return rank_; }

 private:
  MatrixEnsembleSpec(Kind k, int dim, double mu) : kind_(k), dim_(dim), mu_(mu) {}
  Kind kind_;
  int dim_;
  double mu_;
  int rank_ = 0;
  std::vector<std::pair<double, Matrix>> atoms_;
};

enum class TailDirection { Upper, Lower, TwoSided };
enum class BoundForm { Exact, Corollary };

// Exact form: d exp(-n D(alpha||mu)), valid for mu <= alpha <= 1 or
// 0 <= alpha <= mu. Corollary form: 2 d exp(-n mu eps^2 / 4) for the
// two-sided event, 0 <= eps <= 1/2.
double chernoff_bound(long n, int d, double alpha, double mu, BoundForm form,
                      double eps = 0.0);

struct TailReport {
  double empirical = 0.0;
  double ci_halfwidth = 0.0;  // Wilson, 95% level
  double bound = 0.0;
  long n = 0;
  long trials = 0;
  TailDirection direction = TailDirection::Upper;
};

// Probability that the empirical mean of n samples escapes the eigenvalue
// threshold: max eigenvalue > alpha (Upper), min eigenvalue < alpha
// (Lower), or mean outside [(1-eps) mu, (1+eps) mu] with alpha read as
// eps (TwoSided).
TailReport empirical_tail(const MatrixEnsembleSpec& spec, long n, double alpha,
                          TailDirection direction, long trials,
                          std::uint64_t seed);

struct BoundCase {
  std::string label;
  MatrixEnsembleSpec spec;
  long n = 0;
  double alpha = 0.0;
  TailDirection direction = TailDirection::Upper;
};

struct BoundCaseResult {
  BoundCase bound_case;
  TailReport report;
  bool pass = false;  // empirical - ci <= bound
};

struct BoundSuiteResult {
  std::vector<BoundCaseResult> rows;
  bool all_pass = false;
};

BoundSuiteResult validate_bound(const std::vector<BoundCase>& cases,
                                long trials, std::uint64_t seed);

// 12 cases over d in {2,4}, mu in {0.25,0.5}, n in {10,50,200} with
// alpha = mu + 0.2.
std::vector<BoundCase> default_bound_suite();

struct Wilson95 {
  double center = 0.0;
  double halfwidth = 0.0;
};
Wilson95 wilson95(long hits, long trials);

}  // namespace qid
