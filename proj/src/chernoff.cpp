#include "qid/chernoff.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "qid/entropy.hpp"

namespace qid {

namespace {

void check_mu(double mu) {
  if (mu <= 0.0 || mu >= 1.0)
    throw std::invalid_argument("matrix ensemble: mu must lie in (0,1)");
}

std::vector<std::vector<int>> subsets_of_size(int d, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Iterative enumeration in lexicographic order.
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == r) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < d; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

MatrixEnsembleSpec MatrixEnsembleSpec::bernoulli_scalar(int dim, double mu) {
  check_mu(mu);
  if (dim < 1) throw std::invalid_argument("matrix ensemble: dim must be positive");
  return MatrixEnsembleSpec(Kind::BernoulliScalar, dim, mu);
}

MatrixEnsembleSpec MatrixEnsembleSpec::fixed(int dim, double mu) {
  if (mu < 0.0 || mu > 1.0)
    throw std::invalid_argument("matrix ensemble: mu must lie in [0,1]");
  if (dim < 1) throw std::invalid_argument("matrix ensemble: dim must be positive");
  return MatrixEnsembleSpec(Kind::Fixed, dim, mu);
}

MatrixEnsembleSpec MatrixEnsembleSpec::random_projector(int dim, double mu) {
  check_mu(mu);
  const double rank = mu * dim;
  const int r = static_cast<int>(std::lround(rank));
  if (std::abs(rank - r) > 1e-9 || r < 1 || r > dim - 1)
    throw std::invalid_argument(
        "matrix ensemble: random projector needs mu*d integral in [1, d-1]");
  MatrixEnsembleSpec spec(Kind::RandomProjector, dim, mu);
  spec.rank_ = r;
  return spec;
}

MatrixEnsembleSpec MatrixEnsembleSpec::custom(
    int dim, double mu, std::vector<std::pair<double, Matrix>> atoms) {
  if (atoms.empty())
    throw std::invalid_argument("matrix ensemble: custom needs atoms");
  Matrix mean = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (const auto& [p, x] : atoms) {
    if (p < 0.0) throw std::invalid_argument("matrix ensemble: negative probability");
    if (x.rows() != dim || x.cols() != dim)
      throw std::invalid_argument("matrix ensemble: atom dimension mismatch");
    if (!is_hermitian(x, kHermTol))
      throw std::invalid_argument("matrix ensemble: atom not Hermitian");
    const Eigen::VectorXd vals = hermitian_eigenvalues(x);
    if (vals.minCoeff() < -kPsdTol || vals.maxCoeff() > 1.0 + kPsdTol)
      throw std::invalid_argument("matrix ensemble: atom outside [0, 1]");
    mean.noalias() += p * x;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("matrix ensemble: probabilities must sum to 1");
  if ((mean - mu * Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("matrix ensemble: mean must equal mu * identity");
  MatrixEnsembleSpec spec(Kind::Custom, dim, mu);
  spec.atoms_ = std::move(atoms);
  return spec;
}

double chernoff_bound(long n, int d, double alpha, double mu, BoundForm form,
                      double eps) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("chernoff bound: n and d must be positive");
  if (form == BoundForm::Exact) {
    const bool upper_range = mu <= alpha && alpha <= 1.0;
    const bool lower_range = 0.0 <= alpha && alpha <= mu;
    if (!upper_range && !lower_range)
      throw std::invalid_argument("chernoff bound: alpha outside the valid ranges");
    return d * std::exp(-static_cast<double>(n) * binary_relative_entropy(alpha, mu));
  }
  if (eps < 0.0 || eps > 0.5)
    throw std::invalid_argument("chernoff bound: corollary needs 0 <= eps <= 1/2");
  return 2.0 * d * std::exp(-0.25 * static_cast<double>(n) * mu * eps * eps);
}

namespace {

struct TrialCounter {
  long hits = 0;
  long trials = 0;
};

bool escapes(double min_eig, double max_eig, double alpha,
             TailDirection direction, double mu) {
  switch (direction) {
    case TailDirection::Upper:
      return max_eig > alpha;
    case TailDirection::Lower:
      return min_eig < alpha;
    case TailDirection::TwoSided:
      // alpha is read as the relative width eps.
      return max_eig > (1.0 + alpha) * mu || min_eig < (1.0 - alpha) * mu;
  }
  return false;
}

}  // namespace

TailReport empirical_tail(const MatrixEnsembleSpec& spec, long n, double alpha,
                          TailDirection direction, long trials,
                          std::uint64_t seed) {
  if (n < 1 || trials < 1)
    throw std::invalid_argument("empirical tail: n and trials must be positive");

  long hits = 0;
  const int d = spec.dim();

  switch (spec.kind()) {
    case MatrixEnsembleSpec::Kind::Fixed: {
      // Deterministic mean: every trial gives mu * identity.
      const bool escape = escapes(spec.mu(), spec.mu(), alpha, direction, spec.mu());
      hits = escape ? trials : 0;
      break;
    }
    case MatrixEnsembleSpec::Kind::BernoulliScalar: {
      for (long t = 0; t < trials; ++t) {
        RandomStream rng(seed, static_cast<std::uint64_t>(t));
        long count = 0;
        for (long i = 0; i < n; ++i) count += rng.bernoulli(spec.mu()) ? 1 : 0;
        const double mean = static_cast<double>(count) / n;
        if (escapes(mean, mean, alpha, direction, spec.mu())) ++hits;
      }
      break;
    }
    case MatrixEnsembleSpec::Kind::RandomProjector: {
      const auto subsets = subsets_of_size(d, spec.projector_rank());
      std::vector<long> counts(d);
      for (long t = 0; t < trials; ++t) {
        RandomStream rng(seed, static_cast<std::uint64_t>(t));
        std::fill(counts.begin(), counts.end(), 0);
        for (long i = 0; i < n; ++i) {
          const auto& subset = subsets[rng.below(subsets.size())];
          for (int idx : subset) ++counts[idx];
        }
        double lo = 1.0, hi = 0.0;
        for (int j = 0; j < d; ++j) {
          const double v = static_cast<double>(counts[j]) / n;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (escapes(lo, hi, alpha, direction, spec.mu())) ++hits;
      }
      break;
    }
    case MatrixEnsembleSpec::Kind::Custom: {
      std::vector<double> cdf;
      double acc = 0.0;
      for (const auto& [p, x] : spec.atoms()) {
        acc += p;
        cdf.push_back(acc);
      }
      Matrix mean(d, d);
      for (long t = 0; t < trials; ++t) {
        RandomStream rng(seed, static_cast<std::uint64_t>(t));
        mean.setZero();
        for (long i = 0; i < n; ++i) {
          const double u = rng.uniform();
          std::size_t idx = 0;
          while (idx + 1 < cdf.size() && u > cdf[idx]) ++idx;
          mean += spec.atoms()[idx].second;
        }
        mean /= static_cast<double>(n);
        const Eigen::VectorXd vals = hermitian_eigenvalues(mean);
        if (escapes(vals.minCoeff(), vals.maxCoeff(), alpha, direction, spec.mu()))
          ++hits;
      }
      break;
    }
  }

  TailReport report;
  report.empirical = static_cast<double>(hits) / trials;
  report.ci_halfwidth = wilson95(hits, trials).halfwidth;
  report.n = n;
  report.trials = trials;
  report.direction = direction;
  if (direction == TailDirection::TwoSided)
    report.bound = chernoff_bound(n, d, 0.0, spec.mu(), BoundForm::Corollary, alpha);
  else
    report.bound = chernoff_bound(n, d, alpha, spec.mu(), BoundForm::Exact);
  return report;
}

BoundSuiteResult validate_bound(const std::vector<BoundCase>& cases,
                                long trials, std::uint64_t seed) {
  BoundSuiteResult result;
  result.all_pass = true;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const BoundCase& bc = cases[c];
    BoundCaseResult row{bc,
                        empirical_tail(bc.spec, bc.n, bc.alpha, bc.direction,
                                       trials, seed + c),
                        false};
    row.pass = row.report.empirical - row.report.ci_halfwidth <= row.report.bound;
    result.all_pass = result.all_pass && row.pass;
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<BoundCase> default_bound_suite() {
  std::vector<BoundCase> cases;
  for (int d : {2, 4})
    for (double mu : {0.25, 0.5})
      for (long n : {10L, 50L, 200L}) {
        const double rank = mu * d;
        const bool integral_rank =
            std::abs(rank - std::lround(rank)) < 1e-9 && std::lround(rank) >= 1;
        MatrixEnsembleSpec spec =
            integral_rank ? MatrixEnsembleSpec::random_projector(d, mu)
                          : MatrixEnsembleSpec::bernoulli_scalar(d, mu);
        const char* kind = integral_rank ? "proj" : "bern";
        char label[64];
        std::snprintf(label, sizeof(label), "%s_d%d_mu%g_n%ld", kind, d, mu, n);
        cases.push_back({label, spec, n, mu + 0.2, TailDirection::Upper});
      }
  return cases;
}

Wilson95 wilson95(long hits, long trials) {
  const double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  Wilson95 w;
  w.center = (phat + z2 / (2.0 * nt)) / denom;
  w.halfwidth =
      z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return w;
}

}  // namespace qid
