#include "qid/capacity.hpp"

#include <cmath>
#include <functional>

namespace qid {

namespace {

// ---------------------------------------------------------------------
// Multi-start ascent with central finite-difference gradients and a
// backtracking/expanding step. The landscapes here are smooth and the
// dimensions small, so derivative-free robustness is affordable.
// ---------------------------------------------------------------------

struct AscentControls {
  int max_iters = 2000;
  double step_tol = 1e-9;
  double fd_step = 1e-6;
  double init_step = 0.25;
  double max_step = 4.0;
};

struct AscentOutcome {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentOutcome ascend(const std::function<double(const Eigen::VectorXd&)>& f,
                     Eigen::VectorXd x, const AscentControls& c) {
  double fx = f(x);
  double step = c.init_step;
  Eigen::VectorXd grad(x.size());
  AscentOutcome out;
  int it = 0;
  for (; it < c.max_iters; ++it) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double saved = x[i];
      x[i] = saved + c.fd_step;
      const double fp = f(x);
      x[i] = saved - c.fd_step;
      const double fm = f(x);
      x[i] = saved;
      grad[i] = (fp - fm) / (2.0 * c.fd_step);
    }
    const double gnorm = grad.norm();
    if (gnorm < 1e-9) {
      out.converged = true;
      break;
    }
    bool moved = false;
    while (step >= c.step_tol) {
      Eigen::VectorXd trial = x + (step / gnorm) * grad;
      const double ft = f(trial);
      if (ft > fx + 1e-14) {
        x.swap(trial);
        fx = ft;
        step = std::min(step * 1.6, c.max_step);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  out.iterations = it;
  return out;
}

// ---------------------------------------------------------------------
// Smooth parameterizations of states and ensembles.
// ---------------------------------------------------------------------

Matrix full_rank_state(const Eigen::VectorXd& x, int d) {
  Matrix g(d, d);
  int k = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      g(r, c) = Complex(x[k], x[k + 1]);
      k += 2;
    }
  Matrix h = g * g.adjoint();
  double tr = h.trace().real();
  if (tr < 1e-18) {
    h = Matrix::Identity(d, d);
    tr = d;
  }
  h /= tr;
  return 0.5 * (h + h.adjoint());
}

Matrix pure_state_matrix(const Eigen::VectorXd& x, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = Complex(x[2 * i], x[2 * i + 1]);
  double n2 = v.squaredNorm();
  if (n2 < 1e-18) {
    v.setZero();
    v[0] = 1.0;
    n2 = 1.0;
  }
  Matrix p = (v * v.adjoint()) / n2;
  return p;
}

DensityOperator to_state(Matrix m) {
  m = 0.5 * (m + m.adjoint());
  m /= m.trace().real();
  return DensityOperator(std::move(m));
}

void require_desk_scale(const QuantumChannel& channel) {
  if (channel.dim_in() > kMaxOptimizerDim)
    throw std::invalid_argument("capacity optimizer: input dimension above desk scale");
}

// Per-restart starting points. Restart 0 begins at the maximally mixed
// state, restart 1 at a basis state; later restarts alternate random
// full-rank and random pure starts.
struct StateStart {
  Eigen::VectorXd x;
  bool pure = false;
};

StateStart state_start(int restart, int d, RandomStream& rng) {
  StateStart s;
  if (restart == 0) {
    s.pure = false;
    s.x = Eigen::VectorXd::Zero(2 * d * d);
    for (int i = 0; i < d; ++i) s.x[2 * (i * d + i)] = 1.0;
    return s;
  }
  if (restart == 1) {
    s.pure = true;
    s.x = Eigen::VectorXd::Zero(2 * d);
    s.x[0] = 1.0;
    return s;
  }
  s.pure = (restart % 2 == 1);
  const int n = s.pure ? 2 * d : 2 * d * d;
  s.x.resize(n);
  for (int i = 0; i < n; ++i) s.x[i] = rng.normal();
  return s;
}

// Maximize a function of a density matrix over all input states.
struct StateOptResult {
  double value = 0.0;
  Matrix state;
  int iterations = 0;
  bool converged = false;
};

StateOptResult optimize_over_states(
    const std::function<double(const Matrix&)>& objective, int d,
    const OptimizerOptions& opts) {
  StateOptResult best;
  best.value = -std::numeric_limits<double>::infinity();
  AscentControls controls;
  controls.max_iters = opts.max_iters;
  controls.step_tol = opts.step_tol;
  for (int r = 0; r < std::max(opts.restarts, 1); ++r) {
    RandomStream rng(opts.seed, static_cast<std::uint64_t>(r));
    StateStart start = state_start(r, d, rng);
    const bool pure = start.pure;
    auto f = [&](const Eigen::VectorXd& x) {
      return objective(pure ? pure_state_matrix(x, d) : full_rank_state(x, d));
    };
    AscentOutcome out = ascend(f, std::move(start.x), controls);
    best.iterations += out.iterations;
    if (out.value > best.value) {
      best.value = out.value;
      best.state = pure ? pure_state_matrix(out.x, d) : full_rank_state(out.x, d);
      best.converged = out.converged;
    }
  }
  return best;
}

// Ensemble of `m` pure states with softmax probabilities.
struct EnsembleParams {
  int d = 0;
  int m = 0;
};

Ensemble decode_ensemble(const Eigen::VectorXd& x, const EnsembleParams& p) {
  Ensemble ens;
  double zmax = -std::numeric_limits<double>::infinity();
  const int state_len = 2 * p.d;
  for (int s = 0; s < p.m; ++s)
    zmax = std::max(zmax, x[p.m * state_len + s]);
  double zsum = 0.0;
  std::vector<double> w(p.m);
  for (int s = 0; s < p.m; ++s) {
    w[s] = std::exp(x[p.m * state_len + s] - zmax);
    zsum += w[s];
  }
  for (int s = 0; s < p.m; ++s) {
    Eigen::VectorXd part = x.segment(s * state_len, state_len);
    ens.push_back(
        {w[s] / zsum, DensityOperator(pure_state_matrix(part, p.d))});
  }
  return ens;
}

}  // namespace

CapacityResult c1_capacity(const QuantumChannel& channel,
                           const OptimizerOptions& opts) {
  require_desk_scale(channel);
  const int d = channel.dim_in();
  const int m = d * d;  // support size cap for an optimal ensemble
  const int state_len = 2 * d;
  const int nparams = m * state_len + m;

  // chi of the output ensemble, evaluated matrix-level for speed.
  auto chi = [&](const Eigen::VectorXd& x) {
    double zmax = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < m; ++s) zmax = std::max(zmax, x[m * state_len + s]);
    double zsum = 0.0;
    std::vector<double> w(m);
    for (int s = 0; s < m; ++s) {
      w[s] = std::exp(x[m * state_len + s] - zmax);
      zsum += w[s];
    }
    Matrix average = Matrix::Zero(channel.dim_out(), channel.dim_out());
    double mean_entropy = 0.0;
    for (int s = 0; s < m; ++s) {
      const double prob = w[s] / zsum;
      const Matrix rho = pure_state_matrix(x.segment(s * state_len, state_len), d);
      const Matrix out = channel.apply_matrix(rho);
      average.noalias() += prob * out;
      mean_entropy += prob * entropy_bits(out);
    }
    return entropy_bits(average) - mean_entropy;
  };

  AscentControls controls;
  controls.max_iters = opts.max_iters;
  controls.step_tol = opts.step_tol;

  CapacityResult best;
  best.value = -1.0;
  Eigen::VectorXd best_x;
  for (int r = 0; r < std::max(opts.restarts, 1); ++r) {
    RandomStream rng(opts.seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXd x0(nparams);
    if (r == 0) {
      // Canonical start: uniform ensemble cycling the computational basis.
      x0.setZero();
      for (int s = 0; s < m; ++s) x0[s * state_len + 2 * (s % d)] = 1.0;
    } else {
      for (int i = 0; i < nparams; ++i) x0[i] = rng.normal();
    }
    AscentOutcome out = ascend(chi, std::move(x0), controls);
    best.iterations += out.iterations;
    if (out.value > best.value) {
      best.value = out.value;
      best_x = out.x;
      best.converged = out.converged;
    }
  }

  best.witness.ensemble = decode_ensemble(best_x, {d, m});
  // Final value recomputed from the witness through the entropy module.
  best.value = holevo_quantity(channel, best.witness.ensemble);
  return best;
}

CapacityResult q1_capacity(const QuantumChannel& channel,
                           const OptimizerOptions& opts) {
  require_desk_scale(channel);
  const auto [isometry, complement] = complementary(channel);
  (void)isometry;
  auto coherent = [&](const Matrix& rho) {
    return entropy_bits(channel.apply_matrix(rho)) -
           entropy_bits(complement.apply_matrix(rho));
  };
  StateOptResult opt = optimize_over_states(coherent, channel.dim_in(), opts);

  CapacityResult result;
  result.iterations = opt.iterations;
  result.converged = opt.converged;
  result.witness.input_state = to_state(opt.state);
  result.value = channel_information(channel, *result.witness.input_state).coherent;
  return result;
}

CapacityResult ce_capacity(const QuantumChannel& channel,
                           const OptimizerOptions& opts) {
  require_desk_scale(channel);
  auto mutual = [&](const Matrix& rho) {
    return channel_information(channel, to_state(rho)).mutual;
  };
  StateOptResult opt = optimize_over_states(mutual, channel.dim_in(), opts);

  CapacityResult result;
  result.iterations = opt.iterations;
  result.converged = opt.converged;
  result.witness.input_state = to_state(opt.state);
  result.value = channel_information(channel, *result.witness.input_state).mutual;
  return result;
}

CapacityResult qid1_capacity(const QuantumChannel& channel,
                             const OptimizerOptions& opts) {
  require_desk_scale(channel);

  CapacityResult unconstrained = ce_capacity(channel, opts);
  const InfoReport at_max =
      channel_information(channel, *unconstrained.witness.input_state);
  if (at_max.coherent > kStrictPositiveEps) {
    // Constraint inactive at the mutual-information maximizer.
    return unconstrained;
  }

  CapacityResult coh = q1_capacity(channel, opts);
  CapacityResult result;
  result.iterations = unconstrained.iterations + coh.iterations;
  if (coh.value <= kStrictPositiveEps) {
    // No input has strictly positive coherent information.
    result.value = 0.0;
    result.converged = unconstrained.converged && coh.converged;
    return result;
  }

  // Feasible region nonempty but the unconstrained maximizer sits outside
  // it: ascend a hinge-penalized objective from the feasible start and
  // keep the best feasible iterate.
  const int d = channel.dim_in();
  constexpr double kPenalty = 64.0;
  double best_feasible = 0.0;
  Matrix best_state = coh.witness.input_state->matrix();
  {
    const InfoReport r0 = channel_information(channel, *coh.witness.input_state);
    best_feasible = r0.mutual;
  }
  auto penalized = [&](const Matrix& rho) {
    const InfoReport r = channel_information(channel, to_state(rho));
    const double slack = r.coherent - 2.0 * kStrictPositiveEps;
    if (slack >= 0.0 && r.mutual > best_feasible &&
        r.coherent > kStrictPositiveEps) {
      best_feasible = r.mutual;
      best_state = rho;
    }
    return r.mutual + kPenalty * std::min(slack, 0.0);
  };
  StateOptResult opt = optimize_over_states(penalized, d, opts);
  result.iterations += opt.iterations;
  result.converged = opt.converged;
  result.witness.input_state = to_state(best_state);
  result.value = channel_information(channel, *result.witness.input_state).mutual;
  return result;
}

LowNoiseReport sufficiently_low_noise(const QuantumChannel& channel,
                                      const OptimizerOptions& opts) {
  CapacityResult ce = ce_capacity(channel, opts);
  const InfoReport at_max = channel_information(channel, *ce.witness.input_state);
  LowNoiseReport report;
  report.low_noise = at_max.coherent > kStrictPositiveEps;
  report.witness = ce.witness.input_state;
  report.mutual = at_max.mutual;
  report.coherent = at_max.coherent;
  return report;
}

std::vector<ErasureCurveRow> erasure_curves(const std::vector<double>& q_values) {
  std::vector<ErasureCurveRow> rows;
  rows.reserve(q_values.size());
  for (double q : q_values) {
    if (q < 0.0 || q > 1.0)
      throw std::invalid_argument("erasure curves: q must lie in [0,1]");
    ErasureCurveRow row;
    row.q = q;
    row.c1 = 1.0 - q;
    row.q1 = std::max(0.0, 1.0 - 2.0 * q);
    row.ce = 2.0 - 2.0 * q;
    row.old_id_bound = (q <= 1.0 / 3.0) ? 2.0 - 4.0 * q : 1.0 - q;
    // The published lower bound jumps at q = 1/2; kept as printed.
    row.new_id_bound = (q < 0.5) ? 2.0 - 2.0 * q : 1.0 - q;
    row.amortization_lower = std::max(0.0, 2.0 * q - 1.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qid
