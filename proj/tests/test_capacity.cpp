#include <doctest.h>

#include <cmath>

#include "qid/capacity.hpp"

using namespace qid;

namespace {

OptimizerOptions fast_opts(std::uint64_t seed = 42, int restarts = 6,
                           int max_iters = 400) {
  OptimizerOptions opts;
  opts.restarts = restarts;
  opts.max_iters = max_iters;
  opts.seed = seed;
  return opts;
}

double h2(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

// Grid-search oracle for the coherent information of the erasure channel:
// scan diagonal qubit inputs (the objective depends only on the spectrum).
double erasure_coherent_grid_oracle(double q) {
  const QuantumChannel ch = erasure_channel(q);
  double best = -10.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 200.0;
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = t;
    rho(1, 1) = 1.0 - t;
    best = std::max(best,
                    channel_information(ch, DensityOperator(rho)).coherent);
  }
  return best;
}

}  // namespace

TEST_SUITE("capacity") {

TEST_CASE("erasure curves match the closed forms") {
  const std::vector<double> qs{0.0, 0.25, 0.4, 0.5, 0.75, 1.0};
  const auto rows = erasure_curves(qs);
  for (const ErasureCurveRow& r : rows) {
    CHECK(r.c1 == 1.0 - r.q);
    CHECK(r.q1 == std::max(0.0, 1.0 - 2.0 * r.q));
    CHECK(r.ce == 2.0 - 2.0 * r.q);
    CHECK(r.old_id_bound == ((r.q <= 1.0 / 3.0) ? 2.0 - 4.0 * r.q : 1.0 - r.q));
    CHECK(r.new_id_bound == ((r.q < 0.5) ? 2.0 - 2.0 * r.q : 1.0 - r.q));
    CHECK(r.amortization_lower == std::max(0.0, 2.0 * r.q - 1.0));
  }
  // Spot values as printed in the source material's piecewise forms.
  CHECK(rows[1].old_id_bound == doctest::Approx(1.0));
  CHECK(rows[1].new_id_bound == doctest::Approx(1.5));
  CHECK(rows[2].old_id_bound == doctest::Approx(0.6));
  CHECK(rows[2].new_id_bound == doctest::Approx(1.2));
  CHECK(rows[4].amortization_lower == doctest::Approx(0.5));

  CHECK_THROWS_AS(erasure_curves({1.5}), std::invalid_argument);
}

TEST_CASE("c1 on the identity and erasure channels") {
  CHECK(c1_capacity(identity_channel(2), fast_opts()).value ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(c1_capacity(erasure_channel(0.3), fast_opts()).value ==
        doctest::Approx(0.7).epsilon(2e-3));
}

TEST_CASE("c1 on the binary symmetric channel matches the Shannon formula") {
  // Independent oracle: 1 - h(flip).
  const double oracle = 1.0 - h2(0.1);
  const CapacityResult r = c1_capacity(binary_symmetric_channel(0.1), fast_opts());
  CHECK(r.value == doctest::Approx(oracle).epsilon(2e-3));
  CHECK(r.value == doctest::Approx(0.5310).epsilon(2e-3));
}

TEST_CASE("c1 witness reproduces the reported value") {
  const CapacityResult r = c1_capacity(erasure_channel(0.3), fast_opts());
  CHECK(r.value ==
        doctest::Approx(holevo_quantity(erasure_channel(0.3), r.witness.ensemble))
            .epsilon(1e-12));
  CHECK(r.witness.ensemble.size() <= 4);
}

TEST_CASE("q1 on identity and erasure channels") {
  CHECK(q1_capacity(identity_channel(2), fast_opts()).value ==
        doctest::Approx(1.0).epsilon(1e-3));
  CHECK(q1_capacity(erasure_channel(0.3), fast_opts()).value ==
        doctest::Approx(0.4).epsilon(1e-3));
}

TEST_CASE("q1 on a high-noise erasure channel is zero, via the grid oracle") {
  const double oracle = erasure_coherent_grid_oracle(0.6);
  CHECK(oracle == doctest::Approx(0.0).epsilon(1e-9));
  const CapacityResult r = q1_capacity(erasure_channel(0.6), fast_opts());
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(r.value <= oracle + 1e-9);
}

TEST_CASE("ce on identity and erasure channels") {
  CHECK(ce_capacity(identity_channel(2), fast_opts()).value ==
        doctest::Approx(2.0).epsilon(1e-3));
  CHECK(ce_capacity(erasure_channel(0.3), fast_opts()).value ==
        doctest::Approx(1.4).epsilon(1e-3));
  CHECK(ce_capacity(erasure_channel(1.0), fast_opts()).value ==
        doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("qid1 equals ce for low noise and vanishes for high noise") {
  const CapacityResult low = qid1_capacity(erasure_channel(0.25), fast_opts());
  CHECK(low.value == doctest::Approx(1.5).epsilon(2e-3));

  const CapacityResult high = qid1_capacity(erasure_channel(0.6), fast_opts());
  CHECK(high.value == 0.0);
  CHECK_FALSE(high.witness.input_state.has_value());
  CHECK(high.witness.ensemble.empty());

  CHECK(qid1_capacity(identity_channel(2), fast_opts()).value ==
        doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("sufficiently low noise flag across the erasure family") {
  CHECK(sufficiently_low_noise(identity_channel(2), fast_opts()).low_noise);
  CHECK(sufficiently_low_noise(erasure_channel(0.25), fast_opts()).low_noise);
  CHECK_FALSE(sufficiently_low_noise(erasure_channel(0.6), fast_opts()).low_noise);
}

TEST_CASE("reported value never decreases with more restarts") {
  const QuantumChannel ch = depolarizing_channel(0.2);
  const double v2 = c1_capacity(ch, fast_opts(7, 2, 200)).value;
  const double v5 = c1_capacity(ch, fast_opts(7, 5, 200)).value;
  CHECK(v5 >= v2 - 1e-12);
}

TEST_CASE("ordering relations between the capacity functionals") {
  for (const QuantumChannel& ch :
       {erasure_channel(0.25), erasure_channel(0.6), depolarizing_channel(0.1),
        dephasing_channel(2)}) {
    const OptimizerOptions opts = fast_opts(11, 4, 300);
    const double ce = ce_capacity(ch, opts).value;
    CHECK(qid1_capacity(ch, opts).value <= ce + 1e-6);
    CHECK(q1_capacity(ch, opts).value <= ce + 1e-6);
  }
}

TEST_CASE("two-copy spot check at q = 1/4") {
  const OptimizerOptions single = fast_opts(3, 4, 300);
  const double one = c1_capacity(erasure_channel(0.25), single).value;
  const QuantumChannel doubled = combine(
      {erasure_channel(0.25), erasure_channel(0.25)}, CombineMode::Tensor);
  OptimizerOptions pair_opts = fast_opts(3, 2, 60);
  const double two = c1_capacity(doubled, pair_opts).value;
  CHECK(two >= 2.0 * one - 5e-3);
}

TEST_CASE("optimizers reject inputs above desk scale") {
  CHECK_THROWS_AS(c1_capacity(identity_channel(9), fast_opts()),
                  std::invalid_argument);
}

}  // TEST_SUITE
