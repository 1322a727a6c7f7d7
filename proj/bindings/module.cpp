#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qid/capacity.hpp"
#include "qid/chernoff.hpp"
#include "qid/decoupling.hpp"
#include "qid/idcode.hpp"

namespace py = pybind11;
using namespace qid;

namespace {

Ensemble ensemble_from_pairs(
    const std::vector<std::pair<double, Matrix>>& pairs) {
  Ensemble ens;
  for (const auto& [p, m] : pairs) ens.push_back({p, DensityOperator(m)});
  return ens;
}

py::dict info_dict(const InfoReport& r) {
  py::dict d;
  d["mutual"] = r.mutual;
  d["coherent"] = r.coherent;
  d["entropy_b"] = r.entropy_b;
  d["entropy_ab"] = r.entropy_ab;
  d["entropy_a"] = r.entropy_a;
  return d;
}

py::dict capacity_dict(const CapacityResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  if (r.witness.input_state)
    d["input_state"] = r.witness.input_state->matrix();
  if (!r.witness.ensemble.empty()) {
    py::list ens;
    for (const EnsembleEntry& e : r.witness.ensemble)
      ens.append(py::make_tuple(e.probability, e.state.matrix()));
    d["ensemble"] = ens;
  }
  return d;
}

OptimizerOptions opts_from_kwargs(int restarts, int max_iters,
                                  std::uint64_t seed) {
  OptimizerOptions opts;
  opts.restarts = restarts;
  opts.max_iters = max_iters;
  opts.seed = seed;
  return opts;
}

}  // namespace

PYBIND11_MODULE(qidlab, m) {
  m.doc() = "Numerical laboratory for identification via quantum channels";

  py::register_exception<InfeasibleError>(m, "InfeasibleError");

  // ----- states -----
  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init<Matrix>())
      .def_property_readonly("dim", &DensityOperator::dim)
      .def_property_readonly("matrix", &DensityOperator::matrix);

  py::class_<PureState>(m, "PureState")
      .def(py::init<Vector>())
      .def_property_readonly("dim", &PureState::dim)
      .def_property_readonly("amplitudes", &PureState::amplitudes)
      .def("projector", &PureState::projector);

  py::enum_<Subsystem>(m, "Subsystem")
      .value("A", Subsystem::A)
      .value("B", Subsystem::B);

  m.def("partial_trace",
        [](const Matrix& joint, Subsystem keep, int da, int db) {
          return partial_trace(DensityOperator(joint), keep, da, db).matrix();
        },
        py::arg("joint"), py::arg("keep"), py::arg("dim_a"), py::arg("dim_b"));
  m.def("trace_distance", [](const Matrix& a, const Matrix& b) {
    return trace_distance(DensityOperator(a), DensityOperator(b));
  });
  m.def("purify", [](const Matrix& rho) {
    return purify(DensityOperator(rho)).amplitudes();
  });
  m.def("maximally_mixed", [](int d) { return maximally_mixed(d).matrix(); });
  m.def("maximally_entangled",
        [](int d) { return maximally_entangled(d).amplitudes(); });

  // ----- channels -----
  py::class_<QuantumChannel>(m, "QuantumChannel")
      .def(py::init<int, int, std::vector<Matrix>, std::string>(),
           py::arg("dim_in"), py::arg("dim_out"), py::arg("kraus"),
           py::arg("label") = "")
      .def_property_readonly("dim_in", &QuantumChannel::dim_in)
      .def_property_readonly("dim_out", &QuantumChannel::dim_out)
      .def_property_readonly("kraus", &QuantumChannel::kraus)
      .def_property_readonly("label", &QuantumChannel::label)
      .def("apply", [](const QuantumChannel& ch, const Matrix& rho) {
        return ch.apply(DensityOperator(rho)).matrix();
      });

  py::class_<StinespringIsometry>(m, "StinespringIsometry")
      .def_readonly("dim_in", &StinespringIsometry::dim_in)
      .def_readonly("dim_out", &StinespringIsometry::dim_out)
      .def_readonly("dim_env", &StinespringIsometry::dim_env)
      .def_readonly("matrix", &StinespringIsometry::matrix);

  py::class_<Povm>(m, "Povm")
      .def(py::init<std::vector<Matrix>>())
      .def_property_readonly("elements", &Povm::elements);

  m.def("identity_channel", &identity_channel);
  m.def("erasure_channel", &erasure_channel);
  m.def("depolarizing_channel", &depolarizing_channel);
  m.def("dephasing_channel", &dephasing_channel);
  m.def("classical_channel", &classical_channel);
  m.def("binary_symmetric_channel", &binary_symmetric_channel);
  m.def("cq_channel", [](const std::vector<Matrix>& states) {
    std::vector<DensityOperator> ops;
    for (const Matrix& s : states) ops.emplace_back(s);
    return cq_channel(ops);
  });
  m.def("qc_channel", &qc_channel);
  m.def("validate_cptp", [](const QuantumChannel& ch) {
    const ValidationReport r = validate_cptp(ch);
    py::dict d;
    d["trace_residual"] = r.trace_residual;
    d["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
    d["passes"] = r.passes;
    return d;
  });
  m.def("choi_matrix", &choi_matrix);
  m.def("complementary", [](const QuantumChannel& ch) {
    auto [v, comp] = complementary(ch);
    return py::make_tuple(v, comp);
  });
  m.def("tensor_product", &tensor_product);
  m.def("compose", [](const QuantumChannel& first, const QuantumChannel& then) {
    return combine({first, then}, CombineMode::Compose);
  });

  // ----- entropy -----
  m.def("von_neumann_entropy",
        [](const Matrix& rho) { return von_neumann_entropy(DensityOperator(rho)); });
  m.def("binary_relative_entropy", &binary_relative_entropy);
  m.def("channel_information",
        [](const QuantumChannel& ch, const Matrix& rho) {
          return info_dict(channel_information(ch, DensityOperator(rho)));
        });
  m.def("holevo_quantity",
        [](const QuantumChannel& ch,
           const std::vector<std::pair<double, Matrix>>& ensemble) {
          return holevo_quantity(ch, ensemble_from_pairs(ensemble));
        });

  // ----- capacity -----
  auto cap = [](CapacityResult (*fn)(const QuantumChannel&,
                                     const OptimizerOptions&)) {
    return [fn](const QuantumChannel& ch, int restarts, int max_iters,
                std::uint64_t seed) {
      return capacity_dict(fn(ch, opts_from_kwargs(restarts, max_iters, seed)));
    };
  };
  m.def("c1_capacity", cap(&c1_capacity), py::arg("channel"),
        py::arg("restarts") = 8, py::arg("max_iters") = 600, py::arg("seed") = 0);
  m.def("q1_capacity", cap(&q1_capacity), py::arg("channel"),
        py::arg("restarts") = 8, py::arg("max_iters") = 600, py::arg("seed") = 0);
  m.def("ce_capacity", cap(&ce_capacity), py::arg("channel"),
        py::arg("restarts") = 8, py::arg("max_iters") = 600, py::arg("seed") = 0);
  m.def("qid1_capacity", cap(&qid1_capacity), py::arg("channel"),
        py::arg("restarts") = 8, py::arg("max_iters") = 600, py::arg("seed") = 0);
  m.def("sufficiently_low_noise",
        [](const QuantumChannel& ch, int restarts, int max_iters,
           std::uint64_t seed) {
          const LowNoiseReport r = sufficiently_low_noise(
              ch, opts_from_kwargs(restarts, max_iters, seed));
          py::dict d;
          d["low_noise"] = r.low_noise;
          d["mutual"] = r.mutual;
          d["coherent"] = r.coherent;
          if (r.witness) d["witness"] = r.witness->matrix();
          return d;
        },
        py::arg("channel"), py::arg("restarts") = 8, py::arg("max_iters") = 600,
        py::arg("seed") = 0);
  m.def("erasure_curves", [](const std::vector<double>& qs) {
    py::list rows;
    for (const ErasureCurveRow& r : erasure_curves(qs)) {
      py::dict d;
      d["q"] = r.q;
      d["c1"] = r.c1;
      d["q1"] = r.q1;
      d["ce"] = r.ce;
      d["old_id_bound"] = r.old_id_bound;
      d["new_id_bound"] = r.new_id_bound;
      d["amortization_lower"] = r.amortization_lower;
      rows.append(d);
    }
    return rows;
  });

  // ----- identification codes -----
  py::class_<ClassicalIdCode>(m, "ClassicalIdCode")
      .def(py::init([](int dim,
                       const std::vector<std::pair<Matrix, Matrix>>& entries) {
        std::vector<ClassicalIdEntry> es;
        for (const auto& [rho, test] : entries)
          es.push_back({DensityOperator(rho), test});
        return ClassicalIdCode(dim, std::move(es));
      }))
      .def_property_readonly("size", &ClassicalIdCode::size)
      .def_property_readonly("channel_dim_in", &ClassicalIdCode::channel_dim_in);

  py::class_<IdVerificationReport>(m, "IdVerificationReport")
      .def_readonly("lambda1", &IdVerificationReport::lambda1)
      .def_readonly("lambda2", &IdVerificationReport::lambda2)
      .def_readonly("pair_count", &IdVerificationReport::pair_count);

  m.def("verify_classical_id", &verify_classical_id);
  m.def("fingerprint_generate",
        [](int dim, int count, double max_overlap, std::uint64_t seed) {
          py::list out;
          for (const PureState& s :
               fingerprint_generate(dim, count, max_overlap, seed))
            out.append(s.amplitudes());
          return out;
        },
        py::arg("dim"), py::arg("count"), py::arg("max_overlap"),
        py::arg("seed") = 0);
  m.def("fingerprint_achievable_count", &fingerprint_achievable_count,
        py::arg("dim"), py::arg("max_overlap"), py::arg("seed"),
        py::arg("draw_budget") = 4000);

  py::class_<RsIdCode>(m, "RsIdCode")
      .def(py::init<std::uint32_t, std::uint32_t>(), py::arg("field_order"),
           py::arg("degree_bound"))
      .def_property_readonly("field_order", &RsIdCode::field_order)
      .def_property_readonly("degree_bound", &RsIdCode::degree_bound)
      .def_property_readonly("message_count", &RsIdCode::message_count)
      .def("eval", &RsIdCode::eval)
      .def("support", &RsIdCode::support)
      .def("lambda2_bound", &RsIdCode::lambda2_bound);

  m.def("rs_channel", &rs_channel);
  m.def("rs_materialize", &rs_materialize);
  m.def("rs_verify_exhaustive", &rs_verify_exhaustive);
  m.def("rs_verify_sampled", &rs_verify_sampled);

  py::class_<QuantumIdCode>(m, "QuantumIdCode")
      .def_readonly("code_dim", &QuantumIdCode::code_dim);

  py::class_<QuantumIdReport>(m, "QuantumIdReport")
      .def_readonly("epsilon", &QuantumIdReport::epsilon)
      .def_readonly("test_set_size", &QuantumIdReport::test_set_size);

  m.def("projector_code", &projector_code);
  m.def("embedded_projector_code", &embedded_projector_code);
  m.def("pushforward_code", &pushforward_code);
  m.def("verify_quantum_id", &verify_quantum_id, py::arg("code"),
        py::arg("channel"), py::arg("trials") = 200, py::arg("seed") = 0);

  // ----- decoupling -----
  py::class_<DecouplingReport>(m, "DecouplingReport")
      .def_readonly("delta", &DecouplingReport::delta)
      .def_readonly("epsilon_bound", &DecouplingReport::epsilon_bound)
      .def_readonly("geometry_gap_max", &DecouplingReport::geometry_gap_max)
      .def_readonly("geometry_gap_min", &DecouplingReport::geometry_gap_min)
      .def_readonly("mu", &DecouplingReport::mu)
      .def_readonly("lambda_", &DecouplingReport::lambda)
      .def_readonly("eta", &DecouplingReport::eta)
      .def_readonly("test_set_size", &DecouplingReport::test_set_size);

  py::class_<DualityCheck>(m, "DualityCheck")
      .def_readonly("report", &DualityCheck::report)
      .def_readonly("pass_", &DualityCheck::pass)
      .def_readonly("epsilon", &DualityCheck::epsilon);

  m.def("forgetfulness",
        [](const QuantumChannel& ch, const Matrix& basis, int trials,
           std::uint64_t seed) {
          const ForgetfulnessResult r = forgetfulness(ch, basis, trials, seed);
          return py::make_tuple(r.delta, r.test_set_size);
        },
        py::arg("channel"), py::arg("code_basis"), py::arg("trials") = 200,
        py::arg("seed") = 0);
  m.def("check_id_implies_forgetful", &check_id_implies_forgetful,
        py::arg("code"), py::arg("channel"), py::arg("trials") = 200,
        py::arg("seed") = 0);
  m.def("check_forgetful_implies_geometry", &check_forgetful_implies_geometry,
        py::arg("channel"), py::arg("code_basis"), py::arg("trials") = 200,
        py::arg("seed") = 0);

  // ----- concentration bounds -----
  py::enum_<TailDirection>(m, "TailDirection")
      .value("Upper", TailDirection::Upper)
      .value("Lower", TailDirection::Lower)
      .value("TwoSided", TailDirection::TwoSided);

  py::class_<MatrixEnsembleSpec>(m, "MatrixEnsembleSpec")
      .def_static("bernoulli_scalar", &MatrixEnsembleSpec::bernoulli_scalar)
      .def_static("fixed", &MatrixEnsembleSpec::fixed)
      .def_static("random_projector", &MatrixEnsembleSpec::random_projector)
      .def_static("custom", &MatrixEnsembleSpec::custom);

  m.def("chernoff_bound",
        [](long n, int d, double alpha, double mu, const std::string& form,
           double eps) {
          return chernoff_bound(n, d, alpha, mu,
                                form == "corollary" ? BoundForm::Corollary
                                                    : BoundForm::Exact,
                                eps);
        },
        py::arg("n"), py::arg("d"), py::arg("alpha"), py::arg("mu"),
        py::arg("form") = "exact", py::arg("eps") = 0.0);
  m.def("empirical_tail",
        [](const MatrixEnsembleSpec& spec, long n, double alpha,
           TailDirection dir, long trials, std::uint64_t seed) {
          const TailReport r = empirical_tail(spec, n, alpha, dir, trials, seed);
          py::dict d;
          d["empirical"] = r.empirical;
          d["ci_halfwidth"] = r.ci_halfwidth;
          d["bound"] = r.bound;
          d["n"] = r.n;
          d["trials"] = r.trials;
          return d;
        },
        py::arg("spec"), py::arg("n"), py::arg("alpha"), py::arg("direction"),
        py::arg("trials") = 100000, py::arg("seed") = 0);
  m.def("validate_default_bound_suite",
        [](long trials, std::uint64_t seed) {
          const BoundSuiteResult r = validate_bound(default_bound_suite(), trials, seed);
          py::list rows;
          for (const BoundCaseResult& row : r.rows) {
            py::dict d;
            d["case"] = row.bound_case.label;
            d["empirical"] = row.report.empirical;
            d["ci_halfwidth"] = row.report.ci_halfwidth;
            d["bound"] = row.report.bound;
            d["pass"] = row.pass;
            rows.append(d);
          }
          return py::make_tuple(r.all_pass, rows);
        },
        py::arg("trials") = 100000, py::arg("seed") = 1);
}
