#include "qid/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace qid {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix json: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix json: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& cell = row.at(c);
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument("matrix json: entries must be [re, im]");
      m(r, c) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

Json state_to_json(const DensityOperator& rho) {
  return Json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityOperator state_from_json(const Json& j) {
  Matrix m = matrix_from_json(j.at("matrix"));
  if (j.contains("dim") && j.at("dim").get<int>() != m.rows())
    throw std::invalid_argument("state json: dim field disagrees with matrix");
  return DensityOperator(std::move(m));
}

Json pure_to_json(const PureState& psi) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    amps.push_back({psi.amplitudes()[i].real(), psi.amplitudes()[i].imag()});
  return Json{{"dim", psi.dim()}, {"amplitudes", std::move(amps)}};
}

PureState pure_from_json(const Json& j) {
  const Json& amps = j.at("amplitudes");
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i)
    v[static_cast<Eigen::Index>(i)] =
        Complex(amps.at(i).at(0).get<double>(), amps.at(i).at(1).get<double>());
  return PureState(std::move(v));
}

Json channel_to_json(const QuantumChannel& channel) {
  Json kraus = Json::array();
  for (const Matrix& k : channel.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"dim_in", channel.dim_in()},
              {"dim_out", channel.dim_out()},
              {"kraus", std::move(kraus)},
              {"label", channel.label()}};
}

namespace {

QuantumChannel standard_from_json(const Json& j) {
  const std::string name = j.at("standard").get<std::string>();
  if (name == "identity") return identity_channel(j.value("dim", 2));
  if (name == "erasure") return erasure_channel(j.at("q").get<double>());
  if (name == "depolarizing") return depolarizing_channel(j.at("p").get<double>());
  if (name == "dephasing") return dephasing_channel(j.value("dim", 2));
  if (name == "bsc") return binary_symmetric_channel(j.at("flip").get<double>());
  if (name == "classical") {
    const Json& kj = j.at("kernel");
    const auto rows = static_cast<Eigen::Index>(kj.size());
    const auto cols = static_cast<Eigen::Index>(kj.at(0).size());
    Eigen::MatrixXd kernel(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        kernel(r, c) = kj.at(r).at(c).get<double>();
    return classical_channel(kernel);
  }
  if (name == "cq") {
    std::vector<DensityOperator> states;
    for (const Json& sj : j.at("states")) states.push_back(state_from_json(sj));
    return cq_channel(states);
  }
  if (name == "qc") {
    std::vector<Matrix> elements;
    for (const Json& ej : j.at("povm")) elements.push_back(matrix_from_json(ej));
    return qc_channel(Povm(std::move(elements)));
  }
  throw std::invalid_argument("channel json: unknown standard channel '" + name + "'");
}

}  // namespace

QuantumChannel channel_from_json(const Json& j) {
  QuantumChannel channel = [&] {
    if (j.contains("standard")) return standard_from_json(j);
    std::vector<Matrix> kraus;
    for (const Json& kj : j.at("kraus")) kraus.push_back(matrix_from_json(kj));
    return QuantumChannel(j.at("dim_in").get<int>(), j.at("dim_out").get<int>(),
                          std::move(kraus), j.value("label", ""));
  }();
  const ValidationReport report = validate_cptp(channel);
  if (!report.passes)
    throw std::invalid_argument(
        "channel json: cptp validation failed (trace residual " +
        format_double(report.trace_residual) + ", min choi eigenvalue " +
        format_double(report.min_choi_eigenvalue) + ")");
  return channel;
}

QuantumChannel parse_channel_spec(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("channel spec: empty");
  if (spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("channel spec: cannot open " + spec.substr(1));
    Json j;
    in >> j;
    return channel_from_json(j);
  }
  if (spec.front() == '{') return channel_from_json(Json::parse(spec));

  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  Json j{{"standard", name}};
  if (name == "identity" || name == "dephasing") {
    if (!arg.empty()) j["dim"] = std::stoi(arg);
  } else if (name == "erasure") {
    j["q"] = std::stod(arg);
  } else if (name == "depolarizing") {
    j["p"] = std::stod(arg);
  } else if (name == "bsc") {
    j["flip"] = std::stod(arg);
  } else {
    throw std::invalid_argument("channel spec: unknown shorthand '" + name + "'");
  }
  return channel_from_json(j);
}

Json info_report_to_json(const InfoReport& r) {
  return Json{{"mutual", r.mutual},
              {"coherent", r.coherent},
              {"entropy_b", r.entropy_b},
              {"entropy_ab", r.entropy_ab},
              {"entropy_a", r.entropy_a}};
}

Json validation_report_to_json(const ValidationReport& r) {
  return Json{{"trace_residual", r.trace_residual},
              {"min_choi_eigenvalue", r.min_choi_eigenvalue},
              {"passes", r.passes}};
}

Json capacity_result_to_json(const CapacityResult& r) {
  Json witness;
  if (!r.witness.ensemble.empty()) {
    Json ens = Json::array();
    for (const EnsembleEntry& e : r.witness.ensemble)
      ens.push_back(Json{{"probability", e.probability},
                         {"state", state_to_json(e.state)}});
    witness["ensemble"] = std::move(ens);
  }
  if (r.witness.input_state)
    witness["input_state"] = state_to_json(*r.witness.input_state);
  return Json{{"value", r.value},
              {"witness", std::move(witness)},
              {"iterations", r.iterations},
              {"converged", r.converged}};
}

Json id_report_to_json(const IdVerificationReport& r) {
  return Json{{"lambda1", r.lambda1},
              {"lambda2", r.lambda2},
              {"pair_count", r.pair_count}};
}

Json quantum_id_report_to_json(const QuantumIdReport& r) {
  return Json{{"epsilon", r.epsilon}, {"test_set_size", r.test_set_size}};
}

Json decoupling_report_to_json(const DecouplingReport& r) {
  return Json{{"delta", r.delta},
              {"epsilon_bound", r.epsilon_bound},
              {"geometry_gap_max", r.geometry_gap_max},
              {"geometry_gap_min", r.geometry_gap_min},
              {"mu", r.mu},
              {"lambda", r.lambda},
              {"eta", r.eta},
              {"test_set_size", r.test_set_size},
              // Pair quantification runs over the code space only.
              {"pair_domain", "code_space"}};
}

Json tail_report_to_json(const TailReport& r) {
  const char* dir = r.direction == TailDirection::Upper   ? "upper"
                    : r.direction == TailDirection::Lower ? "lower"
                                                          : "two_sided";
  return Json{{"empirical", r.empirical}, {"ci_halfwidth", r.ci_halfwidth},
              {"bound", r.bound},         {"n", r.n},
              {"trials", r.trials},       {"direction", dir}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void CsvWriter::comment(const std::string& line) {
  out_ += "# ";
  out_ += line;
  out_ += '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ += ',';
    out_ += columns[i];
  }
  out_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) { header(cells); }

void CsvWriter::row_numeric(const std::vector<double>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    out_ += format_double(cells[i]);
  }
  out_ += '\n';
}

}  // namespace qid
