#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "qid/capacity.hpp"
#include "qid/chernoff.hpp"
#include "qid/decoupling.hpp"
#include "qid/idcode.hpp"

// JSON and CSV forms of the library types. Matrices serialize as nested
// arrays of [re, im] pairs; channels accept both the explicit Kraus form
// and shorthand standard-channel specs.

namespace qid {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json state_to_json(const DensityOperator& rho);
DensityOperator state_from_json(const Json& j);

Json pure_to_json(const PureState& psi);
PureState pure_from_json(const Json& j);

Json channel_to_json(const QuantumChannel& channel);
// Accepts {"dim_in","dim_out","kraus",...} or {"standard": name, ...};
// always validates and throws on CPTP failure.
QuantumChannel channel_from_json(const Json& j);
// Shorthand "name:params" (erasure:0.25, identity:4, bsc:0.1, ...), a JSON
// literal, or an @file reference.
QuantumChannel parse_channel_spec(const std::string& spec);

Json info_report_to_json(const InfoReport& report);
Json validation_report_to_json(const ValidationReport& report);
Json capacity_result_to_json(const CapacityResult& result);
Json id_report_to_json(const IdVerificationReport& report);
Json quantum_id_report_to_json(const QuantumIdReport& report);
Json decoupling_report_to_json(const DecouplingReport& report);
Json tail_report_to_json(const TailReport& report);

// Locale-free float formatting at 9 significant digits.
std::string format_double(double v);

// CSV with '#'-prefixed provenance lines followed by a header row.
class CsvWriter {
 public:
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

}  // namespace qid
