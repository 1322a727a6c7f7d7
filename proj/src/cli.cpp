#include "qid/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qid/serialize.hpp"

namespace qid {

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

struct OutputSink {
  std::string path;     // empty -> stdout
  std::string format;   // "csv" or "json"
};

void write_output(const OutputSink& sink, const std::string& payload) {
  if (sink.path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(sink.path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + sink.path);
  out << payload;
}

// Every emitted document starts with the command, effective config and
// seed, so a run can be replayed byte for byte.
std::string render(const OutputSink& sink, const std::string& command,
                   const Json& config, const Json& json_payload,
                   const std::function<void(CsvWriter&)>& csv_payload) {
  if (sink.format == "json") {
    Json doc{{"command", command}, {"config", config}, {"results", json_payload}};
    return doc.dump(2) + "\n";
  }
  CsvWriter csv;
  csv.comment("qidlab " + command);
  csv.comment("config: " + config.dump());
  csv_payload(csv);
  return csv.str();
}

std::vector<double> parse_q_range(const std::string& text) {
  // "start:stop:step" inclusive, or a comma list.
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double start, stop, step;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
        step <= 0.0)
      throw std::invalid_argument("bad range spec '" + text + "'");
    const int count = static_cast<int>(std::lround((stop - start) / step)) + 1;
    for (int i = 0; i < count; ++i)
      out.push_back(std::min(start + i * step, stop));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int command_channel_info(const std::string& spec, const OutputSink& sink,
                         std::uint64_t seed) {
  const QuantumChannel channel = parse_channel_spec(spec);
  const ValidationReport report = validate_cptp(channel);
  const DensityOperator mixed = maximally_mixed(channel.dim_in());
  const InfoReport info = channel_information(channel, mixed);

  Json config{{"channel", spec}, {"seed", seed}};
  Json results{{"dim_in", channel.dim_in()},
               {"dim_out", channel.dim_out()},
               {"kraus_count", channel.kraus().size()},
               {"label", channel.label()},
               {"validation", validation_report_to_json(report)},
               {"max_mixed_information", info_report_to_json(info)}};
  write_output(sink, render(sink, "channel-info", config, results,
                            [&](CsvWriter& csv) {
                              csv.header({"dim_in", "dim_out", "kraus_count",
                                          "trace_residual", "min_choi_eig",
                                          "passes", "mutual_at_max_mixed",
                                          "coherent_at_max_mixed"});
                              csv.row_numeric({double(channel.dim_in()),
                                               double(channel.dim_out()),
                                               double(channel.kraus().size()),
                                               report.trace_residual,
                                               report.min_choi_eigenvalue,
                                               report.passes ? 1.0 : 0.0,
                                               info.mutual, info.coherent});
                            }));
  return 0;
}

int command_capacity(const std::string& spec, const std::string& which_csv,
                     const OutputSink& sink, const OptimizerOptions& opts) {
  const QuantumChannel channel = parse_channel_spec(spec);
  const std::vector<std::string> which = split_list(which_csv);

  Json config{{"channel", spec},   {"which", which_csv},
              {"seed", opts.seed}, {"restarts", opts.restarts},
              {"max_iters", opts.max_iters}};
  Json results;
  std::vector<std::string> columns;
  std::vector<double> values;
  for (const std::string& name : which) {
    CapacityResult r;
    if (name == "c1") r = c1_capacity(channel, opts);
    else if (name == "q1") r = q1_capacity(channel, opts);
    else if (name == "ce") r = ce_capacity(channel, opts);
    else if (name == "qid1") r = qid1_capacity(channel, opts);
    else if (name == "lownoise") {
      const LowNoiseReport ln = sufficiently_low_noise(channel, opts);
      results[name] = Json{{"low_noise", ln.low_noise},
                           {"mutual", ln.mutual},
                           {"coherent", ln.coherent}};
      columns.push_back(name);
      values.push_back(ln.low_noise ? 1.0 : 0.0);
      continue;
    } else {
      throw std::invalid_argument("unknown capacity '" + name + "'");
    }
    results[name] = capacity_result_to_json(r);
    columns.push_back(name);
    values.push_back(r.value);
  }
  write_output(sink, render(sink, "capacity", config, results,
                            [&](CsvWriter& csv) {
                              csv.header(columns);
                              csv.row_numeric(values);
                            }));
  return 0;
}

int command_curves(const std::string& q_spec, const OutputSink& sink) {
  const std::vector<double> qs = parse_q_range(q_spec);
  const std::vector<ErasureCurveRow> rows = erasure_curves(qs);

  Json config{{"q", q_spec}};
  Json results = Json::array();
  for (const ErasureCurveRow& r : rows)
    results.push_back(Json{{"q", r.q},
                           {"c1", r.c1},
                           {"q1", r.q1},
                           {"ce", r.ce},
                           {"old_id_bound", r.old_id_bound},
                           {"new_id_bound", r.new_id_bound},
                           {"amortization_lower", r.amortization_lower}});
  write_output(sink, render(sink, "curves", config, results,
                            [&](CsvWriter& csv) {
                              csv.header({"q", "c1", "q1", "ce", "old_id_bound",
                                          "new_id_bound", "amortization_lower"});
                              for (const ErasureCurveRow& r : rows)
                                csv.row_numeric({r.q, r.c1, r.q1, r.ce,
                                                 r.old_id_bound, r.new_id_bound,
                                                 r.amortization_lower});
                            }));
  return 0;
}

int command_idcode(const std::string& rs_spec, const std::string& fp_spec,
                   long trials, const OutputSink& sink, std::uint64_t seed) {
  Json config{{"seed", seed}, {"trials", trials}};
  Json results;
  std::vector<std::vector<double>> csv_rows;

  if (!rs_spec.empty()) {
    int q = 0, k = 0;
    if (std::sscanf(rs_spec.c_str(), "%d,%d", &q, &k) != 2)
      throw std::invalid_argument("idcode: --rs expects 'q,k'");
    config["rs"] = rs_spec;
    const RsIdCode code = rs_id_code(q, k);
    const bool small = code.message_count() <= 4096;
    const IdVerificationReport report =
        small ? rs_verify_exhaustive(code)
              : rs_verify_sampled(code, trials, seed);
    results["rs"] = Json{{"q", q},
                         {"k", k},
                         {"messages", code.message_count()},
                         {"lambda2_bound", code.lambda2_bound()},
                         {"exhaustive", small},
                         {"report", id_report_to_json(report)}};
    csv_rows.push_back({double(q), double(k), double(code.message_count()),
                        report.lambda1, report.lambda2, code.lambda2_bound()});
  }
  if (!fp_spec.empty()) {
    int dim = 0, count = 0;
    double overlap = 0.0;
    if (std::sscanf(fp_spec.c_str(), "%d,%d,%lf", &dim, &count, &overlap) != 3)
      throw std::invalid_argument("idcode: --fingerprint expects 'dim,count,overlap'");
    config["fingerprint"] = fp_spec;
    const std::vector<PureState> prints =
        fingerprint_generate(dim, count, overlap, seed);
    const ClassicalIdCode code = fingerprint_code(prints);
    const IdVerificationReport report =
        verify_classical_id(code, identity_channel(dim));
    results["fingerprint"] = Json{{"dim", dim},
                                  {"count", count},
                                  {"max_overlap", overlap},
                                  {"report", id_report_to_json(report)}};
    csv_rows.push_back({double(dim), double(count), overlap, report.lambda1,
                        report.lambda2, overlap * overlap});
  }
  if (results.empty())
    throw std::invalid_argument("idcode: pass --rs q,k and/or --fingerprint d,count,eps");

  write_output(sink, render(sink, "idcode", config, results,
                            [&](CsvWriter& csv) {
                              csv.header({"p1", "p2", "p3", "lambda1", "lambda2",
                                          "bound"});
                              for (const auto& row : csv_rows) csv.row_numeric(row);
                            }));
  return 0;
}

int command_qidcode(const std::string& spec, int dim, long trials,
                    const OutputSink& sink, std::uint64_t seed) {
  const QuantumChannel channel = parse_channel_spec(spec);
  if (dim <= 0) dim = channel.dim_in();
  if (dim != channel.dim_in())
    throw std::invalid_argument("qidcode: projector code needs dim == dim_in");
  const QuantumIdCode code =
      embedded_projector_code(dim, channel.dim_out());
  const QuantumIdReport report =
      verify_quantum_id(code, channel, static_cast<int>(trials), seed);

  Json config{{"channel", spec}, {"dim", dim}, {"trials", trials}, {"seed", seed}};
  Json results = quantum_id_report_to_json(report);
  write_output(sink, render(sink, "qidcode", config, results,
                            [&](CsvWriter& csv) {
                              csv.header({"epsilon", "test_set_size"});
                              csv.row_numeric({report.epsilon,
                                               double(report.test_set_size)});
                            }));
  return 0;
}

int command_decouple(const std::string& spec, int instances, long trials,
                     const OutputSink& sink, std::uint64_t seed) {
  Json config{{"trials", trials}, {"seed", seed}};
  Json results;
  std::vector<std::vector<std::string>> csv_rows;

  if (!spec.empty()) {
    config["channel"] = spec;
    const QuantumChannel channel = parse_channel_spec(spec);
    const QuantumIdCode code =
        embedded_projector_code(channel.dim_in(), channel.dim_out());
    const DualityCheck id_check =
        check_id_implies_forgetful(code, channel, static_cast<int>(trials), seed);
    const Matrix basis =
        Matrix::Identity(channel.dim_in(), channel.dim_in());
    const DualityCheck geo = check_forgetful_implies_geometry(
        channel, basis, static_cast<int>(trials), seed);
    results["id_implies_forgetful"] =
        Json{{"pass", id_check.pass},
             {"epsilon", id_check.epsilon},
             {"report", decoupling_report_to_json(id_check.report)}};
    results["forgetful_implies_geometry"] =
        Json{{"pass", geo.pass},
             {"report", decoupling_report_to_json(geo.report)}};
    csv_rows.push_back({"channel", format_double(id_check.epsilon),
                        format_double(id_check.report.delta),
                        format_double(id_check.report.epsilon_bound),
                        id_check.pass ? "1" : "0",
                        format_double(geo.report.geometry_gap_max),
                        format_double(geo.report.epsilon_bound),
                        geo.pass ? "1" : "0"});
  } else {
    config["instances"] = instances;
    const std::vector<DualityInstance> suite =
        duality_suite(instances, static_cast<int>(trials), seed);
    Json arr = Json::array();
    bool all = true;
    for (const DualityInstance& inst : suite) {
      all = all && inst.id_forgetful.pass && inst.geometry.pass;
      arr.push_back(Json{
          {"label", inst.label},
          {"epsilon", inst.id_forgetful.epsilon},
          {"id_implies_forgetful",
           Json{{"pass", inst.id_forgetful.pass},
                {"report", decoupling_report_to_json(inst.id_forgetful.report)}}},
          {"forgetful_implies_geometry",
           Json{{"pass", inst.geometry.pass},
                {"report", decoupling_report_to_json(inst.geometry.report)}}}});
      csv_rows.push_back({inst.label, format_double(inst.id_forgetful.epsilon),
                          format_double(inst.id_forgetful.report.delta),
                          format_double(inst.id_forgetful.report.epsilon_bound),
                          inst.id_forgetful.pass ? "1" : "0",
                          format_double(inst.geometry.report.geometry_gap_max),
                          format_double(inst.geometry.report.epsilon_bound),
                          inst.geometry.pass ? "1" : "0"});
    }
    results = Json{{"instances", std::move(arr)}, {"all_pass", all}};
  }

  write_output(sink, render(sink, "decouple", config, results,
                            [&](CsvWriter& csv) {
                              csv.header({"case", "epsilon", "delta",
                                          "delta_bound", "id_pass", "gap_max",
                                          "gap_bound", "geometry_pass"});
                              for (const auto& row : csv_rows) csv.row(row);
                            }));
  return 0;
}

int command_chernoff(long trials, const OutputSink& sink, std::uint64_t seed) {
  const std::vector<BoundCase> cases = default_bound_suite();
  const BoundSuiteResult suite = validate_bound(cases, trials, seed);

  Json config{{"suite", "default"}, {"trials", trials}, {"seed", seed}};
  Json arr = Json::array();
  for (const BoundCaseResult& row : suite.rows)
    arr.push_back(Json{{"case", row.bound_case.label},
                       {"n", row.bound_case.n},
                       {"d", row.bound_case.spec.dim()},
                       {"alpha", row.bound_case.alpha},
                       {"mu", row.bound_case.spec.mu()},
                       {"report", tail_report_to_json(row.report)},
                       {"pass", row.pass}});
  Json results{{"cases", std::move(arr)}, {"all_pass", suite.all_pass}};

  write_output(sink, render(sink, "chernoff", config, results,
                            [&](CsvWriter& csv) {
                              csv.header({"case", "n", "d", "alpha", "mu",
                                          "empirical", "ci", "bound", "pass"});
                              for (const BoundCaseResult& row : suite.rows)
                                csv.row({row.bound_case.label,
                                         std::to_string(row.bound_case.n),
                                         std::to_string(row.bound_case.spec.dim()),
                                         format_double(row.bound_case.alpha),
                                         format_double(row.bound_case.spec.mu()),
                                         format_double(row.report.empirical),
                                         format_double(row.report.ci_halfwidth),
                                         format_double(row.report.bound),
                                         row.pass ? "1" : "0"});
                            }));
  return suite.all_pass ? 0 : 1;
}

void emit_error(const std::string& kind, const std::string& message) {
  Json err{{"error", Json{{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << std::endl;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Numerical laboratory for identification via quantum channels"};
  app.require_subcommand(1);

  std::string channel_spec, which = "c1,q1,ce", q_spec = "0:1:0.05";
  std::string rs_spec, fp_spec, out_path, format = "csv";
  std::uint64_t seed = kDefaultSeed;
  long trials = 500;
  int restarts = 32, max_iters = 2000, dim = 0, instances = 20;

  auto add_common = [&](CLI::App* cmd, bool with_trials = true) {
    cmd->add_option("--seed", seed, "Master seed (recorded in outputs)");
    cmd->add_option("--out", out_path, "Output file (default stdout)");
    cmd->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_trials) cmd->add_option("--trials", trials, "Monte-Carlo trials");
  };

  CLI::App* info = app.add_subcommand("channel-info", "Validate and summarize a channel");
  info->add_option("--channel", channel_spec)->required();
  add_common(info, false);

  CLI::App* capacity = app.add_subcommand("capacity", "Run capacity optimizers");
  capacity->add_option("--channel", channel_spec)->required();
  capacity->add_option("--which", which, "comma list: c1,q1,ce,qid1,lownoise");
  capacity->add_option("--restarts", restarts);
  capacity->add_option("--max-iters", max_iters);
  add_common(capacity, false);

  CLI::App* curves = app.add_subcommand("curves", "Closed-form erasure-channel table");
  curves->add_option("--q", q_spec, "start:stop:step or comma list");
  add_common(curves, false);

  CLI::App* idcode = app.add_subcommand("idcode", "Classical ID codes");
  idcode->add_option("--rs", rs_spec, "q,k");
  idcode->add_option("--fingerprint", fp_spec, "dim,count,max_overlap");
  add_common(idcode);

  CLI::App* qidcode = app.add_subcommand("qidcode", "Verify a projector quantum ID code");
  qidcode->add_option("--channel", channel_spec)->required();
  qidcode->add_option("--dim", dim);
  add_common(qidcode);

  CLI::App* decouple = app.add_subcommand("decouple", "Weak-decoupling duality checks");
  decouple->add_option("--channel", channel_spec, "single-channel check");
  decouple->add_option("--instances", instances, "suite size when no channel given");
  add_common(decouple);

  CLI::App* chernoff = app.add_subcommand("chernoff", "Validate concentration bounds");
  std::string suite_name = "default";
  chernoff->add_option("--suite", suite_name)->check(CLI::IsMember({"default"}));
  add_common(chernoff);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    emit_error("usage", e.what());
    return 2;
  }

  OutputSink sink{out_path, format};
  try {
    if (info->parsed()) return command_channel_info(channel_spec, sink, seed);
    if (capacity->parsed()) {
      OptimizerOptions opts;
      opts.restarts = restarts;
      opts.max_iters = max_iters;
      opts.seed = seed;
      return command_capacity(channel_spec, which, sink, opts);
    }
    if (curves->parsed()) return command_curves(q_spec, sink);
    if (idcode->parsed())
      return command_idcode(rs_spec, fp_spec, trials, sink, seed);
    if (qidcode->parsed())
      return command_qidcode(channel_spec, dim, trials, sink, seed);
    if (decouple->parsed())
      return command_decouple(channel_spec, instances, trials, sink, seed);
    if (chernoff->parsed()) return command_chernoff(trials, sink, seed);
  } catch (const InfeasibleError& e) {
    emit_error("infeasible", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    emit_error("validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("error", e.what());
    return 2;
  }
  emit_error("usage", "no subcommand");
  return 2;
}

}  // namespace qid
