#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qid/cli.hpp"
#include "qid/serialize.hpp"

#include <nlohmann/json.hpp>

using namespace qid;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("qid_cli_test_" + name);
}

struct CerrCapture {
  std::stringstream buffer;
  std::streambuf* saved;
  CerrCapture() : saved(std::cerr.rdbuf(buffer.rdbuf())) {}
  ~CerrCapture() { std::cerr.rdbuf(saved); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("curves writes the closed-form table") {
  const fs::path out = temp_file("curves.csv");
  const int rc = run_cli({"curves", "--q", "0:1:0.05", "--out", out.string()});
  CHECK(rc == 0);
  const std::string text = slurp(out);
  // 2 comment lines + header + 21 rows.
  CHECK(std::count(text.begin(), text.end(), '\n') == 24);
  CHECK(text.find("q,c1,q1,ce,old_id_bound,new_id_bound,amortization_lower") !=
        std::string::npos);
  CHECK(text.find("0.25,0.75,0.5,1.5,1,1.5,0") != std::string::npos);
  fs::remove(out);
}

TEST_CASE("repeated runs are byte identical") {
  const fs::path a = temp_file("det_a.csv");
  const fs::path b = temp_file("det_b.csv");
  for (const fs::path& p : {a, b}) {
    const int rc = run_cli({"idcode", "--rs", "8,2", "--seed", "9", "--out",
                            p.string(), "--format", "json"});
    CHECK(rc == 0);
  }
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("idcode rs report carries the exact second-kind error") {
  const fs::path out = temp_file("rs.json");
  const int rc = run_cli({"idcode", "--rs", "8,2", "--out", out.string(),
                          "--format", "json"});
  CHECK(rc == 0);
  const Json doc = Json::parse(slurp(out));
  CHECK(doc.at("results").at("rs").at("messages").get<long>() == 64);
  CHECK(doc.at("results").at("rs").at("report").at("lambda2").get<double>() ==
        doctest::Approx(0.125).epsilon(1e-12));
  CHECK(doc.at("config").contains("seed"));
  fs::remove(out);
}

TEST_CASE("channel-info validates and reports") {
  const fs::path out = temp_file("info.json");
  const int rc = run_cli({"channel-info", "--channel", "erasure:0.25", "--out",
                          out.string(), "--format", "json"});
  CHECK(rc == 0);
  const Json doc = Json::parse(slurp(out));
  CHECK(doc.at("results").at("dim_out").get<int>() == 3);
  CHECK(doc.at("results").at("validation").at("passes").get<bool>());
  fs::remove(out);
}

TEST_CASE("non-cptp channel spec exits with code 2 and diagnostics") {
  // Kraus family scaled by 0.9: trace residual 0.19.
  const Json bad{{"dim_in", 2},
                 {"dim_out", 2},
                 {"kraus", Json::array({matrix_to_json(
                              0.9 * Matrix::Identity(2, 2))})},
                 {"label", "scaled"}};
  const fs::path spec = temp_file("bad_channel.json");
  std::ofstream(spec) << bad.dump();

  CerrCapture capture;
  const int rc = run_cli({"channel-info", "--channel", "@" + spec.string()});
  CHECK(rc == 2);
  const Json err = Json::parse(capture.buffer.str());
  CHECK(err.at("error").at("kind").get<std::string>() == "validation");
  CHECK(err.at("error").at("message").get<std::string>().find("0.19") !=
        std::string::npos);
  fs::remove(spec);
}

TEST_CASE("infeasible fingerprint request exits with code 3") {
  CerrCapture capture;
  const int rc = run_cli({"idcode", "--fingerprint", "2,64,0.05", "--trials",
                          "10"});
  CHECK(rc == 3);
  const Json err = Json::parse(capture.buffer.str());
  CHECK(err.at("error").at("kind").get<std::string>() == "infeasible");
}

TEST_CASE("usage errors exit with code 2") {
  CerrCapture capture;
  CHECK(run_cli({"capacity"}) == 2);               // missing --channel
  CHECK(run_cli({"unknown-subcommand"}) == 2);
  CHECK(run_cli({"channel-info", "--channel", "erasure:1.5"}) == 2);
}

TEST_CASE("qidcode on the identity reports zero deviation") {
  const fs::path out = temp_file("qid.json");
  const int rc = run_cli({"qidcode", "--channel", "identity:2", "--trials",
                          "50", "--out", out.string(), "--format", "json"});
  CHECK(rc == 0);
  const Json doc = Json::parse(slurp(out));
  CHECK(doc.at("results").at("epsilon").get<double>() <= 1e-9);
  fs::remove(out);
}

TEST_CASE("inline JSON channel specs parse") {
  const std::string inline_spec = R"({"standard":"erasure","q":0.25})";
  const fs::path out = temp_file("inline.json");
  const int rc = run_cli({"channel-info", "--channel", inline_spec, "--out",
                          out.string(), "--format", "json"});
  CHECK(rc == 0);
  fs::remove(out);
}

}  // TEST_SUITE
