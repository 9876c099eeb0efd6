#include <doctest.h>

#include "milnor/report.hpp"
#include "support.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace testing_support;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MILNOR_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json parse_json(const std::string& s) { return nlohmann::json::parse(s); }

FormulaReport sample_report(Verdict v) {
  FormulaReport r;
  r.formula_id = FormulaId::SZAFRANIEC_LINK0;
  r.inputs = {"x"};
  r.lhs = 2;
  r.rhs = v == Verdict::conflict ? 0 : 2;
  r.verdict = v;
  r.method = "m";
  return r;
}

}  // namespace

TEST_CASE("emit: empty envelope") {
  ReportEnvelope e;
  e.command = "verify";
  auto j = parse_json(emit_report(e, ReportFormat::json));
  CHECK(j.contains("version"));
  CHECK(j["reports"].is_array());
  CHECK(j["reports"].empty());
  CHECK_FALSE(j.contains("wall_time"));
}

TEST_CASE("emit: text row") {
  ReportEnvelope e;
  e.reports.push_back(sample_report(Verdict::verified));
  std::string text = emit_report(e, ReportFormat::text);
  std::size_t rows = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("SZAFRANIEC_LINK0", 0) == 0) {
      ++rows;
      CHECK(line.find("VERIFIED") != std::string::npos);
    }
  CHECK(rows == 1);
}

TEST_CASE("emit: conflict verdict and stable field names") {
  ReportEnvelope e;
  e.reports.push_back(sample_report(Verdict::conflict));
  auto j = parse_json(emit_report(e, ReportFormat::json));
  const auto& r = j["reports"][0];
  CHECK(r["verdict"] == "CONFLICT");
  for (const char* key : {"formula_id", "inputs", "parameters", "lhs", "rhs", "verdict", "method", "diagnostics"})
    CHECK(r.contains(key));
  CHECK(r["lhs"]["source"] == "formula");
  CHECK(r["rhs"]["source"] == "oracle");
  CHECK(exit_code(e, false) == 2);
}

TEST_CASE("exit codes") {
  ReportEnvelope e;
  e.reports.push_back(sample_report(Verdict::unstable));
  CHECK(exit_code(e, false) == 0);
  CHECK(exit_code(e, true) == 3);
}

TEST_CASE("cli: local degree") {
  Run r = run("local-degree --vars x,y --map \"2*x,-2*y\" --format json");
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  REQUIRE(j["degrees"].size() == 2);
  for (const auto& d : j["degrees"]) {
    CHECK(d["degree"]["value"] == -1);
    CHECK(d["degree"].contains("method"));
  }
}

TEST_CASE("cli: link at the origin") {
  Run r = run("chi-link0 --vars x,y --zeros x --format json");
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j["reports"][0]["lhs"]["value"] == 2);
  CHECK(j["reports"][0]["verdict"] == "VERIFIED");
}

TEST_CASE("cli: local suite under strict") {
  Run r = run("verify --suite local-basics --strict --format json");
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  for (const auto& rep : j["reports"]) CHECK(rep["verdict"] == "VERIFIED");
  CHECK(j["summary"]["VERIFIED"] == j["reports"].size());
}

TEST_CASE("cli: corpus file with a wrong expectation") {
  const std::string path = "cli_wrong_corpus.json";
  std::ofstream(path) << R"([{"name":"w","command":"chi-link0","vars":"x,y","input":"x","expected":5}])";
  Run r = run("verify --corpus " + path);
  CHECK(r.code == 2);
  CHECK(r.out.find("CONFLICT") != std::string::npos);
}

TEST_CASE("cli: input files") {
  const std::string path = "cli_input.txt";
  std::ofstream(path) << "# plane pair\nvars: x,y,z\nx\ny\n";
  Run r = run("chi-fiber-tube --mode isolated --input " + path + " --format json");
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j["reports"][0]["formula_id"] == "MAP_ISOLATED_CHI");
  CHECK(j["reports"][0]["lhs"]["value"] == 1);
}

TEST_CASE("cli: usage errors") {
  CHECK(run("").code == 1);
  CHECK(run("chi-link0 --vars x,y --zeros \"x+\"").code == 1);
  CHECK(run("chi-link-inf --vars x,y --poly x --relation lt").code == 1);
  CHECK(run("local-degree --map x,y").code == 1);
  CHECK(run("verify").code == 1);
}

TEST_CASE("cli: assumption flags are echoed") {
  Run r = run("chi-fiber-tube --vars x,y --map \"x*y\" --mode nonisolated --assume-milnor-ab --format json");
  CHECK(r.code == 0);
  auto j = parse_json(r.out);
  CHECK(j["reports"][0]["assumptions"].size() == 1);
}

TEST_CASE("property: deterministic output") {
  for (const std::string args :
       {"chi-link-inf --vars x,y --poly x --relation eq --format json", "milnor-number --vars z --poly z^3-3*z --format json",
        "oracle chi --vars x,y --poly x*y --relation eq --format json"}) {
    auto a = parse_json(run(args).out), b = parse_json(run(args).out);
    a.erase("wall_time");
    b.erase("wall_time");
    CHECK(a.dump() == b.dump());
    Run d1 = run(args + " --deterministic"), d2 = run(args + " --deterministic");
    CHECK(d1.out == d2.out);
  }
}
