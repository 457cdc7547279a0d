// Copyright 2026 The dioph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dioph/cli.hpp"
#include "dioph/io.hpp"

using namespace dioph;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run dioph_run(std::vector<std::string> args) {
  args.insert(args.begin(), "dioph");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("dioph_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

bool same_bits(const CertReal& a, const CertReal& b) {
  return mpfr_equal_p(a.lower().get(), b.lower().get()) && mpfr_equal_p(a.upper().get(), b.upper().get());
}

// Scoped environment override.
struct EnvVar {
  EnvVar(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~EnvVar() { ::unsetenv(name_); }
  const char* name_;
};

}  // namespace

TEST_CASE("enclosures survive JSON exactly") {
  const CertReal pi = pi_enclosure(300);
  const json j = io::to_json(pi);
  CHECK(same_bits(io::cert_real_from_json(j), pi));
  json decimal_only = {{"lo", j["lo"]}, {"hi", j["hi"]}};
  CHECK(is_subset(pi, io::cert_real_from_json(decimal_only, 300)));
  const CertReal unbounded = io::cert_real_from_json(json{{"lo", "1"}, {"hi", "inf"}});
  CHECK_FALSE(unbounded.is_finite());
}

TEST_CASE("expansions, scans, ledgers and plans round-trip") {
  const PrecisionPolicy policy;
  const CFExpansion cf = expand(RefinableReal::pi(), 12, policy);
  CHECK(io::cf_from_json(io::to_json(cf)) == cf);
  CHECK(io::cf_from_json(json{{"terms", {3, 7, "15"}}}).value() == mpq_class(333, 106));

  const GoodScanResult scan = scan_good(RefinableReal::pi(), MuSpec::make(mpq_class(5, 2)), mpq_class(1, 5), 3000, policy);
  const GoodScanResult back = io::scan_from_json(io::to_json(scan));
  REQUIRE(back.records.size() == scan.records.size());
  for (std::size_t i = 0; i < scan.records.size(); ++i) {
    CHECK(back.records[i].q == scan.records[i].q);
    CHECK(is_subset(scan.records[i].exponent, back.records[i].exponent));
  }
  CHECK(back.mu.mu == scan.mu.mu);
  CHECK_THROWS(io::scan_from_json(json{{"alpha", "x"}, {"mu", "2.5"}, {"epsilon1", "0.1"}, {"q_max", "10"},
                                       {"records", {{{"q", "5"}}, {{"q", "3"}}}}}));

  const Preset fh = flint_hills_preset();
  const PartialSumLedger ledger = partial_sum(500, fh.sine, fh.params, policy);
  const PartialSumLedger ledger_back = io::ledger_from_json(io::to_json(ledger));
  CHECK(ledger_back.count == 500);
  CHECK(same_bits(ledger_back.sum, ledger.sum));
  CHECK(ledger_back.largest->n == 355);

  const PartitionPlan p = plan(MuSpec::make(mpq_class(12, 5)), {3, 2});
  const PartitionPlan p_back = io::plan_from_json(io::to_json(p));
  CHECK(p_back.cuts == p.cuts);
  CHECK(p_back.b == p.b);
  json bad = io::to_json(p);
  bad["b"][0] = "3/2";
  CHECK_THROWS_AS(io::plan_from_json(bad), DomainError);
}

TEST_CASE("scan CSV layout") {
  const GoodScanResult scan = scan_good(RefinableReal::pi(), MuSpec::make(mpq_class(5, 2)), mpq_class(1, 10), 400, PrecisionPolicy{});
  std::ostringstream csv;
  io::write_scan_csv(csv, scan);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "q,p,error_lo,error_hi,exp_lo,exp_hi,status");
  std::getline(in, line);
  CHECK(line.rfind("2,1,", 0) == 0);
  CHECK(line.substr(line.size() - 5) == ",good");
}

TEST_CASE("config files") {
  std::istringstream in("# comment\nmax_bits = 512\n\n alpha=sqrt2 # trailing\n");
  const auto cfg = cli::parse_config(in);
  CHECK(cfg.at("max_bits") == "512");
  CHECK(cfg.at("alpha") == "sqrt2");
  std::istringstream bad("max_bits 512\n");
  CHECK_THROWS_AS(cli::parse_config(bad), ParseError);
}

TEST_CASE("alpha sources") {
  const PrecisionPolicy policy;
  CHECK(overlaps(cli::load_alpha("golden", policy).enclose(64), CertReal::from_decimal("1.6180339887", "1e-10", 64)));
  const std::string dec = write("pi.txt", "value = 3.14159265358979323846\nerror = 1e-20\n");
  CHECK(cli::load_alpha("decimal-file:" + dec, policy).enclose(128).contains(mpq_class(314159265358979323846_mpz, mpz_class("100000000000000000000"))));
  const std::string no_error = write("noerr.txt", "3.14159\n");
  CHECK_THROWS_AS(cli::load_alpha("decimal-file:" + no_error, policy), ParseError);
  const std::string cf = write("cf.json", R"({"terms": ["3", "7", "15", "1", "292", "1"]})");
  // A finite expansion stands for every real that starts with it.
  const CertReal from_cf = cli::load_alpha("cf-file:" + cf, policy).enclose(128);
  CHECK(from_cf.contains(mpq_class(104348, 33215)));
  CHECK(is_subset(pi_enclosure(128), from_cf));
  CHECK_THROWS_AS(cli::load_alpha("tau", policy), ParseError);
}

TEST_CASE("cf command") {
  const Run r = dioph_run({"cf", "--alpha", "pi", "--terms", "5"});
  CHECK(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j["terms"] == json({"3", "7", "15", "1", "292"}));
  CHECK(r.err.find("last=103993/33102") != std::string::npos);
  CHECK(json::parse(dioph_run({"cf", "--alpha", "golden", "--terms", "5"}).out)["terms"] ==
        json({"1", "1", "1", "1", "1"}));
  const std::string built = write("built.json", dioph_run({"construct", "--u", "3", "--v", "2", "--terms", "6"}).out);
  CHECK(json::parse(dioph_run({"cf", "--alpha", "cf-file:" + built, "--terms", "3"}).out)["terms"] ==
        json({"0", "1", "2"}));
  const Run rec = dioph_run({"cf", "--alpha", "pi", "--reciprocal", "--terms", "3"});
  CHECK(json::parse(rec.out)["terms"] == json({"0", "3", "7"}));
}

TEST_CASE("precision settings: defaults < environment < config < flags") {
  EnvVar env(cli::kMaxBitsEnv, "64");
  CHECK(dioph_run({"cf", "--alpha", "pi", "--terms", "40"}).code == cli::kPrecisionExhausted);
  const std::string cfg = write("prec.cfg", "max_bits = 512\n");
  CHECK(dioph_run({"cf", "--alpha", "pi", "--terms", "40", "--config", cfg}).code == cli::kOk);
  const Run flagged = dioph_run({"cf", "--alpha", "pi", "--terms", "40", "--config", cfg, "--max-bits", "64"});
  CHECK(flagged.code == cli::kPrecisionExhausted);
  const json partial = json::parse(flagged.out);
  CHECK(partial["complete"] == false);
  CHECK(partial["terms"].size() < 40);
}

TEST_CASE("scan command") {
  const fs::path out = scratch() / "scan.json";
  const Run r = dioph_run({"scan", "--alpha", "pi", "--mu", "5/2", "--eps1", "1/10", "--qmax", "2000", "--out", out.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  const json j = json::parse(std::ifstream(out));
  CHECK(j["records"].size() == 7);
  const Run csv = dioph_run({"scan", "--alpha", "pi", "--mu", "5/2", "--eps1", "1/10", "--qmax", "400", "--output", "csv"});
  CHECK(csv.out.rfind("q,p,", 0) == 0);
  const json bound = json::parse(dioph_run({"scan", "--eps1", "0.1", "--qmax", "1000"}).out);
  CHECK(bound["mu_provenance"] == "literature-bound");
  CHECK(dioph_run({"scan", "--alpha", "sqrt2", "--eps1", "0.1"}).code == cli::kFailure);
  const Run hyp = dioph_run({"scan", "--mu", "2.0", "--eps2", "0.9", "--eps1", "0.5"});
  CHECK(hyp.code == cli::kInfeasible);
  CHECK(hyp.err.find("hypothesis") != std::string::npos);
  const json fixture = json::parse(dioph_run({"scan", "--alpha", "pi", "--mu", "2.5", "--eps1", "0.2", "--qmax", "10000"}).out);
  std::vector<std::string> good;
  for (const auto& r : fixture["records"]) good.push_back(r["q"]);
  CHECK(good == std::vector<std::string>{"2", "3", "6", "22", "44", "355", "710", "1065", "1420", "1775"});
  const json fast = json::parse(dioph_run({"scan", "--alpha", "sqrt2", "--mu", "2", "--eps1", "0.5", "--qmax", "10"}).out);
  const json slow =
      json::parse(dioph_run({"scan", "--alpha", "sqrt2", "--mu", "2", "--eps1", "0.5", "--qmax", "10", "--no-skip"}).out);
  CHECK(fast["records"] == slow["records"]);

  const Run density = dioph_run({"density", "--scan-file", out.string(), "--eps2", "1/2"});
  const json d = json::parse(density.out);
  CHECK(d["good"] == 7);
  CHECK(d["audit"]["violations"] == 0);
  CHECK(density.code == (d["growth"]["pass"] == true ? cli::kOk : cli::kFailure));

  const Run golden = dioph_run({"density", "--alpha", "golden", "--mu", "2", "--eps1", "0.1", "--eps2", "0.5", "--qmax", "20000"});
  CHECK(golden.code == cli::kOk);
  CHECK(json::parse(golden.out)["growth"]["pass"] == true);
  // Consecutive integers cannot outgrow n^2.
  const std::string linear = write("linear.json", R"({"alpha": "fake", "mu": "2.5", "epsilon1": "0.1", "q_max": "20",
      "records": [{"q": "2"}, {"q": "3"}, {"q": "4"}, {"q": "5"}, {"q": "6"}, {"q": "7"}, {"q": "8"}, {"q": "9"}]})");
  const Run fake = dioph_run({"density", "--scan-file", linear, "--eps2", "1/2"});
  CHECK(fake.code == cli::kFailure);
  CHECK(json::parse(fake.out)["audit"].is_null());
}

TEST_CASE("sum command with checkpoint and resume") {
  const std::string ck = (scratch() / "ck.json").string();
  const Run first = dioph_run({"sum", "--N", "300", "--checkpoint", ck});
  REQUIRE(first.code == cli::kOk);
  const Run resumed = dioph_run({"sum", "--N", "900", "--resume", ck});
  const Run direct = dioph_run({"sum", "--N", "900"});
  CHECK(json::parse(resumed.out)["sum"] == json::parse(direct.out)["sum"]);
  const json one = json::parse(dioph_run({"sum", "--N", "1"}).out);
  CHECK(overlaps(io::cert_real_from_json(one["sum"]), CertReal::from_decimal("1.41228292743739191460933500454", "1e-29", 128)));
  const std::string terms = (scratch() / "terms.csv").string();
  dioph_run({"sum", "--N", "10", "--terms-csv", terms});
  std::ifstream in(terms);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,term_lo,term_hi");
  const Run lattice = dioph_run({"sum", "--preset", "sqrt2-lattice", "--N", "100"});
  CHECK(json::parse(lattice.out)["sum"]["lo"].get<std::string>().rfind("8.9654752408", 0) == 0);
}

TEST_CASE("construct command") {
  const Run r = dioph_run({"construct", "--u", "3", "--v", "2", "--terms", "8"});
  CHECK(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j["terms"].size() == 8);
  CHECK(j["verification"]["all_above_one"] == true);
  CHECK(j["verification"]["checks"].size() == 6);
  const Run guard = dioph_run({"construct", "--u", "3", "--v", "2", "--terms", "14", "--digit-budget", "10"});
  CHECK(guard.code == cli::kFailure);
  CHECK(guard.err.find("term index 11") != std::string::npos);
  // u = v: every constructed quotient stays at 2 and the estimate sinks toward 2.
  const json flat = json::parse(dioph_run({"construct", "--u", "1", "--v", "1", "--terms", "12"}).out);
  for (std::size_t i = 2; i < flat["terms"].size(); ++i) CHECK(flat["terms"][i] == "2");
  CHECK(certainly_less(io::cert_real_from_json(flat["verification"]["sondow_final"]), mpq_class(22, 10)));
}

TEST_CASE("plan command") {
  const fs::path report = scratch() / "cells.csv";
  const Run ok = dioph_run({"plan", "--mu", "12/5", "--u", "3", "--v", "2", "--report-qmax", "300", "--report", report.string()});
  CHECK(ok.code == cli::kOk);
  CHECK(json::parse(ok.out)["b"].size() == 28);
  std::ifstream in(report);
  std::string header;
  std::getline(in, header);
  CHECK(header == "cell,count,sum_lo,sum_hi,predicted_exponent,flagged");
  CHECK(dioph_run({"plan", "--mu", "2.5", "--u", "3", "--v", "2"}).code == cli::kInfeasible);
  CHECK(dioph_run({"plan", "--mu", "2", "--u", "3", "--v", "0.5"}).code == cli::kInfeasible);
  CHECK(dioph_run({"plan", "--mu", "2.4", "--u", "3", "--v", "2", "--single-cell"}).code == cli::kInfeasible);
  CHECK(dioph_run({"plan", "--mu", "2.2", "--u", "3", "--v", "1"}).code == cli::kOk);
}

TEST_CASE("usage errors") {
  CHECK(dioph_run({}).code == cli::kFailure);
  CHECK(dioph_run({"frobnicate"}).code == cli::kFailure);
  CHECK(dioph_run({"cf", "--alpha", "decimal-file:/nonexistent"}).code == cli::kFailure);
  CHECK(dioph_run({"cf", "--help"}).code == cli::kOk);
}
