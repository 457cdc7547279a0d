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

#include "dioph/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "dioph/approx.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/io.hpp"
#include "dioph/partition.hpp"
#include "dioph/series.hpp"

namespace dioph::cli {
namespace {

using io::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Writes through a temporary file so an interrupted run never leaves a torn
// document behind.
void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw Error("cannot write '" + tmp + "'");
    f << text;
    if (!f) throw Error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------- options

struct Common {
  std::string alpha = "pi";
  bool reciprocal = false;
  std::string config;
  int start_bits = PrecisionPolicy::kDefaultStartBits;
  int max_bits = PrecisionPolicy::kDefaultMaxBits;
  std::string target;
  std::string output = "json";
  std::string out_path;
  unsigned threads = 0;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* reciprocal_opt = nullptr;
  CLI::Option* start_opt = nullptr;
  CLI::Option* max_opt = nullptr;
  CLI::Option* target_opt = nullptr;
  CLI::Option* output_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

struct RunConfig {
  std::string alpha_source;
  bool reciprocal = false;
  PrecisionPolicy policy;
  std::string output;
  std::string out_path;
  unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c, bool with_alpha = true) {
  if (with_alpha) {
    c.alpha_opt = app->add_option("--alpha", c.alpha,
                                  "period: pi, sqrt2, golden, cf-file:PATH or decimal-file:PATH");
    c.reciprocal_opt = app->add_flag("--reciprocal", c.reciprocal, "use 1/alpha instead of alpha");
  }
  app->add_option("--config", c.config, "key=value configuration file");
  c.start_opt = app->add_option("--start-bits", c.start_bits, "initial working precision");
  c.max_opt = app->add_option("--max-bits", c.max_bits, "precision ceiling (env DIOPH_MAX_BITS)");
  c.target_opt = app->add_option("--target", c.target, "target relative width, e.g. 1/1125899906842624");
  c.output_opt = app->add_option("--output", c.output, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c.out_opt = app->add_option("--out", c.out_path, "output file (default stdout)");
  c.threads_opt = app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

int parse_bits(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int bits = std::stoi(value, &used);
    if (used != value.size() || bits <= 0) throw std::invalid_argument(value);
    return bits;
  } catch (const std::exception&) {
    throw ParseError(key + ": expected a positive bit count, got '" + value + "'");
  }
}

RunConfig resolve(const Common& c) {
  RunConfig rc;
  rc.alpha_source = c.alpha;
  rc.reciprocal = c.reciprocal;
  rc.output = c.output;
  rc.out_path = c.out_path;
  rc.threads = c.threads;
  if (const char* env = std::getenv(kMaxBitsEnv); env != nullptr && *env != '\0') {
    rc.policy.max_bits = parse_bits(kMaxBitsEnv, env);
  }
  auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
  if (!c.config.empty()) {
    std::ifstream in(c.config);
    if (!in) throw ParseError("cannot open config '" + c.config + "'");
    for (const auto& [key, value] : parse_config(in)) {
      if (key == "alpha") {
        if (!given(c.alpha_opt)) rc.alpha_source = value;
      } else if (key == "reciprocal") {
        if (!given(c.reciprocal_opt)) rc.reciprocal = value == "true" || value == "1";
      } else if (key == "start_bits") {
        if (!given(c.start_opt)) rc.policy.start_bits = parse_bits(key, value);
      } else if (key == "max_bits") {
        if (!given(c.max_opt)) rc.policy.max_bits = parse_bits(key, value);
      } else if (key == "target_rel_width") {
        if (!given(c.target_opt)) rc.policy.target_rel_width = parse_rational(value);
      } else if (key == "output") {
        if (value != "csv" && value != "json") throw ParseError("output must be csv or json");
        if (!given(c.output_opt)) rc.output = value;
      } else if (key == "out") {
        if (!given(c.out_opt)) rc.out_path = value;
      } else if (key == "threads") {
        if (!given(c.threads_opt)) rc.threads = static_cast<unsigned>(parse_bits(key, value));
      } else {
        throw ParseError("unknown config key '" + key + "'");
      }
    }
  }
  if (given(c.start_opt)) rc.policy.start_bits = c.start_bits;
  if (given(c.max_opt)) rc.policy.max_bits = c.max_bits;
  if (given(c.target_opt)) rc.policy.target_rel_width = parse_rational(c.target);
  // A low ceiling from the environment should not reject the default start.
  if (!given(c.start_opt) && rc.policy.start_bits > rc.policy.max_bits) {
    rc.policy.start_bits = rc.policy.max_bits;
  }
  rc.policy.validate();
  return rc;
}

RefinableReal alpha_of(const RunConfig& rc) {
  RefinableReal a = load_alpha(rc.alpha_source, rc.policy);
  return rc.reciprocal ? RefinableReal::reciprocal(a) : a;
}

void emit(const RunConfig& rc, std::ostream& out, const std::string& text) {
  if (rc.out_path.empty()) {
    out << text;
    out.flush();
  } else {
    write_file(rc.out_path, text);
  }
}

void emit_json(const RunConfig& rc, std::ostream& out, const json& doc) { emit(rc, out, doc.dump(2) + "\n"); }

void require_json(const RunConfig& rc, const char* command) {
  if (rc.output != "json") throw std::invalid_argument(std::string(command) + " writes JSON only");
}

MuProvenance provenance_of(const std::string& s) {
  if (s == "assumed") return MuProvenance::assumed;
  if (s == "constructed") return MuProvenance::constructed;
  if (s == "literature-bound") return MuProvenance::literature_bound;
  throw ParseError("unknown provenance '" + s + "'");
}

std::vector<TablePoint> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile '" + path + "'");
  std::vector<TablePoint> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("profile line needs 's,y': " + line);
    out.push_back({parse_rational(trim(line.substr(0, comma))), parse_rational(trim(line.substr(comma + 1)))});
  }
  return out;
}

std::string sondow_text(const CFExpansion& cf) {
  if (cf.size() < 2) return "n/a";
  const auto points = sondow_estimate(cf);
  if (points.empty()) return "n/a";
  return points.back().value.to_string(12) + " (running max " + running_maximum(points).to_string(12) + ")";
}

// ---------------------------------------------------------------- commands

struct CfArgs {
  Common common;
  std::size_t terms = 10;
};

int cmd_cf(const CfArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig rc = resolve(a.common);
  require_json(rc, "cf");
  const RefinableReal alpha = alpha_of(rc);
  CFExpansion cf;
  int code = kOk;
  try {
    cf = expand(alpha, a.terms, rc.policy);
  } catch (const ExpansionExhausted& e) {
    err << "warning: " << e.what() << "\n";
    cf = e.partial();
    code = kPrecisionExhausted;
  }
  json doc = {{"alpha", alpha.label()}, {"complete", code == kOk}};
  doc.update(io::to_json(cf));
  emit_json(rc, out, doc);
  err << "terms=" << cf.size();
  if (!cf.empty()) {
    const Convergent& last = cf.convergents().back();
    err << " last=" << last.p.get_str() << "/" << last.q.get_str();
  }
  err << " sondow=" << sondow_text(cf) << "\n";
  return code;
}

struct ScanArgs {
  Common common;
  std::string mu;
  std::string provenance = "assumed";
  std::string eps1;
  std::string eps2;
  std::string q_max = "10000";
  bool no_skip = false;
};

// Without --mu, pi falls back to its published upper bound; every other
// number needs an explicit assumption.
MuSpec mu_of(const std::string& text, const std::string& provenance, const RunConfig& rc) {
  if (!text.empty()) return MuSpec::parse(text, provenance_of(provenance));
  if (rc.alpha_source == "pi" && !rc.reciprocal) return MuSpec::pi_literature_bound();
  throw std::invalid_argument("--mu is required unless --alpha is pi");
}

void check_growth_hypothesis(const MuSpec& mu, const mpq_class& eps1, const mpq_class& eps2) {
  if (eps2 <= 0 || eps2 >= 1) throw DomainError("eps2 must lie in (0, 1)");
  const mpq_class edge = 1 + eps1 / (1 - eps2);
  if (mu.mu <= edge) {
    throw HypothesisViolation("mu = " + rational_to_string(mu.mu) + " does not exceed 1 + eps1/(1 - eps2) = " +
                              rational_to_string(edge));
  }
}

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig rc = resolve(a.common);
  const MuSpec mu = mu_of(a.mu, a.provenance, rc);
  const mpq_class eps1 = parse_rational(a.eps1);
  const mpz_class q_max(a.q_max);
  std::optional<mpq_class> eps2;
  if (!a.eps2.empty()) {
    eps2 = parse_rational(a.eps2);
    check_growth_hypothesis(mu, eps1, *eps2);
  }
  const RefinableReal alpha = alpha_of(rc);
  ScanOptions options;
  options.skip_hopeless = !a.no_skip;
  options.threads = rc.threads;
  const GoodScanResult scan = scan_good(alpha, mu, eps1, q_max, rc.policy, options);
  std::optional<GrowthReport> growth;
  if (eps2) growth = growth_check(scan, *eps2);
  if (rc.output == "csv") {
    std::ostringstream csv;
    io::write_scan_csv(csv, scan);
    emit(rc, out, csv.str());
  } else {
    json doc = io::to_json(scan);
    if (growth) doc["growth"] = io::to_json(*growth);
    emit_json(rc, out, doc);
  }
  // Records short of the width target are flagged in the output; only an
  // undecided classification makes the run incomplete.
  const bool exhausted = !scan.unknown.empty();
  err << "good=" << scan.records.size() << " unknown=" << scan.unknown.size()
      << " evaluated=" << scan.evaluated;
  if (growth) err << " growth=" << (growth->pass ? "pass" : "fail");
  err << "\n";
  return exhausted ? kPrecisionExhausted : kOk;
}

struct SumArgs {
  Common common;
  std::string preset = "flint-hills";
  std::string sine;
  std::string b1 = "1";
  std::string b2 = "1";
  std::string u;
  std::string v;
  unsigned long n_max = 0;
  std::string checkpoint;
  unsigned long checkpoint_every = 1'000'000;
  std::string resume;
  std::string terms_csv;
  std::size_t chunk = 4096;
};

int cmd_sum(const SumArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig rc = resolve(a.common);
  require_json(rc, "sum");
  Preset preset = preset_by_name(a.preset);
  std::string label = preset.name;
  if (!a.sine.empty()) {
    const RefinableReal alpha = alpha_of(rc);
    const mpq_class b1 = parse_rational(a.b1);
    const mpq_class b2 = parse_rational(a.b2);
    if (a.sine == "abs-sin") {
      preset.sine = SineLikeSpec::abs_sin(alpha, b1, b2);
    } else if (a.sine == "lattice-distance") {
      preset.sine = SineLikeSpec::lattice_distance(alpha, b1, b2);
    } else if (a.sine.rfind("custom-table:", 0) == 0) {
      preset.sine = SineLikeSpec::custom_table(alpha, read_table(a.sine.substr(13)), b1, b2);
    } else {
      throw std::invalid_argument("unknown --sine '" + a.sine + "'");
    }
    label = a.sine + " @ " + alpha.label();
  }
  if (!a.u.empty()) preset.params.u = parse_rational(a.u);
  if (!a.v.empty()) preset.params.v = parse_rational(a.v);
  preset.params.validate();

  std::optional<PartialSumLedger> resume;
  if (!a.resume.empty()) resume = io::ledger_from_json(read_json(a.resume));

  std::ofstream terms_file;
  SumOptions options;
  options.threads = rc.threads;
  options.chunk = a.chunk;
  options.checkpoint_every = a.checkpoint_every;
  if (!a.checkpoint.empty()) {
    options.on_checkpoint = [&](const PartialSumLedger& l) { write_file(a.checkpoint, io::to_json(l).dump(2) + "\n"); };
  }
  if (!a.terms_csv.empty()) {
    terms_file.open(a.terms_csv, resume ? std::ios::app : std::ios::trunc);
    if (!terms_file) throw Error("cannot write '" + a.terms_csv + "'");
    if (!resume) io::write_term_csv_header(terms_file);
    options.on_term = [&](unsigned long n, const Enclosure& t) { io::write_term_csv_row(terms_file, n, t.value); };
  }
  const PartialSumLedger ledger = partial_sum(a.n_max, preset.sine, preset.params, rc.policy, options, resume);
  if (!a.checkpoint.empty()) write_file(a.checkpoint, io::to_json(ledger).dump(2) + "\n");

  json doc = {{"series", label},
              {"u", rational_to_string(preset.params.u)},
              {"v", rational_to_string(preset.params.v)},
              {"N", a.n_max}};
  doc.update(io::to_json(ledger));
  emit_json(rc, out, doc);
  err << "S(" << a.n_max << ") in " << ledger.sum.to_string(25);
  if (ledger.largest) err << " largest term at n=" << ledger.largest->n.get_str();
  err << " wide=" << ledger.wide_terms.size() << "\n";
  return ledger.wide_terms.empty() ? kOk : kPrecisionExhausted;
}

struct ConstructArgs {
  Common common;
  std::string u;
  std::string v;
  std::string b2 = "1";
  std::size_t terms = 10;
  std::string prefix = "0,1";
  std::size_t digit_budget = 1'000'000;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig rc = resolve(a.common);
  require_json(rc, "construct");
  const mpq_class u = parse_rational(a.u);
  const mpq_class v = parse_rational(a.v);
  const mpq_class b2 = parse_rational(a.b2);
  std::vector<mpz_class> prefix_terms;
  std::stringstream ss(a.prefix);
  for (std::string item; std::getline(ss, item, ',');) prefix_terms.emplace_back(trim(item));
  const CFExpansion prefix(prefix_terms);
  ConstructOptions options;
  options.digit_budget = a.digit_budget;
  options.policy = rc.policy;
  const CFExpansion cf = construct_divergent(u, v, b2, a.terms, prefix, options);

  // The number is defined by continuing the rule forever; two more terms
  // pin it down tightly enough to decide the last produced convergents.
  CFExpansion extended = cf;
  for (std::size_t extra = 2; extra > 0; --extra) {
    try {
      extended = construct_divergent(u, v, b2, a.terms + extra, cf, options);
      break;
    } catch (const Error&) {
    }
  }

  json checks = json::array();
  bool all_above = true;
  bool any_undecided = false;
  if (cf.size() >= prefix.size() + 1 && prefix.size() >= 1) {
    const std::size_t first = prefix.size() - 1;
    const std::size_t last = cf.size() - 2;
    for (const ConvergentCheck& c : check_convergent_terms(extended, first, last, {u, v}, rc.policy)) {
      const bool decided_low = !c.above_one && certainly_less_equal(c.term, CertReal::from_integer(1, c.term.precision_bits()));
      all_above = all_above && c.above_one;
      any_undecided = any_undecided || (!c.above_one && !decided_low);
      checks.push_back({{"n", c.n}, {"q", c.q.get_str()}, {"term", io::to_json(c.term)},
                        {"above_one", c.above_one}, {"bits", c.bits_used}});
    }
  }
  json sondow = json::array();
  json sondow_final = nullptr;
  if (cf.size() >= 2) {
    const auto points = sondow_estimate(cf);
    for (const SondowPoint& p : points) sondow.push_back({{"n", p.n}, {"value", io::to_json(p.value)}});
    if (!points.empty()) sondow_final = io::to_json(points.back().value);
  }
  json doc = {{"u", rational_to_string(u)}, {"v", rational_to_string(v)}, {"b2", rational_to_string(b2)}};
  doc.update(io::to_json(cf));
  doc["verification"] = {{"terms_used", extended.size()},
                         {"checks", std::move(checks)},
                         {"all_above_one", all_above},
                         {"sondow", std::move(sondow)},
                         {"sondow_final", sondow_final}};
  emit_json(rc, out, doc);
  err << "terms=" << cf.size() << " all_above_one=" << (all_above ? "true" : "false")
      << " sondow=" << sondow_text(cf) << "\n";
  if (all_above) return kOk;
  return any_undecided ? kPrecisionExhausted : kFailure;
}

struct PlanArgs {
  Common common;
  std::string mu;
  std::string u;
  std::string v;
  std::string safety = "1/2";
  bool single_cell = false;
  std::string report_qmax;
  std::string report;
  std::string preset = "flint-hills";
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig rc = resolve(a.common);
  require_json(rc, "plan");
  const MuSpec mu = MuSpec::parse(a.mu);
  const SeriesParams params{parse_rational(a.u), parse_rational(a.v)};
  const mpq_class safety = parse_rational(a.safety);
  const PartitionPlan p = a.single_cell ? single_cell_plan(mu, params, safety) : plan(mu, params, safety);
  emit_json(rc, out, io::to_json(p));
  err << "feasible: k=" << p.k() << " margin=" << rational_to_string(p.margin) << "\n";
  if (!a.report_qmax.empty()) {
    if (a.report.empty()) throw std::invalid_argument("--report-qmax needs --report FILE");
    const Preset preset = preset_by_name(a.preset);
    const auto records = scan_records(preset.sine.alpha, 2, mpz_class(a.report_qmax), rc.policy, rc.threads);
    std::ostringstream csv;
    io::write_cell_report_csv(csv, cell_sum_report(records, p, preset.sine, params, rc.policy));
    write_file(a.report, csv.str());
  }
  return kOk;
}

struct DensityArgs {
  Common common;
  std::string mu;
  std::string provenance = "assumed";
  std::string eps1;
  std::string eps2;
  std::string q_max = "10000";
  std::string scan_file;
  std::string pairs = "adjacent";
};

int cmd_density(const DensityArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig rc = resolve(a.common);
  require_json(rc, "density");
  const mpq_class eps2 = parse_rational(a.eps2);
  GoodScanResult scan;
  if (!a.scan_file.empty()) {
    scan = io::scan_from_json(read_json(a.scan_file));
    check_growth_hypothesis(scan.mu, scan.epsilon1, eps2);
  } else {
    if (a.eps1.empty()) throw std::invalid_argument("density needs --eps1 (or --scan-file)");
    const MuSpec mu = mu_of(a.mu, a.provenance, rc);
    const mpq_class eps1 = parse_rational(a.eps1);
    check_growth_hypothesis(mu, eps1, eps2);
    ScanOptions options;
    options.threads = rc.threads;
    scan = scan_good(alpha_of(rc), mu, eps1, mpz_class(a.q_max), rc.policy, options);
  }
  const GrowthReport growth = growth_check(scan, eps2);
  json windows = json::array();
  for (const ApproxRecord& r : scan.records) {
    if (r.q > scan.q_max) continue;
    const WindowCount w = window_count(scan, r.q, eps2);
    windows.push_back({{"q1", r.q.get_str()}, {"count", w.count}, {"unknown", w.unknown}, {"truncated", w.truncated}});
  }
  bool have_errors = true;
  for (const ApproxRecord& r : scan.records) have_errors = have_errors && r.signed_error.is_finite();
  json audit_doc = nullptr;
  std::size_t violations = 0;
  if (have_errors) {
    const AuditSummary audit = audit_close_pairs(scan, eps2, a.pairs == "all" ? PairMode::all : PairMode::adjacent);
    violations = audit.violations;
    audit_doc = io::to_json(audit);
  }
  json doc = {{"alpha", scan.alpha_id},
              {"mu", rational_to_string(scan.mu.mu)},
              {"mu_provenance", to_string(scan.mu.provenance)},
              {"epsilon1", rational_to_string(scan.epsilon1)},
              {"epsilon2", rational_to_string(eps2)},
              {"q_max", scan.q_max.get_str()},
              {"good", scan.records.size()},
              {"growth", io::to_json(growth)},
              {"windows", std::move(windows)},
              {"audit", std::move(audit_doc)}};
  emit_json(rc, out, doc);
  err << "good=" << scan.records.size() << " growth=" << (growth.pass ? "pass" : "fail")
      << " audit_violations=" << violations << (have_errors ? "" : " (audit skipped: no error data)") << "\n";
  return growth.pass && violations == 0 ? kOk : kFailure;
}

}  // namespace

// ---------------------------------------------------------------- public

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

RefinableReal load_alpha(const std::string& source, const PrecisionPolicy& policy) {
  if (source == "pi") return RefinableReal::pi();
  if (source == "sqrt2") return RefinableReal::sqrt2();
  if (source == "golden") return RefinableReal::golden();
  if (source.rfind("cf-file:", 0) == 0) {
    const std::string path = source.substr(8);
    return continued_fraction_value(io::cf_from_json(read_json(path)), source);
  }
  if (source.rfind("decimal-file:", 0) == 0) {
    const std::string path = source.substr(13);
    std::istringstream in(read_file(path));
    std::string value, error, line;
    while (std::getline(in, line)) {
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) continue;
      std::string key;
      if (const auto eq = line.find('='); eq != std::string::npos) {
        key = trim(line.substr(0, eq));
        line = trim(line.substr(eq + 1));
      }
      if (key == "value" || (key.empty() && value.empty())) {
        value = line;
      } else if (key == "error" || (key.empty() && error.empty())) {
        error = line;
      } else {
        throw ParseError("'" + path + "': unexpected line '" + line + "'");
      }
    }
    if (value.empty()) throw ParseError("'" + path + "': no digits found");
    if (error.empty()) throw ParseError("'" + path + "': an error bound line is required");
    const CertReal x = CertReal::from_decimal(value, error, policy.max_bits);
    if (!x.certainly_positive()) throw DomainError("'" + path + "': the period must be positive");
    return RefinableReal::fixed(source, x);
  }
  throw ParseError("unknown alpha source '" + source + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified Diophantine approximation experiments"};
  app.name("dioph");
  app.require_subcommand(1);

  CfArgs cf;
  CLI::App* cf_cmd = app.add_subcommand("cf", "continued fraction expansion of alpha");
  add_common(cf_cmd, cf.common);
  cf_cmd->add_option("--terms", cf.terms, "number of partial quotients")->check(CLI::PositiveNumber);

  ScanArgs scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "good denominators q <= qmax for 1/alpha");
  add_common(scan_cmd, scan.common);
  scan_cmd->add_option("--mu", scan.mu, "irrationality measure (rational or exactly-2; pi defaults to 7.104)");
  scan_cmd->add_option("--mu-provenance", scan.provenance, "assumed, constructed or literature-bound");
  scan_cmd->add_option("--eps1", scan.eps1, "goodness slack")->required();
  scan_cmd->add_option("--eps2", scan.eps2, "closeness exponent; adds a growth report");
  scan_cmd->add_option("--qmax", scan.q_max, "largest denominator (default 10000)");
  scan_cmd->add_flag("--no-skip", scan.no_skip, "evaluate every q instead of skipping hopeless ones");

  SumArgs sum;
  CLI::App* sum_cmd = app.add_subcommand("sum", "certified partial sum of n^-u P(n)^-v");
  add_common(sum_cmd, sum.common);
  sum_cmd->add_option("--preset", sum.preset, "flint-hills or sqrt2-lattice");
  sum_cmd->add_option("--sine", sum.sine, "abs-sin, lattice-distance or custom-table:PATH (uses --alpha)");
  sum_cmd->add_option("--b1", sum.b1, "lower sandwich constant for --sine");
  sum_cmd->add_option("--b2", sum.b2, "upper sandwich constant for --sine");
  sum_cmd->add_option("--u", sum.u, "exponent of n");
  sum_cmd->add_option("--v", sum.v, "exponent of P(n)");
  sum_cmd->add_option("--N", sum.n_max, "number of terms")->required()->check(CLI::PositiveNumber);
  sum_cmd->add_option("--checkpoint", sum.checkpoint, "ledger file rewritten every --checkpoint-every terms");
  sum_cmd->add_option("--checkpoint-every", sum.checkpoint_every)->check(CLI::PositiveNumber);
  sum_cmd->add_option("--resume", sum.resume, "continue from a ledger file");
  sum_cmd->add_option("--terms-csv", sum.terms_csv, "stream n,term_lo,term_hi to a file");
  sum_cmd->add_option("--chunk", sum.chunk, "terms per parallel batch")->check(CLI::PositiveNumber);

  ConstructArgs con;
  CLI::App* con_cmd = app.add_subcommand("construct", "build a number whose series terms stay above 1");
  add_common(con_cmd, con.common, false);
  con_cmd->add_option("--u", con.u)->required();
  con_cmd->add_option("--v", con.v)->required();
  con_cmd->add_option("--b2", con.b2, "upper sandwich constant");
  con_cmd->add_option("--terms", con.terms, "total number of partial quotients")->check(CLI::PositiveNumber);
  con_cmd->add_option("--prefix", con.prefix, "leading partial quotients, comma separated");
  con_cmd->add_option("--digit-budget", con.digit_budget, "maximum decimal digits per term");

  PlanArgs pl;
  CLI::App* plan_cmd = app.add_subcommand("plan", "convergence partition plan");
  add_common(plan_cmd, pl.common, false);
  plan_cmd->add_option("--mu", pl.mu)->required();
  plan_cmd->add_option("--u", pl.u)->required();
  plan_cmd->add_option("--v", pl.v)->required();
  plan_cmd->add_option("--safety", pl.safety, "slack factor in (0, 1)");
  plan_cmd->add_flag("--single-cell", pl.single_cell, "one-cell plan (needs mu below the weak threshold)");
  plan_cmd->add_option("--report-qmax", pl.report_qmax, "also classify q <= N and sum each cell");
  plan_cmd->add_option("--report", pl.report, "CSV file for the cell report");
  plan_cmd->add_option("--preset", pl.preset, "series preset for the cell report");

  DensityArgs den;
  CLI::App* den_cmd = app.add_subcommand("density", "growth, window and close-pair reports");
  add_common(den_cmd, den.common);
  den_cmd->add_option("--mu", den.mu);
  den_cmd->add_option("--mu-provenance", den.provenance);
  den_cmd->add_option("--eps1", den.eps1);
  den_cmd->add_option("--eps2", den.eps2)->required();
  den_cmd->add_option("--qmax", den.q_max, "largest denominator (default 10000)");
  den_cmd->add_option("--scan-file", den.scan_file, "scan JSON to analyse instead of scanning");
  den_cmd->add_option("--pairs", den.pairs, "adjacent or all")->check(CLI::IsMember({"adjacent", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (*cf_cmd) return cmd_cf(cf, out, err);
    if (*scan_cmd) return cmd_scan(scan, out, err);
    if (*sum_cmd) return cmd_sum(sum, out, err);
    if (*con_cmd) return cmd_construct(con, out, err);
    if (*plan_cmd) return cmd_plan(pl, out, err);
    if (*den_cmd) return cmd_density(den, out, err);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return kInfeasible;
  } catch (const OverflowGuard& e) {
    err << "error: " << e.what() << " (term index " << e.term_index() << ")\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace dioph::cli
