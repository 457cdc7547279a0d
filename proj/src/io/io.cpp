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

#include "dioph/io.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>

namespace dioph::io {
namespace {

std::string lo_text(const CertReal& x) { return x.lower().to_decimal(MPFR_RNDD); }
std::string hi_text(const CertReal& x) { return x.upper().to_decimal(MPFR_RNDU); }

BigFloat endpoint_from_text(const std::string& text, int bits, mpfr_rnd_t rnd) {
  BigFloat out(bits);
  if (text == "inf" || text == "-inf") {
    mpfr_set_inf(out.get(), text == "inf" ? 1 : -1);
    return out;
  }
  const mpq_class q = parse_rational(text);
  mpfr_set_q(out.get(), q.get_mpq_t(), rnd);
  return out;
}

std::string text_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  throw ParseError("expected an integer or a string, got " + j.dump());
}

mpz_class integer_of(const json& j) {
  const std::string s = text_of(j);
  mpz_class z;
  if (z.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
  return z;
}

mpq_class rational_of(const json& j) {
  if (j.is_number_float()) throw ParseError("write rationals as strings, got " + j.dump());
  return parse_rational(text_of(j));
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string status_text(Goodness g, Certainty c) {
  std::string s = to_string(g);
  if (c != Certainty::certified) s += "+precision_exhausted";
  return s;
}

CertReal unbounded(int bits) {
  BigFloat lo(bits), hi(bits);
  mpfr_set_inf(lo.get(), -1);
  mpfr_set_inf(hi.get(), 1);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

ApproxRecord record_from_json(const json& j) {
  ApproxRecord r;
  r.q = integer_of(field(j, "q"));
  r.p = j.contains("p") ? integer_of(j.at("p")) : mpz_class(0);
  r.signed_error = j.contains("signed_error") ? cert_real_from_json(j.at("signed_error")) : unbounded(128);
  r.error = j.contains("error") ? cert_real_from_json(j.at("error")) : unbounded(128);
  r.exponent = j.contains("exponent") ? cert_real_from_json(j.at("exponent")) : unbounded(128);
  r.status = j.value("certainty", std::string("certified")) == "certified" ? Certainty::certified
                                                                            : Certainty::precision_exhausted;
  return r;
}

}  // namespace

json to_json(const CertReal& x) {
  return {{"lo", lo_text(x)}, {"hi", hi_text(x)}, {"lo_hex", x.lower().to_hex()},
          {"hi_hex", x.upper().to_hex()}, {"bits", x.precision_bits()}};
}

CertReal cert_real_from_json(const json& j, int bits) {
  if (j.contains("lo_hex") && j.contains("hi_hex")) {
    const int b = j.value("bits", bits);
    return CertReal::from_endpoints(BigFloat::from_hex(j.at("lo_hex").get<std::string>(), b),
                                    BigFloat::from_hex(j.at("hi_hex").get<std::string>(), b));
  }
  return CertReal::from_endpoints(endpoint_from_text(text_of(field(j, "lo")), bits, MPFR_RNDD),
                                  endpoint_from_text(text_of(field(j, "hi")), bits, MPFR_RNDU));
}

// ---------------------------------------------------------------- expansions

json to_json(const CFExpansion& cf) {
  json terms = json::array();
  for (const mpz_class& a : cf.terms()) terms.push_back(a.get_str());
  json convergents = json::array();
  for (const Convergent& c : cf.convergents()) {
    convergents.push_back({{"p", c.p.get_str()}, {"q", c.q.get_str()}});
  }
  return {{"terms", std::move(terms)}, {"convergents", std::move(convergents)}};
}

CFExpansion cf_from_json(const json& j) {
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  std::vector<mpz_class> out;
  for (const json& t : terms) out.push_back(integer_of(t));
  return CFExpansion(out);
}

// ---------------------------------------------------------------- scans

json to_json(const ApproxRecord& r) {
  return {{"q", r.q.get_str()},
          {"p", r.p.get_str()},
          {"signed_error", to_json(r.signed_error)},
          {"error", to_json(r.error)},
          {"exponent", to_json(r.exponent)},
          {"certainty", to_string(r.status)}};
}

json to_json(const GoodScanResult& scan) {
  json records = json::array();
  for (const ApproxRecord& r : scan.records) records.push_back(to_json(r));
  json unknown = json::array();
  for (const ApproxRecord& r : scan.unknown) unknown.push_back(to_json(r));
  return {{"alpha", scan.alpha_id},
          {"mu", rational_to_string(scan.mu.mu)},
          {"mu_provenance", to_string(scan.mu.provenance)},
          {"epsilon1", rational_to_string(scan.epsilon1)},
          {"q_max", scan.q_max.get_str()},
          {"evaluated", scan.evaluated},
          {"records", std::move(records)},
          {"unknown", std::move(unknown)}};
}

GoodScanResult scan_from_json(const json& j) {
  GoodScanResult out;
  out.alpha_id = j.value("alpha", std::string("file"));
  MuProvenance prov = MuProvenance::assumed;
  const std::string p = j.value("mu_provenance", std::string("assumed"));
  if (p == "constructed") prov = MuProvenance::constructed;
  if (p == "literature-bound") prov = MuProvenance::literature_bound;
  out.mu = MuSpec::make(rational_of(field(j, "mu")), prov);
  out.epsilon1 = rational_of(field(j, "epsilon1"));
  if (out.epsilon1 <= 0) throw ParseError("epsilon1 must be positive");
  out.q_max = integer_of(field(j, "q_max"));
  out.evaluated = j.value("evaluated", std::size_t{0});
  for (const json& r : field(j, "records")) out.records.push_back(record_from_json(r));
  if (j.contains("unknown")) {
    for (const json& r : j.at("unknown")) out.unknown.push_back(record_from_json(r));
  }
  auto by_q = [](const ApproxRecord& a, const ApproxRecord& b) { return a.q < b.q; };
  if (!std::is_sorted(out.records.begin(), out.records.end(), by_q)) {
    throw ParseError("scan records must be sorted by q");
  }
  return out;
}

void write_scan_csv(std::ostream& out, const GoodScanResult& scan) {
  out << "q,p,error_lo,error_hi,exp_lo,exp_hi,status\n";
  std::vector<std::pair<const ApproxRecord*, Goodness>> rows;
  for (const ApproxRecord& r : scan.records) rows.emplace_back(&r, Goodness::good);
  for (const ApproxRecord& r : scan.unknown) rows.emplace_back(&r, Goodness::unknown);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first->q < b.first->q; });
  for (const auto& [r, g] : rows) {
    out << r->q.get_str() << ',' << r->p.get_str() << ',' << lo_text(r->error) << ','
        << hi_text(r->error) << ',' << lo_text(r->exponent) << ',' << hi_text(r->exponent) << ','
        << status_text(g, r->status) << '\n';
  }
}

// ---------------------------------------------------------------- sums

json to_json(const PartialSumLedger& ledger) {
  json out = {{"count", ledger.count},
              {"accumulator_bits", ledger.accumulator_bits},
              {"sum", to_json(ledger.sum)}};
  if (ledger.largest) {
    out["largest_term"] = {{"n", ledger.largest->n.get_str()}, {"value", to_json(ledger.largest->value)}};
  } else {
    out["largest_term"] = nullptr;
  }
  out["wide_terms"] = ledger.wide_terms;
  return out;
}

PartialSumLedger ledger_from_json(const json& j) {
  PartialSumLedger out;
  out.count = field(j, "count").get<unsigned long>();
  out.accumulator_bits = field(j, "accumulator_bits").get<int>();
  const json& sum = field(j, "sum");
  if (!sum.contains("lo_hex") || !sum.contains("hi_hex")) {
    throw ParseError("ledger sum needs exact hex endpoints to resume");
  }
  out.sum = cert_real_from_json(sum, out.accumulator_bits);
  if (j.contains("largest_term") && !j.at("largest_term").is_null()) {
    const json& l = j.at("largest_term");
    out.largest = LargestTerm{integer_of(field(l, "n")), cert_real_from_json(field(l, "value"))};
  }
  if (j.contains("wide_terms")) out.wide_terms = j.at("wide_terms").get<std::vector<unsigned long>>();
  return out;
}

void write_term_csv_header(std::ostream& out) { out << "n,term_lo,term_hi\n"; }

void write_term_csv_row(std::ostream& out, unsigned long n, const CertReal& term) {
  out << n << ',' << lo_text(term) << ',' << hi_text(term) << '\n';
}

// ---------------------------------------------------------------- plans

json to_json(const PartitionPlan& plan) {
  json cuts = json::array();
  for (const mpq_class& a : plan.cuts) cuts.push_back(rational_to_string(a));
  json b = json::array();
  for (const mpq_class& x : plan.b) b.push_back(rational_to_string(x));
  return {{"mu", rational_to_string(plan.mu.mu)},
          {"u", rational_to_string(plan.params.u)},
          {"v", rational_to_string(plan.params.v)},
          {"x", rational_to_string(plan.x)},
          {"y", rational_to_string(plan.y)},
          {"cuts", std::move(cuts)},
          {"b", std::move(b)},
          {"margin", rational_to_string(plan.margin)}};
}

PartitionPlan plan_from_json(const json& j) {
  PartitionPlan out{MuSpec::make(rational_of(field(j, "mu"))),
                    {rational_of(field(j, "u")), rational_of(field(j, "v"))},
                    rational_of(field(j, "x")),
                    rational_of(field(j, "y")),
                    {},
                    {},
                    rational_of(field(j, "margin"))};
  for (const json& a : field(j, "cuts")) out.cuts.push_back(rational_of(a));
  for (const json& x : field(j, "b")) out.b.push_back(rational_of(x));
  out.validate();
  return out;
}

void write_cell_report_csv(std::ostream& out, const std::vector<CellReport>& cells) {
  out << "cell,count,sum_lo,sum_hi,predicted_exponent,flagged\n";
  for (const CellReport& c : cells) {
    out << c.cell.to_string() << ',' << c.count << ',' << lo_text(c.sum) << ',' << hi_text(c.sum) << ','
        << (c.predicted ? rational_to_string(*c.predicted) : std::string()) << ','
        << (c.flagged ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------- density

json to_json(const GrowthReport& report) {
  json rows = json::array();
  for (const GrowthRow& r : report.rows) {
    rows.push_back({{"n", r.n}, {"q", r.q.get_str()}, {"floor", to_json(r.floor)}, {"margin", to_json(r.margin)}});
  }
  json out = {{"epsilon2", rational_to_string(report.epsilon2)}, {"gamma", to_json(report.gamma)}};
  out["constant"] = report.constant ? to_json(*report.constant) : json(nullptr);
  out["tail_exponent"] = report.tail_exponent ? json(report.tail_exponent->to_double()) : json(nullptr);
  out["pass"] = report.pass;
  out["rows"] = std::move(rows);
  return out;
}

json to_json(const AuditSummary& audit) {
  json pairs = json::array();
  for (const PairAudit& p : audit.pairs) {
    json entry = {{"q1", p.q1.get_str()}, {"q2", p.q2.get_str()}};
    entry["combined_exponent"] = p.combined ? to_json(p.combined->exponent) : json(nullptr);
    entry["bound"] = to_json(p.bound);
    entry["pass"] = p.pass;
    pairs.push_back(std::move(entry));
  }
  return {{"slack_threshold", audit.slack_threshold.get_str()},
          {"degenerate", audit.degenerate},
          {"violations", audit.violations},
          {"pairs", std::move(pairs)}};
}

}  // namespace dioph::io
