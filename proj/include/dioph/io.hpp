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

// JSON and CSV encodings of the library's result types.
//
// Big integers and rationals are written as strings. Enclosure endpoints are
// positional decimals rounded outward (lower down, upper up), so a parsed
// enclosure always contains the written one; ledgers additionally carry the
// exact binary endpoints in hex for bit-exact resumption.

#ifndef DIOPH_IO_HPP_
#define DIOPH_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dioph/approx.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/partition.hpp"
#include "dioph/series.hpp"

namespace dioph::io {

using json = nlohmann::ordered_json;

json to_json(const CertReal& x);
// Reads {"lo": ..., "hi": ...} (hex endpoints preferred when present).
CertReal cert_real_from_json(const json& j, int precision_bits = 128);

json to_json(const CFExpansion& cf);
// Accepts {"terms": [...]} with integers or integer strings.
CFExpansion cf_from_json(const json& j);

json to_json(const ApproxRecord& r);
json to_json(const GoodScanResult& scan);
// Records need "q"; the remaining fields are optional, so hand-written
// denominator lists load too (their exponents are left unbounded).
GoodScanResult scan_from_json(const json& j);
// q,p,error_lo,error_hi,exp_lo,exp_hi,status for good and unknown records,
// ascending q.
void write_scan_csv(std::ostream& out, const GoodScanResult& scan);

json to_json(const PartialSumLedger& ledger);
PartialSumLedger ledger_from_json(const json& j);
// n,term_lo,term_hi
void write_term_csv_header(std::ostream& out);
void write_term_csv_row(std::ostream& out, unsigned long n, const CertReal& term);

json to_json(const PartitionPlan& plan);
// Validates the plan before returning.
PartitionPlan plan_from_json(const json& j);
void write_cell_report_csv(std::ostream& out, const std::vector<CellReport>& cells);

json to_json(const GrowthReport& report);
json to_json(const AuditSummary& audit);

}  // namespace dioph::io

#endif  // DIOPH_IO_HPP_
