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

// Approximation exponents of denominators and the density machinery built on
// them.
//
// Convention: every record measures how well p/q approximates 1/alpha, where
// alpha is the period handed in. To study alpha itself pass its reciprocal.

#ifndef DIOPH_APPROX_HPP_
#define DIOPH_APPROX_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/numkernel.hpp"

namespace dioph {

enum class MuProvenance { assumed, constructed, literature_bound };

const char* to_string(MuProvenance p);

// An irrationality measure supplied as a hypothesis. Never computed.
struct MuSpec {
  mpq_class mu;
  MuProvenance provenance = MuProvenance::assumed;

  // Throws DomainError when mu < 2.
  static MuSpec make(const mpq_class& mu, MuProvenance provenance = MuProvenance::assumed);
  // "exactly-2"
  static MuSpec exactly_two(MuProvenance provenance = MuProvenance::assumed);
  // Upper bound for pi from the literature, 7.104.
  static MuSpec pi_literature_bound();
  // Accepts "exactly-2" or a rational literal.
  static MuSpec parse(const std::string& text, MuProvenance provenance = MuProvenance::assumed);

  bool is_exactly_two() const { return mu == 2; }
  std::string to_string() const;
};

struct ApproxRecord {
  mpz_class q;
  mpz_class p;
  CertReal signed_error;  // p/q - 1/alpha
  CertReal error;         // |p/q - 1/alpha|
  CertReal exponent;      // -log_q(error)
  Certainty status = Certainty::certified;
};

// Record for denominator q >= 2 with the nearest numerator p certified.
// Both forms of the exponent are computed and must agree.
ApproxRecord exponent(const mpz_class& q, const RefinableReal& alpha, const PrecisionPolicy& policy);

// 1 - log_q((1/alpha) |q - alpha p|) evaluated at a fixed precision.
CertReal exponent_dual_form(const mpz_class& q, const mpz_class& p, const CertReal& alpha);

enum class Goodness { good, not_good, unknown };

const char* to_string(Goodness g);

// Position of the exponent interval relative to mu - epsilon1.
Goodness is_good(const ApproxRecord& record, const MuSpec& mu, const mpq_class& epsilon1);

// q2 - q1 < q1^delta, decided exactly. Throws ArgumentOrder if q1 >= q2.
bool are_close(const mpz_class& q1, const mpz_class& q2, const mpq_class& delta);

// Thrown by combine() when q2 - q1 = 1; the error enclosure is still usable.
class DegenerateDenominator : public Error {
 public:
  DegenerateDenominator(const std::string& what, CertReal error)
      : Error(what), error_(std::move(error)) {}
  const CertReal& error() const { return error_; }

 private:
  CertReal error_;
};

// Record for (p2 - p1) / (q2 - q1) with error |q2 B - q1 A| / (q2 - q1),
// where A, B are the signed errors of r1, r2. The numerator is the one given
// by the pair and is not necessarily the nearest one.
ApproxRecord combine(const ApproxRecord& r1, const ApproxRecord& r2);

// 1 + (mu - 1 - e1)/e2 - 1/(e2 log2 q1). Requires 0 < e2 < 1, q1 >= 2.
CertReal combined_exponent_bound(const MuSpec& mu, const mpq_class& epsilon1,
                                 const mpq_class& epsilon2, const mpz_class& q1,
                                 int precision_bits = 128);

// Smallest integer q0 with mu > 1 + e1/(1-e2) + 1/((1-e2) log2 q0).
// Throws HypothesisViolation when mu <= 1 + e1/(1-e2).
mpz_class slack_threshold(const MuSpec& mu, const mpq_class& epsilon1, const mpq_class& epsilon2);

struct GoodScanResult {
  std::string alpha_id;
  MuSpec mu;
  mpq_class epsilon1;
  mpz_class q_max;
  std::vector<ApproxRecord> records;  // good ones, ascending q
  std::vector<ApproxRecord> unknown;  // straddling ones, ascending q
  std::size_t evaluated = 0;          // records computed (the rest were skipped)
};

struct ScanOptions {
  // Skip denominators that provably cannot be good (multiples of convergent
  // denominators are the only candidates once q^(t-2) > 2).
  bool skip_hopeless = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

GoodScanResult scan_good(const RefinableReal& alpha, const MuSpec& mu, const mpq_class& epsilon1,
                         const mpz_class& q_max, const PrecisionPolicy& policy,
                         const ScanOptions& options = {});

// Every record for q in [q_lo, q_hi], ascending.
std::vector<ApproxRecord> scan_records(const RefinableReal& alpha, const mpz_class& q_lo,
                                       const mpz_class& q_hi, const PrecisionPolicy& policy,
                                       unsigned threads = 0);

struct WindowCount {
  std::size_t count = 0;    // good denominators in (q1, q1 + q1^e2]
  std::size_t unknown = 0;  // unknown ones in the same window
  bool truncated = false;   // window extends past q_max
};

WindowCount window_count(const GoodScanResult& scan, const mpz_class& q1, const mpq_class& epsilon2);

struct GrowthRow {
  std::size_t n;
  mpz_class q;
  CertReal floor;   // C n^gamma
  CertReal margin;  // Q_n / (C n^gamma), >= 1
};

struct GrowthReport {
  mpq_class epsilon2;
  CertReal gamma;  // 1 / (1 - e2)
  std::optional<CertReal> constant;        // largest C with Q_n >= C n^gamma
  std::optional<CertReal> tail_exponent;   // log-log slope over the tail half
  std::vector<GrowthRow> rows;
  bool pass = false;
};

// Finite-range evidence for Q_n = Omega(n^(1/(1-e2))). Throws
// HypothesisViolation when mu <= 1 + e1/(1-e2).
GrowthReport growth_check(const GoodScanResult& scan, const mpq_class& epsilon2);

enum class PairMode { adjacent, all };

struct PairAudit {
  mpz_class q1;
  mpz_class q2;
  std::optional<ApproxRecord> combined;  // empty when q2 - q1 = 1
  CertReal bound;
  bool pass = false;  // combined exponent lower endpoint > bound
};

struct AuditSummary {
  mpz_class slack_threshold;
  std::vector<PairAudit> pairs;  // close pairs with q1 > slack threshold
  std::size_t degenerate = 0;    // close pairs with q2 - q1 = 1
  std::size_t violations = 0;
};

// Combined-exponent audit over good, epsilon2-close pairs of the scan.
AuditSummary audit_close_pairs(const GoodScanResult& scan, const mpq_class& epsilon2,
                               PairMode mode = PairMode::adjacent);

}  // namespace dioph

#endif  // DIOPH_APPROX_HPP_
