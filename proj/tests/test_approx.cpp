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

#include <string>
#include <vector>

#include "dioph/approx.hpp"

using namespace dioph;

namespace {

CertReal ref(const char* digits, const char* err = "1e-18") { return CertReal::from_decimal(digits, err, 128); }

std::vector<std::string> qs(const std::vector<ApproxRecord>& records) {
  std::vector<std::string> out;
  for (const ApproxRecord& r : records) out.push_back(r.q.get_str());
  return out;
}

GoodScanResult hand_scan(std::initializer_list<long> q_values, long q_max, const MuSpec& mu, const mpq_class& eps1) {
  GoodScanResult s;
  s.alpha_id = "hand";
  s.mu = mu;
  s.epsilon1 = eps1;
  s.q_max = q_max;
  for (long q : q_values) {
    ApproxRecord r;
    r.q = q;
    s.records.push_back(r);
  }
  return s;
}

}  // namespace

TEST_CASE("exponent fixtures for 1/pi") {
  const PrecisionPolicy policy;
  const RefinableReal pi = RefinableReal::pi();
  const ApproxRecord r22 = exponent(22, pi, policy);
  CHECK(r22.p == 7);
  CHECK(r22.status == Certainty::certified);
  CHECK(r22.signed_error.certainly_negative());  // 7/22 < 1/pi
  CHECK(overlaps(r22.exponent, ref("2.8996525621859828367724890174295865968")));
  const ApproxRecord r355 = exponent(355, pi, policy);
  CHECK(r355.p == 113);
  CHECK(overlaps(r355.error, CertReal::from_decimal("2.7028861094072978794e-8", "1e-27", 128)));
  CHECK(overlaps(r355.exponent, ref("2.96764493444996038607504280177898")));
  const ApproxRecord r9999 = exponent(9999, pi, policy);
  CHECK(r9999.p == 3183);
  CHECK(overlaps(r9999.exponent, ref("1.1646688572892828296")));
  CHECK(overlaps(r9999.signed_error, CertReal::from_decimal("2.1946999527660295416e-5", "1e-23", 128)));
}

TEST_CASE("exponent fixtures for sqrt2 and golden") {
  const PrecisionPolicy policy;
  const ApproxRecord s = exponent(17, RefinableReal::sqrt2(), policy);
  CHECK(s.p == 12);
  CHECK(s.signed_error.certainly_negative());
  CHECK(overlaps(s.exponent, ref("2.3666700908639077482")));
  const ApproxRecord g = exponent(13, RefinableReal::golden(), policy);
  CHECK(g.p == 8);
  CHECK(overlaps(g.exponent, ref("2.313274574259401127")));
  const ApproxRecord g1000 = exponent(1000, RefinableReal::golden(), policy);
  CHECK(g1000.p == 618);
  CHECK(overlaps(g1000.exponent, ref("1.4895549361535263138")));
}

TEST_CASE("dual form agrees with the direct exponent") {
  const PrecisionPolicy policy;
  for (long q : {7L, 113L, 4096L, 33102L}) {
    const ApproxRecord r = exponent(q, RefinableReal::pi(), policy);
    CHECK(overlaps(r.exponent, exponent_dual_form(q, r.p, RefinableReal::pi().enclose(256))));
  }
}

TEST_CASE("doubling precision never widens an exponent") {
  const PrecisionPolicy base;
  const PrecisionPolicy fine = base.scaled(2);
  for (long q = 2; q < 400; q += 7) {
    const ApproxRecord a = exponent(q, RefinableReal::sqrt2(), base);
    const ApproxRecord b = exponent(q, RefinableReal::sqrt2(), fine);
    CHECK(a.p == b.p);
    CHECK(mpfr_lessequal_p(b.exponent.width().get(), a.exponent.width().get()));
    CHECK(overlaps(a.exponent, b.exponent));
  }
}

TEST_CASE("mu specs") {
  CHECK(MuSpec::parse("exactly-2").is_exactly_two());
  CHECK(MuSpec::parse("12/5").mu == mpq_class(12, 5));
  CHECK(MuSpec::pi_literature_bound().mu == parse_rational("7.104"));
  CHECK(MuSpec::pi_literature_bound().provenance == MuProvenance::literature_bound);
  CHECK_THROWS_AS(MuSpec::make(mpq_class(3, 2)), DomainError);
}

TEST_CASE("goodness is decided by the certified exponent") {
  const PrecisionPolicy policy;
  const ApproxRecord r = exponent(22, RefinableReal::pi(), policy);
  CHECK(is_good(r, MuSpec::make(mpq_class(5, 2)), mpq_class(1, 10)) == Goodness::good);
  CHECK(is_good(r, MuSpec::make(3), mpq_class(1, 20)) == Goodness::not_good);
  ApproxRecord wide = r;
  wide.exponent = CertReal::from_bounds(mpq_class(2), mpq_class(3), 64);
  CHECK(is_good(wide, MuSpec::make(mpq_class(5, 2)), mpq_class(1, 1000)) == Goodness::unknown);
}

TEST_CASE("closeness is exact") {
  CHECK(are_close(10, 12, mpq_class(1, 2)));
  CHECK_FALSE(are_close(100, 110, mpq_class(1, 2)));  // 10 < 10 fails
  CHECK(are_close(100, 109, mpq_class(1, 2)));
  CHECK_FALSE(are_close(100, 111, mpq_class(1, 2)));
  CHECK_FALSE(are_close(113, 33102, mpq_class(9, 10)));
  CHECK_THROWS(are_close(12, 10, mpq_class(1, 2)));
}

TEST_CASE("combining 333 and 355 gives 22/7") {
  const PrecisionPolicy policy;
  const RefinableReal pi = RefinableReal::pi();
  const ApproxRecord a = exponent(333, pi, policy);
  const ApproxRecord b = exponent(355, pi, policy);
  const ApproxRecord c = combine(a, b);
  CHECK(c.q == 22);
  CHECK(c.p == 7);
  CHECK(overlaps(c.signed_error, exponent(22, pi, policy).signed_error));
  CHECK_THROWS_AS(combine(exponent(2, pi, policy), exponent(3, pi, policy)), DegenerateDenominator);
}

TEST_CASE("combined exponent bound and slack threshold") {
  const MuSpec mu = MuSpec::make(mpq_class(5, 2));
  CHECK(overlaps(combined_exponent_bound(mu, mpq_class(1, 10), mpq_class(1, 2), 1024), ref("3.6", "1e-30")));
  CHECK(slack_threshold(mu, mpq_class(1, 10), mpq_class(1, 2)) == 3);
  CHECK_THROWS_AS(slack_threshold(mu, mpq_class(1, 10), mpq_class(19, 20)), HypothesisViolation);
}

TEST_CASE("good denominators of 1/pi") {
  const PrecisionPolicy policy;
  const RefinableReal pi = RefinableReal::pi();
  const MuSpec mu = MuSpec::make(mpq_class(5, 2));
  const GoodScanResult a = scan_good(pi, mu, mpq_class(1, 5), 10'000, policy);
  CHECK(qs(a.records) ==
        std::vector<std::string>{"2", "3", "6", "22", "44", "355", "710", "1065", "1420", "1775"});
  CHECK(a.unknown.empty());
  const GoodScanResult b = scan_good(pi, mu, mpq_class(1, 10), 10'000, policy);
  CHECK(qs(b.records) == std::vector<std::string>{"2", "3", "22", "355", "710", "1065", "1420"});
  CHECK(b.evaluated < 100);
}

TEST_CASE("skipping hopeless denominators changes nothing") {
  const PrecisionPolicy policy;
  ScanOptions brute;
  brute.skip_hopeless = false;
  for (const RefinableReal& alpha : {RefinableReal::pi(), RefinableReal::sqrt2(), RefinableReal::golden()}) {
    for (const mpq_class& eps1 : {mpq_class(1, 10), mpq_class(3, 10)}) {
      const MuSpec mu = MuSpec::make(mpq_class(5, 2));
      const GoodScanResult fast = scan_good(alpha, mu, eps1, 5000, policy);
      const GoodScanResult slow = scan_good(alpha, mu, eps1, 5000, policy, brute);
      CHECK(qs(fast.records) == qs(slow.records));
      CHECK(qs(fast.unknown) == qs(slow.unknown));
      CHECK(slow.evaluated == 4999);
    }
  }
}

TEST_CASE("threaded scans match single-threaded ones") {
  const PrecisionPolicy policy;
  const auto one = scan_records(RefinableReal::golden(), 2, 600, policy, 1);
  const auto four = scan_records(RefinableReal::golden(), 2, 600, policy, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].q == four[i].q);
    CHECK(mpfr_equal_p(one[i].exponent.lower().get(), four[i].exponent.lower().get()));
  }
}

TEST_CASE("window counts") {
  const GoodScanResult s = hand_scan({4, 5, 6, 7, 9, 20}, 30, MuSpec::make(3), mpq_class(1, 10));
  // (4, 4 + 4^(1/2)] = (4, 6]
  const WindowCount w = window_count(s, 4, mpq_class(1, 2));
  CHECK(w.count == 2);
  CHECK_FALSE(w.truncated);
  CHECK(window_count(s, 20, mpq_class(1, 2)).count == 0);
  CHECK(window_count(s, 29, mpq_class(1, 2)).truncated);
}

TEST_CASE("growth report") {
  const MuSpec mu = MuSpec::make(3);
  // Q_n = 2 n^3 outgrows n^(1/(1-1/2)) = n^2; the worst ratio is at n = 1.
  const GoodScanResult cubes = hand_scan({2, 16, 54, 128, 250, 432, 686, 1024, 1458, 2000}, 2000, mu, mpq_class(1, 10));
  const GrowthReport g = growth_check(cubes, mpq_class(1, 2));
  CHECK(g.pass);
  REQUIRE(g.constant.has_value());
  CHECK(g.constant->contains(2));
  for (const GrowthRow& row : g.rows) CHECK_FALSE(certainly_less(row.margin, mpq_class(1)));
  const GoodScanResult dense = hand_scan({2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 12, mu, mpq_class(1, 10));
  CHECK_FALSE(growth_check(dense, mpq_class(1, 2)).pass);
  CHECK_THROWS_AS(growth_check(dense, mpq_class(19, 20)), HypothesisViolation);
}

TEST_CASE("close-pair audit on an assumed measure of 2") {
  const PrecisionPolicy policy;
  const MuSpec mu = MuSpec::exactly_two();
  const GoodScanResult s = scan_good(RefinableReal::pi(), mu, mpq_class(1, 10), 3000, policy);
  for (const PairMode mode : {PairMode::adjacent, PairMode::all}) {
    const AuditSummary audit = audit_close_pairs(s, mpq_class(1, 2), mode);
    CHECK(!audit.pairs.empty());
    CHECK(audit.violations == 0);
    for (const PairAudit& p : audit.pairs) CHECK(p.q1 > audit.slack_threshold);
  }
}
