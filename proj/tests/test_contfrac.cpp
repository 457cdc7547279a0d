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

#include "dioph/contfrac.hpp"

using namespace dioph;

namespace {

std::vector<std::string> terms_of(const CFExpansion& cf) {
  std::vector<std::string> out;
  for (const mpz_class& t : cf.terms()) out.push_back(t.get_str());
  return out;
}

CFExpansion cf_of(std::initializer_list<long> terms) {
  std::vector<mpz_class> t;
  for (long x : terms) t.emplace_back(x);
  return CFExpansion(t);
}

}  // namespace

TEST_CASE("expansions of classical constants") {
  const PrecisionPolicy policy;
  CHECK(terms_of(expand(RefinableReal::pi(), 10, policy)) ==
        std::vector<std::string>{"3", "7", "15", "1", "292", "1", "1", "1", "2", "1"});
  CHECK(terms_of(expand(RefinableReal::reciprocal(RefinableReal::pi()), 6, policy)) ==
        std::vector<std::string>{"0", "3", "7", "15", "1", "292"});
  const CFExpansion s = expand(RefinableReal::sqrt2(), 40, policy);
  CHECK(s.term(0) == 1);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.term(i) == 2);
  const CFExpansion g = expand(RefinableReal::golden(), 40, policy);
  for (const mpz_class& t : g.terms()) CHECK(t == 1);
  CHECK(g.convergent(39).q == mpz_class("102334155"));
}

TEST_CASE("pi expansion is long and exact") {
  // Spot values from OEIS A001203.
  const CFExpansion cf = expand(RefinableReal::pi(), 100, PrecisionPolicy{});
  CHECK(cf.size() == 100);
  CHECK(cf.term(20) == 1);
  CHECK(cf.term(21) == 84);
  CHECK(cf.convergent(4).p == 103993);
  CHECK(cf.convergent(4).q == 33102);
}

TEST_CASE("convergent recurrences") {
  const CFExpansion cf = cf_of({3, 7, 15, 1, 292});
  CHECK(cf.convergent(1).p == 22);
  CHECK(cf.convergent(1).q == 7);
  CHECK(cf.convergent(3).p == 355);
  CHECK(cf.convergent(3).q == 113);
  CHECK(cf.value() == mpq_class(103993, 33102));
  // Consecutive convergents satisfy p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1}.
  for (std::size_t n = 1; n < cf.size(); ++n) {
    const mpz_class det = cf.convergent(n).p * cf.convergent(n - 1).q - cf.convergent(n - 1).p * cf.convergent(n).q;
    CHECK(det == (n % 2 == 1 ? 1 : -1));
  }
  const auto [lo, hi] = cf.tail_bounds();
  CHECK(lo < hi);
  CHECK(cf.prefix(2) == cf_of({3, 7}));
}

TEST_CASE("wide enclosures stop the expansion with a partial result") {
  const CertReal x = CertReal::from_decimal("3.14159", "1e-5", 64);
  try {
    expand(x, 20);
    FAIL("expected ExpansionExhausted");
  } catch (const ExpansionExhausted& e) {
    CHECK(e.certified_terms() >= 2);
    CHECK(e.certified_terms() < 20);
    CHECK(e.partial().term(0) == 3);
  }
  const RefinableReal fixed = RefinableReal::fixed("x", x);
  CHECK_THROWS_AS(expand(fixed, 20, PrecisionPolicy{}), ExpansionExhausted);
  CHECK(expand(fixed, 2, PrecisionPolicy{}).term(1) == 7);
}

TEST_CASE("convergent error brackets") {
  const CFExpansion cf = expand(RefinableReal::pi(), 6, PrecisionPolicy{});
  // |pi - 355/113| = 2.667e-7 lies inside [1/((a+2)q^2), 1/(a q^2)] with a = 292.
  const ErrorBracket b = convergent_error_bounds(cf, 3);
  const mpq_class err(mpz_class("2667"), mpz_class("10000000000"));
  CHECK(b.lower < err);
  CHECK(err < b.upper);
  CHECK_THROWS(convergent_error_bounds(cf, 5));
}

TEST_CASE("running exponent estimate") {
  const CFExpansion cf = expand(RefinableReal::pi(), 6, PrecisionPolicy{});
  const auto points = sondow_estimate(cf);
  REQUIRE(points.size() == 4);
  // 2 + ln 15 / ln 7, 2 + ln 292 / ln 113.
  CHECK(overlaps(points[0].value, CertReal::from_decimal("3.39166250941", "1e-10", 128)));
  CHECK(overlaps(points[2].value, CertReal::from_decimal("3.20082253031", "1e-10", 128)));
  CHECK(overlaps(running_maximum(points), points[0].value));
}

TEST_CASE("divergent construction") {
  const CFExpansion cf = construct_divergent(3, 2, 1, 12, default_divergent_prefix());
  CHECK(terms_of(cf) == std::vector<std::string>{"0", "1", "2", "3", "5", "11", "35", "207", "2973", "162100",
                                                 "65264040", "527243131660"});
  const auto points = sondow_estimate(cf);
  CHECK(certainly_less(abs(points.back().value - CertReal::from_rational(mpq_class(5, 2), 128)), mpq_class(1, 10)));
}

TEST_CASE("construction guards") {
  ConstructOptions small;
  small.digit_budget = 10;
  CHECK_THROWS_AS(construct_divergent(3, 2, 1, 14, default_divergent_prefix(), small), OverflowGuard);
  try {
    construct_divergent(3, 2, 1, 14, default_divergent_prefix(), small);
  } catch (const OverflowGuard& e) {
    CHECK(e.term_index() == 11);
  }
  CHECK_THROWS(construct_divergent(3, 2, 1, 4, CFExpansion()));
}
