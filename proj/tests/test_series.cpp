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

#include <vector>

#include "dioph/series.hpp"

using namespace dioph;

namespace {

CertReal ref(const char* digits, const char* err = "1e-30") { return CertReal::from_decimal(digits, err, 256); }

bool same_bits(const CertReal& a, const CertReal& b) {
  return mpfr_equal_p(a.lower().get(), b.lower().get()) && mpfr_equal_p(a.upper().get(), b.upper().get());
}

RefinableReal two_over_pi() {
  return RefinableReal("2/pi", [](int bits) { return CertReal::from_integer(2, bits) / pi_enclosure(bits); });
}

}  // namespace

TEST_CASE("flint-hills terms") {
  const Preset fh = flint_hills_preset();
  const PrecisionPolicy policy;
  CHECK(overlaps(term(1, fh.sine, fh.params, policy).value, ref("1.4122829274373919146093350045416249023722951")));
  CHECK(overlaps(term(2, fh.sine, fh.params, policy).value, ref("0.1511813046328797398609691855650862984508138")));
  const Enclosure t355 = term(355, fh.sine, fh.params, policy);
  CHECK(t355.status == Certainty::certified);
  CHECK(overlaps(t355.value, ref("24.598181220706851649754978922756450097435", "1e-25")));
}

TEST_CASE("lattice-distance terms") {
  const Preset lat = sqrt2_lattice_preset();
  const PrecisionPolicy policy;
  CHECK(overlaps(term(1, lat.sine, lat.params, policy).value, ref("5.828427124746190097603377448419396157139")));
  CHECK(overlaps(term(1000, lat.sine, lat.params, policy).value,
                 ref("0.000000043851102771759532465742597430293770921204", "1e-45")));
  const PartialSumLedger s = partial_sum(100, lat.sine, lat.params, policy);
  CHECK(overlaps(s.sum, ref("8.9654752408268958174008706013874937060746972")));
}

TEST_CASE("tent profile reproduces the scaled lattice distance") {
  const RefinableReal a = RefinableReal::sqrt2();
  const SineLikeSpec tent = SineLikeSpec::custom_table(a, {{0, 0}, {mpq_class(1, 2), mpq_class(1, 2)}},
                                                     mpq_class(1, 2), 1);
  const SineLikeSpec lattice = SineLikeSpec::lattice_distance(a);
  for (long n : {1L, 2L, 7L, 99L, 100'000L}) {
    CHECK(overlaps(evaluate(tent, mpz_class(n), 200) * a.enclose(200), evaluate(lattice, mpz_class(n), 200)));
  }
  CHECK_THROWS_AS(SineLikeSpec::custom_table(a, {{0, 0}, {mpq_class(1, 4), 1}}, 1, 1), DomainError);
  CHECK_THROWS_AS(SineLikeSpec::custom_table(a, {{0, 0}, {mpq_class(1, 2), 1}}, 1, 1), DomainError);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(SineLikeSpec::abs_sin(RefinableReal::pi(), 1, 1), DomainError);
  CHECK_NOTHROW(SineLikeSpec::abs_sin(RefinableReal::pi(), mpq_class(1, 2), 1));
  CHECK_NOTHROW(SineLikeSpec::abs_sin(RefinableReal::sqrt2(), mpq_class(1, 2), 3));
  CHECK_THROWS_AS(SineLikeSpec::abs_sin(RefinableReal::sqrt2(), mpq_class(1, 2), 2), DomainError);
  CHECK_THROWS_AS(SineLikeSpec::lattice_distance(RefinableReal::sqrt2(), mpq_class(1, 2), mpq_class(9, 10)),
                  DomainError);
  CHECK_THROWS((SeriesParams{0, 2}.validate()));
  CHECK_THROWS(preset_by_name("nope"));
}

TEST_CASE("partial sums") {
  const Preset fh = flint_hills_preset();
  const PrecisionPolicy policy;
  const PartialSumLedger s2 = partial_sum(2, fh.sine, fh.params, policy);
  CHECK(overlaps(s2.sum, ref("1.56346423207027165447030419010671120082")));
  const PartialSumLedger s = partial_sum(10'000, fh.sine, fh.params, policy);
  CHECK(overlaps(s.sum, ref("30.314510833013895512698174626204564782599770298456")));
  CHECK(s.sum.width().to_double() < 1e-20);
  REQUIRE(s.largest.has_value());
  CHECK(s.largest->n == 355);
  CHECK(s.wide_terms.empty());
}

TEST_CASE("sums are bit-identical across threads and chunking") {
  const Preset fh = flint_hills_preset();
  const PrecisionPolicy policy;
  SumOptions serial;
  serial.threads = 1;
  SumOptions parallel;
  parallel.threads = 4;
  parallel.chunk = 333;
  const PartialSumLedger a = partial_sum(3000, fh.sine, fh.params, policy, serial);
  const PartialSumLedger b = partial_sum(3000, fh.sine, fh.params, policy, parallel);
  CHECK(same_bits(a.sum, b.sum));
}

TEST_CASE("resuming from a checkpoint equals one run") {
  const Preset fh = flint_hills_preset();
  const PrecisionPolicy policy;
  std::vector<unsigned long> seen;
  SumOptions options;
  options.checkpoint_every = 250;
  options.on_checkpoint = [&](const PartialSumLedger& l) { seen.push_back(l.count); };
  const PartialSumLedger whole = partial_sum(1000, fh.sine, fh.params, policy, options);
  CHECK(seen == std::vector<unsigned long>{250, 500, 750, 1000});
  const PartialSumLedger half = partial_sum(400, fh.sine, fh.params, policy);
  const PartialSumLedger resumed = partial_sum(1000, fh.sine, fh.params, policy, {}, half);
  CHECK(same_bits(whole.sum, resumed.sum));
  CHECK(resumed.largest->n == whole.largest->n);
}

TEST_CASE("term bounds from the approximation exponent") {
  const Preset fh = flint_hills_preset();
  const PrecisionPolicy policy;
  for (long q : {22L, 355L, 33102L}) {
    const ApproxRecord r = exponent(q, fh.sine.alpha, policy);
    const CertReal t = term(q, fh.sine, fh.params, policy).value;
    CHECK(certainly_less_equal(t, term_upper_bound(q, r, fh.sine, fh.params)));
    CHECK(certainly_less_equal(term_lower_bound(q, r, fh.sine, fh.params), t));
  }
}

TEST_CASE("sine sandwich for small n") {
  const Preset fh = flint_hills_preset();
  for (long n = 1; n <= 200; ++n) {
    const SandwichCheck c = check_sandwich(n, fh.sine, two_over_pi(), RefinableReal::rational(1), PrecisionPolicy{});
    CHECK(c.lower_ok);
    CHECK(c.upper_ok);
  }
}

TEST_CASE("terms at the convergents of a constructed number stay above one") {
  const CFExpansion cf = construct_divergent(3, 2, 1, 10, default_divergent_prefix());
  const auto checks = check_convergent_terms(cf, 1, 8, {3, 2}, PrecisionPolicy{});
  REQUIRE(checks.size() == 8);
  for (const ConvergentCheck& c : checks) CHECK(c.above_one);
}
