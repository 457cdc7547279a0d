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

#include <random>

#include "dioph/numkernel.hpp"

using namespace dioph;

namespace {

// Oracle digits (mpmath, 60 significant digits) widened by `err`.
CertReal ref(const char* digits, const char* err = "1e-45") { return CertReal::from_decimal(digits, err, 256); }

mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1'000'000'000L, 1'000'000'000L);
  std::uniform_int_distribution<long> den(1, 1'000'000L);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("pi matches 70 known decimals") {
  const CertReal pi = pi_enclosure(300);
  CHECK(overlaps(pi, ref("3.1415926535897932384626433832795028841971693993751058209749445923078164", "1e-70")));
  CHECK(pi.width().to_double() < 1e-85);
}

TEST_CASE("pi enclosure contains mpfr's correctly rounded constant") {
  for (int bits : {8, 53, 64, 128, 1000, 4096}) {
    const CertReal pi = pi_enclosure(bits);
    BigFloat lo(bits + 16), hi(bits + 16);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    CHECK(is_subset(CertReal::from_endpoints(lo, hi), pi));
  }
}

TEST_CASE("field operations contain the exact rational result") {
  std::mt19937_64 rng(20260101);
  int failures = 0;
  for (int i = 0; i < 10'000; ++i) {
    const mpq_class a = random_rational(rng);
    mpq_class b = random_rational(rng);
    if (b == 0) b = 1;
    const int bits = 24 + static_cast<int>(rng() % 200);
    const CertReal x = CertReal::from_rational(a, bits);
    const CertReal y = CertReal::from_rational(b, bits);
    mpq_class s = a + b, d = a - b, p = a * b, r = a / b;
    if (!(x + y).contains(s) || !(x - y).contains(d) || !(x * y).contains(p) || !(x / y).contains(r)) ++failures;
    if (!square(x).contains(mpq_class(a * a)) || !abs(x).contains(mpq_class(abs(a)))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("elementary functions enclose their inverses") {
  const CertReal two = CertReal::from_integer(2, 128);
  CHECK(square(sqrt(two)).contains(2));
  CHECK(exp(log(CertReal::from_integer(7, 128))).contains(7));
  CHECK(pow(CertReal::from_integer(3, 64), 5).contains(243));
  CHECK(pow(CertReal::from_integer(8, 128), mpq_class(2, 3)).contains(4));
  CHECK_THROWS_AS(log(CertReal::from_integer(-1, 64)), DomainError);
}

TEST_CASE("|sin n| for huge n") {
  const PrecisionPolicy policy;
  const Enclosure e = sin_abs_enclosure(mpz_class("10000000000000000000000"), RefinableReal::pi(), policy);
  CHECK(e.status == Certainty::certified);
  CHECK(overlaps(e.value, ref("0.852200849767188801772705893753029368261762150410043656256509")));
  const Enclosure m = sin_abs_enclosure(1'000'000, RefinableReal::pi(), policy);
  CHECK(overlaps(m.value, ref("0.349993502171292952117652486780771469061406605328716273857059")));
  CHECK(policy.meets_target(m.value));
}

TEST_CASE("nearest lattice point") {
  const LatticeDistance d = nearest_lattice_distance(355, RefinableReal::pi(), PrecisionPolicy{});
  CHECK(d.m == 113);
  CHECK(certainly_less(d.dist, mpq_class(1, 30'000)));
  CHECK(d.dist.certainly_positive());
}

TEST_CASE("decimal parsing and formatting") {
  CHECK(parse_rational("12/5") == mpq_class(12, 5));
  CHECK(parse_rational("2.4") == mpq_class(12, 5));
  CHECK(parse_rational("-1e-3") == mpq_class(-1, 1000));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(rational_to_string(mpq_class(1, 3)) == "1/3");
  CHECK(rational_to_string(mpq_class(5, 2)) == "2.5");
  const CertReal x = CertReal::from_decimal("0.1", "0", 64);
  CHECK(x.contains(mpq_class(1, 10)));
  CHECK_THROWS(CertReal::from_decimal("0.1", "-1", 64));
}

TEST_CASE("hex endpoints round-trip exactly") {
  const CertReal pi = pi_enclosure(200);
  const BigFloat lo = BigFloat::from_hex(pi.lower().to_hex(), 200);
  CHECK(mpfr_equal_p(lo.get(), pi.lower().get()));
}

TEST_CASE("refinable reals tighten and cache") {
  const RefinableReal s = RefinableReal::sqrt2();
  const CertReal a = s.enclose(64), b = s.enclose(256);
  CHECK(is_subset(b, a));
  CHECK(b.width().to_double() < a.width().to_double());
  const RefinableReal r = RefinableReal::reciprocal(RefinableReal::rational(mpq_class(4, 3)));
  CHECK(r.enclose(64).contains(mpq_class(3, 4)));
  CHECK_FALSE(RefinableReal::fixed("x", CertReal::from_integer(1, 64)).refinable());
}

TEST_CASE("policy validation") {
  PrecisionPolicy p;
  p.start_bits = 4096;
  p.max_bits = 128;
  CHECK_THROWS(p.validate());
  const PrecisionPolicy q = PrecisionPolicy{}.scaled(2);
  CHECK(q.start_bits == 256);
  CHECK(q.max_bits == 8192);
}
