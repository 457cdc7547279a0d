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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dioph/numkernel.hpp"

namespace dioph {
namespace {

mpfr_prec_t clamp_precision(int bits) {
  return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(bits));
}

// NaN can only come from 0 * inf style products; widen it to the
// appropriate infinity so the enclosure stays valid.
void fix_nan(BigFloat& x, int sign) {
  if (mpfr_nan_p(x.get())) mpfr_set_inf(x.get(), sign);
}

}  // namespace

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(int precision_bits) {
  mpfr_init2(value_, clamp_precision(precision_bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

mpq_class BigFloat::to_rational() const {
  if (!is_finite()) throw DomainError("to_rational: value is not finite");
  mpz_class mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  mpq_class q(mantissa);
  if (e > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

std::string BigFloat::to_decimal(mpfr_rnd_t rnd, std::size_t digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(value_)) return "0";
  if (digits == 0) digits = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, digits, value_, rnd);
  std::string mantissa(raw);
  mpfr_free_str(raw);

  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // mantissa = d1 d2 d3 ..., value = 0.d1d2d3... * 10^exponent
  std::string out;
  if (exponent <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + mantissa;
  } else if (static_cast<std::size_t>(exponent) >= mantissa.size()) {
    out = mantissa + std::string(static_cast<std::size_t>(exponent) - mantissa.size(), '0');
  } else {
    out = mantissa.substr(0, static_cast<std::size_t>(exponent)) + "." +
          mantissa.substr(static_cast<std::size_t>(exponent));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sign + out;
}

std::string BigFloat::to_hex() const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%Ra", value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

BigFloat BigFloat::from_hex(std::string_view text, int precision_bits) {
  BigFloat x(precision_bits);
  const std::string s(text);
  char* end = nullptr;
  const int inexact = mpfr_strtofr(x.value_, s.c_str(), &end, 0, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw ParseError("bad float literal: " + s);
  if (inexact != 0) throw ParseError("float literal not exact at " +
                                     std::to_string(precision_bits) + " bits: " + s);
  return x;
}

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::certified:
      return "certified";
    case Certainty::precision_exhausted:
      return "precision_exhausted";
  }
  return "?";
}

// ---------------------------------------------------------------- CertReal

CertReal::CertReal() : CertReal(BigFloat(64), BigFloat(64)) {}

CertReal::CertReal(BigFloat lo, BigFloat hi)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_(std::max(lo_.precision(), hi_.precision())) {}

CertReal CertReal::from_endpoints(BigFloat lo, BigFloat hi) {
  if (mpfr_nan_p(lo.get()) || mpfr_nan_p(hi.get()) || mpfr_greater_p(lo.get(), hi.get())) {
    throw DomainError("CertReal: endpoints out of order");
  }
  return CertReal(std::move(lo), std::move(hi));
}

CertReal CertReal::from_integer(const mpz_class& value, int precision_bits) {
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set_z(lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return CertReal(std::move(lo), std::move(hi));
}

CertReal CertReal::from_rational(const mpq_class& value, int precision_bits) {
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set_q(lo.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), value.get_mpq_t(), MPFR_RNDU);
  return CertReal(std::move(lo), std::move(hi));
}

CertReal CertReal::from_bounds(const mpq_class& a, const mpq_class& b, int precision_bits) {
  const mpq_class& small = a <= b ? a : b;
  const mpq_class& large = a <= b ? b : a;
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set_q(lo.get(), small.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), large.get_mpq_t(), MPFR_RNDU);
  return CertReal(std::move(lo), std::move(hi));
}

CertReal CertReal::from_decimal(std::string_view digits, std::string_view error_bound,
                                int precision_bits) {
  const mpq_class centre = parse_rational(digits);
  const mpq_class radius = parse_rational(error_bound);
  if (radius < 0) throw ParseError("error bound must be nonnegative");
  return from_bounds(centre - radius, centre + radius, precision_bits);
}

BigFloat CertReal::width() const {
  BigFloat w(precision_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double CertReal::relative_width() const {
  if (contains_zero() || !is_finite()) return std::numeric_limits<double>::infinity();
  BigFloat smallest(precision_);
  if (mpfr_sgn(lo_.get()) > 0) {
    mpfr_set(smallest.get(), lo_.get(), MPFR_RNDD);
  } else {
    mpfr_neg(smallest.get(), hi_.get(), MPFR_RNDD);
  }
  BigFloat ratio(precision_);
  mpfr_div(ratio.get(), width().get(), smallest.get(), MPFR_RNDU);
  return mpfr_get_d(ratio.get(), MPFR_RNDU);
}

BigFloat CertReal::midpoint() const {
  BigFloat m(precision_ + 1);
  if (!is_finite()) {
    mpfr_set_nan(m.get());
    return m;
  }
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

bool CertReal::contains(const mpq_class& x) const {
  return compare(lo_, x) <= 0 && compare(hi_, x) >= 0;
}

bool CertReal::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool CertReal::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool CertReal::certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

CertReal CertReal::with_precision(int precision_bits) const {
  BigFloat lo(precision_bits), hi(precision_bits);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return CertReal(std::move(lo), std::move(hi));
}

std::string CertReal::to_string(std::size_t digits) const {
  return "[" + lo_.to_decimal(MPFR_RNDD, digits) + ", " + hi_.to_decimal(MPFR_RNDU, digits) + "]";
}

// ---------------------------------------------------------------- arithmetic

CertReal operator-(const CertReal& x) {
  BigFloat lo(x.precision_bits()), hi(x.precision_bits());
  mpfr_neg(lo.get(), x.upper().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), x.lower().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal operator+(const CertReal& a, const CertReal& b) {
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  BigFloat lo(bits), hi(bits);
  mpfr_add(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal operator-(const CertReal& a, const CertReal& b) {
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  BigFloat lo(bits), hi(bits);
  mpfr_sub(lo.get(), a.lower().get(), b.upper().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.upper().get(), b.lower().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Hull of op over the four endpoint combinations, rounded outward.
CertReal corner_hull(const CertReal& a, const CertReal& b, BinaryOp op) {
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  const BigFloat* xs[2] = {&a.lower(), &a.upper()};
  const BigFloat* ys[2] = {&b.lower(), &b.upper()};
  BigFloat lo(bits), hi(bits), t(bits);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (const BigFloat* x : xs) {
    for (const BigFloat* y : ys) {
      op(t.get(), x->get(), y->get(), MPFR_RNDD);
      fix_nan(t, -1);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      op(t.get(), x->get(), y->get(), MPFR_RNDU);
      fix_nan(t, 1);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  }
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

}  // namespace

CertReal operator*(const CertReal& a, const CertReal& b) { return corner_hull(a, b, mpfr_mul); }

CertReal operator/(const CertReal& a, const CertReal& b) {
  if (b.contains_zero()) throw DomainError("division by an enclosure containing zero");
  return corner_hull(a, b, mpfr_div);
}

CertReal abs(const CertReal& x) {
  if (mpfr_sgn(x.lower().get()) >= 0) return x;
  if (mpfr_sgn(x.upper().get()) <= 0) return -x;
  const int bits = x.precision_bits();
  BigFloat lo(bits), hi(bits);
  mpfr_neg(hi.get(), x.lower().get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), x.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal square(const CertReal& x) {
  const CertReal a = abs(x);
  const int bits = a.precision_bits();
  BigFloat lo(bits), hi(bits);
  mpfr_sqr(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), a.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal sqrt(const CertReal& x) {
  if (mpfr_sgn(x.lower().get()) < 0) throw DomainError("sqrt of a possibly negative enclosure");
  const int bits = x.precision_bits();
  BigFloat lo(bits), hi(bits);
  mpfr_sqrt(lo.get(), x.lower().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal log(const CertReal& x) {
  if (!x.certainly_positive()) throw DomainError("log of an enclosure that is not positive");
  const int bits = x.precision_bits();
  BigFloat lo(bits), hi(bits);
  mpfr_log(lo.get(), x.lower().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal exp(const CertReal& x) {
  const int bits = x.precision_bits();
  BigFloat lo(bits), hi(bits);
  mpfr_exp(lo.get(), x.lower().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal pow(const CertReal& x, long exponent) {
  const int bits = x.precision_bits();
  if (exponent == 0) return CertReal::from_integer(1, bits);
  if (exponent < 0) {
    if (x.contains_zero()) throw DomainError("negative power of an enclosure containing zero");
    return CertReal::from_integer(1, bits) / pow(x, -exponent);
  }
  BigFloat lo(bits), hi(bits);
  if (exponent % 2 == 1 || mpfr_sgn(x.lower().get()) >= 0) {
    // x^k is nondecreasing here.
    mpfr_pow_si(lo.get(), x.lower().get(), exponent, MPFR_RNDD);
    mpfr_pow_si(hi.get(), x.upper().get(), exponent, MPFR_RNDU);
    return CertReal::from_endpoints(std::move(lo), std::move(hi));
  }
  const CertReal a = abs(x);
  mpfr_pow_si(lo.get(), a.lower().get(), exponent, MPFR_RNDD);
  mpfr_pow_si(hi.get(), a.upper().get(), exponent, MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal pow(const CertReal& x, const mpq_class& exponent) {
  if (exponent.get_den() == 1 && exponent.get_num().fits_slong_p()) {
    return pow(x, exponent.get_num().get_si());
  }
  if (!x.certainly_positive()) {
    throw DomainError("non-integer power of an enclosure that is not positive");
  }
  return exp(CertReal::from_rational(exponent, x.precision_bits()) * log(x));
}

CertReal sin(const CertReal& x) {
  const int bits = x.precision_bits();
  if (!x.is_finite()) {
    BigFloat lo(bits), hi(bits);
    mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    return CertReal::from_endpoints(std::move(lo), std::move(hi));
  }
  const CertReal pi = pi_enclosure(std::max(bits, 8) + 8);
  const CertReal unit_lo = CertReal::from_integer(-1, bits);
  const CertReal unit_hi = CertReal::from_integer(1, bits);
  const CertReal two_pi = pi * CertReal::from_integer(2, bits);
  if (!certainly_less(CertReal::from_endpoints(x.width(), x.width()), two_pi)) {
    return hull(unit_lo, unit_hi);
  }

  BigFloat lo(bits), hi(bits), t(bits);
  mpfr_sin(lo.get(), x.lower().get(), MPFR_RNDD);
  mpfr_sin(t.get(), x.upper().get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_sin(hi.get(), x.lower().get(), MPFR_RNDU);
  mpfr_sin(t.get(), x.upper().get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);

  // Interior extrema sit at pi/2 + k*pi with value (-1)^k.
  const CertReal half_pi = pi / CertReal::from_integer(2, bits);
  const CertReal first = (CertReal::from_endpoints(x.lower(), x.lower()) - half_pi) / pi;
  const CertReal last = (CertReal::from_endpoints(x.upper(), x.upper()) - half_pi) / pi;
  const mpz_class k_begin = floor_of(first.lower());
  const mpz_class k_end = floor_of(last.upper()) + 1;
  for (mpz_class k = k_begin; k <= k_end; ++k) {
    const CertReal critical = half_pi + CertReal::from_integer(k, bits) * pi;
    if (!overlaps(critical, x)) continue;
    if (mpz_even_p(k.get_mpz_t())) {
      mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    } else {
      mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    }
  }
  mpfr_max(lo.get(), lo.get(), unit_lo.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), hi.get(), unit_hi.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal hull(const CertReal& a, const CertReal& b) {
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  BigFloat lo(bits), hi(bits);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal intersect(const CertReal& a, const CertReal& b) {
  if (!overlaps(a, b)) {
    throw DomainError("intersect: disjoint enclosures " + a.to_string() + " and " + b.to_string());
  }
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  BigFloat lo(bits), hi(bits);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal min(const CertReal& a, const CertReal& b) {
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  BigFloat lo(bits), hi(bits);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

CertReal max(const CertReal& a, const CertReal& b) {
  const int bits = std::max(a.precision_bits(), b.precision_bits());
  BigFloat lo(bits), hi(bits);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return CertReal::from_endpoints(std::move(lo), std::move(hi));
}

bool certainly_less(const CertReal& a, const CertReal& b) {
  return mpfr_less_p(a.upper().get(), b.lower().get()) != 0;
}

bool certainly_less_equal(const CertReal& a, const CertReal& b) {
  return mpfr_lessequal_p(a.upper().get(), b.lower().get()) != 0;
}

bool certainly_less(const CertReal& a, const mpq_class& b) { return compare(a.upper(), b) < 0; }

bool certainly_greater(const CertReal& a, const mpq_class& b) {
  return compare(a.lower(), b) > 0;
}

bool overlaps(const CertReal& a, const CertReal& b) {
  return mpfr_lessequal_p(a.lower().get(), b.upper().get()) &&
         mpfr_lessequal_p(b.lower().get(), a.upper().get());
}

bool is_subset(const CertReal& inner, const CertReal& outer) {
  return mpfr_lessequal_p(outer.lower().get(), inner.lower().get()) &&
         mpfr_lessequal_p(inner.upper().get(), outer.upper().get());
}

int compare(const BigFloat& x, const mpq_class& q) {
  if (mpfr_nan_p(x.get())) throw DomainError("compare: NaN");
  return mpfr_cmp_q(x.get(), q.get_mpq_t());
}

mpz_class floor_of(const BigFloat& x) {
  if (!x.is_finite()) throw DomainError("floor of a non-finite value");
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
  return z;
}

mpz_class round_of(const BigFloat& x) {
  if (!x.is_finite()) throw DomainError("round of a non-finite value");
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDN);
  return z;
}

// ---------------------------------------------------------------- rationals

mpq_class parse_rational(std::string_view text) {
  const std::string s(text);
  auto fail = [&s]() -> mpq_class { throw ParseError("not a rational number: '" + s + "'"); };
  if (s.empty()) return fail();

  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const mpq_class num = parse_rational(s.substr(0, slash));
    const mpq_class den = parse_rational(s.substr(slash + 1));
    if (den == 0) return fail();
    mpq_class q = num / den;
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return fail();
    const std::string tail = s.substr(i + 1);
    if (tail.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(tail, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != tail.size()) return fail();
  }
  mpz_class numerator(digits, 10);
  if (negative) numerator = -numerator;
  const long shift = exponent - scale;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift >= 0 ? mpq_class(numerator * power) : mpq_class(numerator, power);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const mpq_class& q) {
  mpz_class den = q.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return q.get_str();
  const unsigned long places = std::max(twos, fives);
  if (places == 0) return q.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  const mpz_class scaled = q.get_num() * (scale / q.get_den());
  mpz_class magnitude = scaled < 0 ? mpz_class(-scaled) : scaled;
  std::string digits = magnitude.get_str();
  if (digits.size() <= places) digits = std::string(places - digits.size() + 1, '0') + digits;
  std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
  return (scaled < 0 ? "-" : "") + out;
}

// ---------------------------------------------------------------- policy

void PrecisionPolicy::validate() const {
  if (start_bits <= 0 || max_bits <= 0) {
    throw std::invalid_argument("precision bits must be positive");
  }
  if (start_bits > max_bits) throw std::invalid_argument("start_bits exceeds max_bits");
  if (target_rel_width <= 0) throw std::invalid_argument("target_rel_width must be positive");
}

PrecisionPolicy PrecisionPolicy::scaled(int factor) const {
  PrecisionPolicy p = *this;
  p.start_bits *= factor;
  p.max_bits *= factor;
  return p;
}

bool PrecisionPolicy::meets_target(const CertReal& x) const {
  const double rel = x.relative_width();
  if (!std::isfinite(rel)) return false;
  return mpq_class(rel) <= target_rel_width;
}

}  // namespace dioph
