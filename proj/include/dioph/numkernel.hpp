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

// Certified real arithmetic.
//
// A CertReal is a closed interval [lo, hi] whose endpoints are MPFR binary
// floats. Every operation rounds the lower endpoint toward -inf and the upper
// endpoint toward +inf, so the true value of any expression built from
// enclosures stays inside the resulting enclosure.

#ifndef DIOPH_NUMKERNEL_HPP_
#define DIOPH_NUMKERNEL_HPP_

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "dioph/errors.hpp"

namespace dioph {

// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(int precision_bits = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  // Exact value; requires a finite number.
  mpq_class to_rational() const;

  // Positional decimal rendering rounded in direction `rnd`, never in
  // scientific notation. `digits` = 0 picks enough digits to round-trip.
  std::string to_decimal(mpfr_rnd_t rnd, std::size_t digits = 0) const;
  // Exact hexadecimal rendering ("0x1.8p+1"); parse with from_hex.
  std::string to_hex() const;
  static BigFloat from_hex(std::string_view text, int precision_bits);

 private:
  mpfr_t value_;
};

// Status attached to results of adaptive-precision operations.
enum class Certainty {
  certified,            // target width met
  precision_exhausted,  // max_bits reached; enclosure valid but wide
};

const char* to_string(Certainty c);

class CertReal {
 public:
  // The point 0 at 64 bits.
  CertReal();

  static CertReal from_integer(const mpz_class& value, int precision_bits);
  static CertReal from_rational(const mpq_class& value, int precision_bits);
  // Hull of two rationals (order does not matter).
  static CertReal from_bounds(const mpq_class& a, const mpq_class& b, int precision_bits);
  // Takes ownership of already outward-rounded endpoints. Requires lo <= hi.
  static CertReal from_endpoints(BigFloat lo, BigFloat hi);
  // Decimal digits with an absolute error bound, e.g. ("3.14159", "1e-5").
  static CertReal from_decimal(std::string_view digits, std::string_view error_bound,
                               int precision_bits);

  const BigFloat& lower() const { return lo_; }
  const BigFloat& upper() const { return hi_; }
  int precision_bits() const { return precision_; }

  // Upper bound on hi - lo.
  BigFloat width() const;
  // Upper bound on (hi - lo) / min |x| over the enclosure; +inf when the
  // enclosure touches zero.
  double relative_width() const;
  // Midpoint rounded to nearest.
  BigFloat midpoint() const;
  double to_double() const { return midpoint().to_double(); }

  bool is_finite() const { return lo_.is_finite() && hi_.is_finite(); }
  bool contains(const mpq_class& x) const;
  bool contains_zero() const;
  bool certainly_positive() const;
  bool certainly_negative() const;

  // Same enclosure re-rounded outward to a new endpoint precision.
  CertReal with_precision(int precision_bits) const;

  // "[lo, hi]" in positional decimal.
  std::string to_string(std::size_t digits = 20) const;

 private:
  CertReal(BigFloat lo, BigFloat hi);

  BigFloat lo_;
  BigFloat hi_;
  int precision_;
};

CertReal operator-(const CertReal& x);
CertReal operator+(const CertReal& a, const CertReal& b);
CertReal operator-(const CertReal& a, const CertReal& b);
CertReal operator*(const CertReal& a, const CertReal& b);
// Throws DomainError when b contains zero.
CertReal operator/(const CertReal& a, const CertReal& b);

CertReal abs(const CertReal& x);
CertReal square(const CertReal& x);
CertReal sqrt(const CertReal& x);
// Natural logarithm; requires x certainly positive.
CertReal log(const CertReal& x);
CertReal exp(const CertReal& x);
CertReal pow(const CertReal& x, long exponent);
// x^e for rational e; requires x certainly positive unless e is an integer.
CertReal pow(const CertReal& x, const mpq_class& exponent);
CertReal sin(const CertReal& x);
CertReal hull(const CertReal& a, const CertReal& b);
// Common part of two enclosures of the same value; throws DomainError when
// they are disjoint.
CertReal intersect(const CertReal& a, const CertReal& b);
// Enclosure of min(a, b) / max(a, b) over all choices in the two intervals.
CertReal min(const CertReal& a, const CertReal& b);
CertReal max(const CertReal& a, const CertReal& b);

// Interval relations. "certainly_*" holds for every pair of points.
bool certainly_less(const CertReal& a, const CertReal& b);
bool certainly_less_equal(const CertReal& a, const CertReal& b);
bool certainly_less(const CertReal& a, const mpq_class& b);
bool certainly_greater(const CertReal& a, const mpq_class& b);
bool overlaps(const CertReal& a, const CertReal& b);
bool is_subset(const CertReal& inner, const CertReal& outer);
// Exact comparisons between a float endpoint and a rational.
int compare(const BigFloat& x, const mpq_class& q);

// Floor / nearest integer of an MPFR value (exact).
mpz_class floor_of(const BigFloat& x);
mpz_class round_of(const BigFloat& x);

// Parses "0.25", "1/4", "2.5e-3", or "-3" exactly.
mpq_class parse_rational(std::string_view text);
// Exact decimal-or-fraction rendering used in JSON documents.
std::string rational_to_string(const mpq_class& q);

struct PrecisionPolicy {
  static constexpr int kDefaultStartBits = 128;
  static constexpr int kDefaultMaxBits = 4096;

  int start_bits = kDefaultStartBits;
  int max_bits = kDefaultMaxBits;
  mpq_class target_rel_width = mpq_class(1, mpz_class(1) << 50);

  // Checks start_bits <= max_bits, start_bits > 0 and target > 0.
  void validate() const;
  // Same policy with both bit counts multiplied by `factor`.
  PrecisionPolicy scaled(int factor) const;
  bool meets_target(const CertReal& x) const;
};

// A real number that can be enclosed at any requested precision.
//
// Enclosures are memoised per precision behind an internally synchronised
// cache, so a RefinableReal may be shared freely across threads.
class RefinableReal {
 public:
  using Evaluator = std::function<CertReal(int precision_bits)>;

  RefinableReal(std::string label, Evaluator evaluator, bool refinable = true);

  static RefinableReal pi();
  static RefinableReal sqrt2();
  static RefinableReal golden();
  static RefinableReal rational(const mpq_class& value);
  // A fixed enclosure that does not improve with precision.
  static RefinableReal fixed(std::string label, CertReal value);
  static RefinableReal reciprocal(const RefinableReal& x);

  CertReal enclose(int precision_bits) const;
  const std::string& label() const { return label_; }
  bool refinable() const { return refinable_; }

 private:
  struct Cache;

  std::string label_;
  Evaluator evaluator_;
  bool refinable_;
  std::shared_ptr<Cache> cache_;
};

// Hard ceiling for pi_enclosure.
inline constexpr int kMaxPiBits = 1 << 20;

// Enclosure of pi of width <= 2^(2 - bits), computed from Machin's formula
// with explicit truncation and tail bounds. Requires bits >= 8.
CertReal pi_enclosure(int bits);

struct Enclosure {
  CertReal value;
  Certainty status = Certainty::certified;
  int bits_used = 0;
};

// |sin(n - m * alpha)| for the integer m nearest n / alpha; equals |sin(n)|
// when alpha encloses pi. Precision doubles from policy.start_bits until the
// relative width target is met.
Enclosure sin_abs_enclosure(const mpz_class& n, const RefinableReal& alpha,
                            const PrecisionPolicy& policy);

struct LatticeDistance {
  mpz_class m;
  CertReal dist;
  Certainty status = Certainty::certified;
  int bits_used = 0;
};

// The m >= 0 minimising |n - alpha * m| together with that minimum. Throws
// PrecisionExhausted when the minimiser cannot be certified unique.
LatticeDistance nearest_lattice_distance(const mpz_class& n, const RefinableReal& alpha,
                                         const PrecisionPolicy& policy);

}  // namespace dioph

#endif  // DIOPH_NUMKERNEL_HPP_
