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
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

#include "dioph/numkernel.hpp"

namespace dioph {
namespace {

// Fixed-point arctan(1/x) * 2^scale by the alternating Gregory series.
//
// Each partial power x^-(2k+1) * 2^scale is truncated, so the computed power
// is short by less than 2 units and each term by less than 3 units. Once the
// power reaches zero the remaining alternating tail is below 2 units.
struct FixedPoint {
  mpz_class value;
  mpz_class error_units;
};

FixedPoint arctan_inverse(unsigned long x, unsigned long scale) {
  mpz_class power = mpz_class(1) << scale;
  power /= x;
  const mpz_class x2 = mpz_class(x) * x;
  FixedPoint out;
  unsigned long k = 0;
  while (power != 0) {
    mpz_class term = power / (2 * k + 1);
    if (k % 2 == 0) {
      out.value += term;
    } else {
      out.value -= term;
    }
    power /= x2;
    ++k;
  }
  out.error_units = 3 * mpz_class(k) + 4;
  return out;
}

CertReal compute_pi(int bits) {
  const unsigned long scale = static_cast<unsigned long>(bits) + 64;
  // pi = 16 arctan(1/5) - 4 arctan(1/239)
  const FixedPoint a5 = arctan_inverse(5, scale);
  const FixedPoint a239 = arctan_inverse(239, scale);
  const mpz_class centre = 16 * a5.value - 4 * a239.value;
  const mpz_class radius = 16 * a5.error_units + 4 * a239.error_units;
  const mpz_class denom = mpz_class(1) << scale;
  return CertReal::from_bounds(mpq_class(centre - radius, denom), mpq_class(centre + radius, denom),
                               bits + 2);
}

int bit_length(const mpz_class& z) {
  return z == 0 ? 1 : static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

CertReal exact_integer(const mpz_class& n, int bits) {
  return CertReal::from_integer(n, std::max(bits, bit_length(n) + 1));
}

void check_period(const CertReal& alpha) {
  if (alpha.contains_zero()) throw DomainError("period enclosure contains zero");
  if (alpha.certainly_negative()) throw DomainError("period must be positive");
}

template <typename Step>
void for_each_precision(const PrecisionPolicy& policy, const RefinableReal& alpha, Step&& step) {
  policy.validate();
  int bits = policy.start_bits;
  while (true) {
    const bool last = bits >= policy.max_bits || !alpha.refinable();
    if (step(bits, last)) return;
    bits = std::min(bits * 2, policy.max_bits);
  }
}

}  // namespace

CertReal pi_enclosure(int bits) {
  if (bits < 8) throw DomainError("pi_enclosure needs at least 8 bits");
  if (bits > kMaxPiBits) {
    throw ResourceLimit("pi_enclosure: " + std::to_string(bits) + " bits exceeds the ceiling of " +
                        std::to_string(kMaxPiBits));
  }
  static std::shared_mutex mutex;
  static std::map<int, CertReal> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(bits); it != cache.end()) return it->second;
  }
  CertReal value = compute_pi(bits);
  std::unique_lock lock(mutex);
  return cache.emplace(bits, std::move(value)).first->second;
}

// ---------------------------------------------------------------- RefinableReal

struct RefinableReal::Cache {
  std::shared_mutex mutex;
  std::map<int, CertReal> entries;
};

RefinableReal::RefinableReal(std::string label, Evaluator evaluator, bool refinable)
    : label_(std::move(label)),
      evaluator_(std::move(evaluator)),
      refinable_(refinable),
      cache_(std::make_shared<Cache>()) {}

CertReal RefinableReal::enclose(int precision_bits) const {
  {
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->entries.find(precision_bits); it != cache_->entries.end()) {
      return it->second;
    }
  }
  CertReal value = evaluator_(precision_bits);
  std::unique_lock lock(cache_->mutex);
  return cache_->entries.emplace(precision_bits, std::move(value)).first->second;
}

RefinableReal RefinableReal::pi() {
  return RefinableReal("pi", [](int bits) { return pi_enclosure(std::max(bits, 8)); });
}

RefinableReal RefinableReal::sqrt2() {
  return RefinableReal("sqrt2", [](int bits) { return sqrt(CertReal::from_integer(2, bits)); });
}

RefinableReal RefinableReal::golden() {
  return RefinableReal("golden", [](int bits) {
    const CertReal root5 = sqrt(CertReal::from_integer(5, bits));
    return (CertReal::from_integer(1, bits) + root5) / CertReal::from_integer(2, bits);
  });
}

RefinableReal RefinableReal::rational(const mpq_class& value) {
  return RefinableReal(rational_to_string(value),
                       [value](int bits) { return CertReal::from_rational(value, bits); });
}

RefinableReal RefinableReal::fixed(std::string label, CertReal value) {
  return RefinableReal(
      std::move(label), [value](int) { return value; }, false);
}

RefinableReal RefinableReal::reciprocal(const RefinableReal& x) {
  return RefinableReal(
      "1/(" + x.label() + ")",
      [x](int bits) { return CertReal::from_integer(1, bits) / x.enclose(bits); }, x.refinable());
}

// ---------------------------------------------------------------- reduction

Enclosure sin_abs_enclosure(const mpz_class& n, const RefinableReal& alpha,
                            const PrecisionPolicy& policy) {
  if (n < 1) throw DomainError("sin_abs_enclosure: n must be positive");
  Enclosure out;
  for_each_precision(policy, alpha, [&](int bits, bool last) {
    const CertReal a = alpha.enclose(bits);
    check_period(a);
    const CertReal nn = exact_integer(n, bits);
    const mpz_class m = round_of((nn / a).midpoint());
    const CertReal reduced = nn - exact_integer(m, bits) * a;
    out.value = abs(sin(reduced));
    out.bits_used = bits;
    if (policy.meets_target(out.value)) {
      out.status = Certainty::certified;
      return true;
    }
    out.status = Certainty::precision_exhausted;
    return last;
  });
  return out;
}

LatticeDistance nearest_lattice_distance(const mpz_class& n, const RefinableReal& alpha,
                                         const PrecisionPolicy& policy) {
  if (n < 1) throw DomainError("nearest_lattice_distance: n must be positive");
  LatticeDistance out;
  bool unique = false;
  for_each_precision(policy, alpha, [&](int bits, bool last) {
    const CertReal a = alpha.enclose(bits);
    check_period(a);
    const CertReal nn = exact_integer(n, bits);
    const CertReal ratio = nn / a;
    mpz_class m = round_of(ratio.midpoint());
    if (m < 0) m = 0;
    // m is the unique minimiser iff n / alpha lies strictly within 1/2 of m.
    const mpq_class half(1, 2);
    unique = compare(ratio.lower(), mpq_class(m) - half) > 0 &&
             compare(ratio.upper(), mpq_class(m) + half) < 0;
    if (!unique) return last;
    out.m = m;
    out.dist = abs(nn - exact_integer(m, bits) * a);
    out.bits_used = bits;
    if (policy.meets_target(out.dist)) {
      out.status = Certainty::certified;
      return true;
    }
    out.status = Certainty::precision_exhausted;
    return last;
  });
  if (!unique) {
    throw PrecisionExhausted("nearest_lattice_distance: cannot certify a unique nearest multiple for n=" +
                             n.get_str() + " within " + std::to_string(policy.max_bits) + " bits");
  }
  return out;
}

}  // namespace dioph
