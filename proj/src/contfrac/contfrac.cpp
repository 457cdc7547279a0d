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

#include "dioph/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dioph {
namespace {

int bit_length(const mpz_class& z) {
  return z == 0 ? 1 : static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

mpz_class ceil_of(const mpq_class& x) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

mpz_class floor_of(const mpq_class& x) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- CFExpansion

CFExpansion::CFExpansion(const std::vector<mpz_class>& terms) {
  for (const mpz_class& a : terms) append(a);
}

void CFExpansion::append(const mpz_class& term) {
  if (terms_.empty() ? term < 0 : term < 1) {
    throw DomainError("continued fraction term " + std::to_string(terms_.size()) +
                      " out of range: " + term.get_str());
  }
  const std::size_t n = terms_.size();
  const mpz_class p1 = n >= 1 ? convergents_[n - 1].p : mpz_class(1);
  const mpz_class q1 = n >= 1 ? convergents_[n - 1].q : mpz_class(0);
  const mpz_class p2 = n >= 2 ? convergents_[n - 2].p : mpz_class(n == 1 ? 1 : 0);
  const mpz_class q2 = n >= 2 ? convergents_[n - 2].q : mpz_class(n == 1 ? 0 : 1);
  terms_.push_back(term);
  convergents_.push_back({term * p1 + p2, term * q1 + q2});
}

mpq_class CFExpansion::value() const {
  if (empty()) throw DomainError("value of an empty continued fraction");
  const Convergent& c = convergents_.back();
  mpq_class out(c.p, c.q);
  out.canonicalize();
  return out;
}

std::pair<mpq_class, mpq_class> CFExpansion::tail_bounds() const {
  if (empty()) throw DomainError("tail bounds of an empty continued fraction");
  const std::size_t n = size();
  const Convergent& last = convergents_[n - 1];
  const mpz_class p_prev = n >= 2 ? convergents_[n - 2].p : mpz_class(1);
  const mpz_class q_prev = n >= 2 ? convergents_[n - 2].q : mpz_class(0);
  mpq_class a(last.p, last.q);
  mpq_class b(last.p + p_prev, last.q + q_prev);
  a.canonicalize();
  b.canonicalize();
  if (b < a) std::swap(a, b);
  return {a, b};
}

CFExpansion CFExpansion::prefix(std::size_t count) const {
  CFExpansion out;
  for (std::size_t i = 0; i < std::min(count, size()); ++i) out.append(terms_[i]);
  return out;
}

// ---------------------------------------------------------------- expansion

CFExpansion expand(const CertReal& alpha, std::size_t n_terms) {
  if (!alpha.is_finite()) throw DomainError("expand: enclosure is not finite");
  mpq_class lo = alpha.lower().to_rational();
  mpq_class hi = alpha.upper().to_rational();
  if (lo < 0) throw DomainError("expand: only nonnegative reals are supported");
  CFExpansion cf;
  while (cf.size() < n_terms) {
    const mpz_class a = floor_of(lo);
    if (floor_of(hi) != a) {
      throw ExpansionExhausted("expand: enclosure too wide to separate term " +
                                   std::to_string(cf.size()),
                               cf);
    }
    cf.append(a);
    if (cf.size() == n_terms) break;
    lo -= a;
    hi -= a;
    if (lo <= 0) {
      throw ExpansionExhausted("expand: enclosure reaches a rational endpoint after term " +
                                   std::to_string(cf.size() - 1),
                               cf);
    }
    // x -> 1 / (x - a) is decreasing on (a, a + 1).
    mpq_class next_lo = 1 / hi;
    mpq_class next_hi = 1 / lo;
    lo = std::move(next_lo);
    hi = std::move(next_hi);
  }
  return cf;
}

CFExpansion expand(const RefinableReal& alpha, std::size_t n_terms, const PrecisionPolicy& policy) {
  policy.validate();
  int bits = policy.start_bits;
  while (true) {
    try {
      return expand(alpha.enclose(bits), n_terms);
    } catch (const ExpansionExhausted& e) {
      if (bits >= policy.max_bits || !alpha.refinable()) {
        throw ExpansionExhausted("expand(" + alpha.label() + "): certified " +
                                     std::to_string(e.certified_terms()) + " of " +
                                     std::to_string(n_terms) + " terms within " +
                                     std::to_string(bits) + " bits",
                                 e.partial());
      }
    }
    bits = std::min(bits * 2, policy.max_bits);
  }
}

RefinableReal continued_fraction_value(const CFExpansion& cf, std::string label) {
  const auto bounds = cf.tail_bounds();
  return RefinableReal(std::move(label), [bounds](int bits) {
    return CertReal::from_bounds(bounds.first, bounds.second, bits);
  }, /*refinable=*/false);
}

// ---------------------------------------------------------------- analysis

ErrorBracket convergent_error_bounds(const CFExpansion& cf, std::size_t n) {
  if (n + 1 >= cf.size()) {
    throw std::out_of_range("convergent_error_bounds: a_" + std::to_string(n + 1) +
                            " is not available");
  }
  const mpz_class& a = cf.term(n + 1);
  const mpz_class q2 = cf.convergent(n).q * cf.convergent(n).q;
  return {mpq_class(1, (a + 2) * q2), mpq_class(1, a * q2)};
}

std::vector<SondowPoint> sondow_estimate(const CFExpansion& cf, int precision_bits) {
  if (cf.size() < 2) throw std::invalid_argument("sondow_estimate needs at least two terms");
  std::vector<SondowPoint> out;
  const CertReal two = CertReal::from_integer(2, precision_bits);
  for (std::size_t n = 1; n + 1 < cf.size(); ++n) {
    const mpz_class& q = cf.convergent(n).q;
    if (q < 2) continue;
    const CertReal num = log(CertReal::from_integer(cf.term(n + 1), precision_bits));
    const CertReal den = log(CertReal::from_integer(q, precision_bits));
    out.push_back({n, two + num / den});
  }
  return out;
}

CertReal running_maximum(const std::vector<SondowPoint>& points) {
  if (points.empty()) throw std::invalid_argument("running_maximum of an empty sequence");
  CertReal best = points.front().value;
  for (const SondowPoint& p : points) best = max(best, p.value);
  return best;
}

// ---------------------------------------------------------------- construction

CFExpansion default_divergent_prefix() { return CFExpansion({mpz_class(0), mpz_class(1)}); }

CFExpansion construct_divergent(const mpq_class& u, const mpq_class& v, const mpq_class& b2,
                                std::size_t n_terms, const CFExpansion& prefix,
                                const ConstructOptions& options) {
  if (u <= 0 || v <= 0 || b2 <= 0) throw DomainError("construct_divergent: u, v, B2 must be positive");
  if (prefix.empty()) throw DomainError("construct_divergent: prefix must be nonempty");
  if (n_terms < prefix.size()) {
    throw std::invalid_argument("construct_divergent: n_terms is shorter than the prefix");
  }
  options.policy.validate();
  mpq_class exponent = u / v - 1;
  exponent.canonicalize();

  CFExpansion cf = prefix;
  while (cf.size() < n_terms) {
    const std::size_t index = cf.size();
    const mpz_class& q = cf.convergents().back().q;
    // The reciprocal 1/alpha lies in the tail interval of the terms so far;
    // the largest alpha compatible with it sits at its lower end.
    const mpq_class recip_lo = cf.tail_bounds().first;
    if (recip_lo <= 0) {
      throw DomainError("construct_divergent: prefix does not bound alpha (1/alpha may be 0)");
    }
    mpq_class scale = b2 / recip_lo;
    scale.canonicalize();

    // log10 of the new term, to refuse absurd sizes before computing them.
    const double estimate =
        exponent.get_d() * static_cast<double>(mpz_sizeinbase(q.get_mpz_t(), 10)) +
        std::log10(std::max(scale.get_d(), 1e-300));
    if (estimate > static_cast<double>(options.digit_budget) + 2) {
      throw OverflowGuard("construct_divergent: term " + std::to_string(index) +
                              " would exceed the digit budget of " +
                              std::to_string(options.digit_budget) + " digits",
                          index);
    }

    mpz_class term;
    if (exponent.get_den() == 1) {
      const mpz_class& e = exponent.get_num();
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), mpz_class(abs(e)).get_ui());
      const mpq_class target = e >= 0 ? mpq_class(scale * power) : mpq_class(scale / power);
      term = ceil_of(target);
    } else {
      // Enough bits to hold the integer part of the target plus headroom.
      const int magnitude_bits =
          std::max(0, static_cast<int>(std::ceil(exponent.get_d() * bit_length(q)))) +
          bit_length(scale.get_num()) + 2;
      int bits = options.policy.start_bits + magnitude_bits;
      const int ceiling = options.policy.max_bits + magnitude_bits;
      while (true) {
        const CertReal target = CertReal::from_rational(scale, bits) *
                                pow(CertReal::from_integer(q, bits), exponent);
        mpz_class lo_ceil, hi_ceil;
        mpfr_get_z(lo_ceil.get_mpz_t(), target.lower().get(), MPFR_RNDU);
        mpfr_get_z(hi_ceil.get_mpz_t(), target.upper().get(), MPFR_RNDU);
        if (lo_ceil == hi_ceil) {
          term = hi_ceil;
          break;
        }
        if (bits >= ceiling) {
          throw PrecisionExhausted("construct_divergent: cannot certify the ceiling for term " +
                                   std::to_string(index));
        }
        bits = std::min(bits * 2, ceiling);
      }
    }
    if (term < 1) term = 1;
    if (mpz_sizeinbase(term.get_mpz_t(), 10) > options.digit_budget) {
      throw OverflowGuard("construct_divergent: term " + std::to_string(index) + " has more than " +
                              std::to_string(options.digit_budget) + " digits",
                          index);
    }
    cf.append(term);
  }
  return cf;
}

}  // namespace dioph
