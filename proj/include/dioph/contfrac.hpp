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

// Exact simple continued fractions [a0; a1, a2, ...] and their convergents.

#ifndef DIOPH_CONTFRAC_HPP_
#define DIOPH_CONTFRAC_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dioph/errors.hpp"
#include "dioph/numkernel.hpp"

namespace dioph {

struct Convergent {
  mpz_class p;
  mpz_class q;
};

// Append-only expansion. Convergents follow the recurrence
// p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}
// seeded with p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1.
class CFExpansion {
 public:
  CFExpansion() = default;
  // Throws DomainError on a negative a0 or a non-positive a_i for i >= 1.
  explicit CFExpansion(const std::vector<mpz_class>& terms);

  void append(const mpz_class& term);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<mpz_class>& terms() const { return terms_; }
  const std::vector<Convergent>& convergents() const { return convergents_; }
  const mpz_class& term(std::size_t i) const { return terms_.at(i); }
  const Convergent& convergent(std::size_t n) const { return convergents_.at(n); }

  // Value of the finite fraction, p_{N-1} / q_{N-1}.
  mpq_class value() const;
  // Closed interval holding every number whose expansion starts with these
  // terms: the hull of p_{N-1}/q_{N-1} and (p_{N-1}+p_{N-2})/(q_{N-1}+q_{N-2}).
  std::pair<mpq_class, mpq_class> tail_bounds() const;

  // First `count` terms.
  CFExpansion prefix(std::size_t count) const;

  bool operator==(const CFExpansion& other) const { return terms_ == other.terms_; }

 private:
  std::vector<mpz_class> terms_;
  std::vector<Convergent> convergents_;
};

// Thrown by expand() when the enclosure cannot separate the next partial
// quotient. Carries the terms that were certified.
class ExpansionExhausted : public PrecisionExhausted {
 public:
  ExpansionExhausted(const std::string& what, CFExpansion partial)
      : PrecisionExhausted(what), partial_(std::move(partial)) {}
  const CFExpansion& partial() const { return partial_; }
  std::size_t certified_terms() const { return partial_.size(); }

 private:
  CFExpansion partial_;
};

// First `n_terms` partial quotients of every real in `alpha`. A term is
// emitted only when the whole remaining enclosure has the same floor; the
// arithmetic runs on the exact rational endpoints.
CFExpansion expand(const CertReal& alpha, std::size_t n_terms);
// Re-expands at doubling precision until n_terms are certified.
CFExpansion expand(const RefinableReal& alpha, std::size_t n_terms, const PrecisionPolicy& policy);

// The real whose expansion begins with `cf`, enclosed by its tail bounds.
RefinableReal continued_fraction_value(const CFExpansion& cf, std::string label = "cf");

struct ErrorBracket {
  mpq_class lower;
  mpq_class upper;
};

// (1 / ((a_{n+1} + 2) q_n^2), 1 / (a_{n+1} q_n^2)), which brackets
// |x - p_n / q_n| strictly. Throws std::out_of_range without a_{n+1}.
ErrorBracket convergent_error_bounds(const CFExpansion& cf, std::size_t n);

struct SondowPoint {
  std::size_t n;
  CertReal value;  // 2 + ln(a_{n+1}) / ln(q_n)
};

// Running estimate 2 + ln(a_{n+1}) / ln(q_n) for every n >= 1 with q_n >= 2
// and a_{n+1} available. Finite-depth values only: this is a running
// estimate and never the irrationality measure itself.
std::vector<SondowPoint> sondow_estimate(const CFExpansion& cf, int precision_bits = 128);
// Enclosure of the maximum over a sequence of points.
CertReal running_maximum(const std::vector<SondowPoint>& points);

struct ConstructOptions {
  std::size_t digit_budget = 1'000'000;  // decimal digits per constructed term
  PrecisionPolicy policy;
};

// Extends `prefix` (the expansion of 1/alpha) to n_terms terms, choosing
// a_{n+1} = ceil(alpha * b2 * q_n^(u/v - 1)) with alpha taken at the top of
// its enclosure implied by the terms so far. The resulting alpha has
// irrationality measure 1 + u/v in the limit.
CFExpansion construct_divergent(const mpq_class& u, const mpq_class& v, const mpq_class& b2,
                                std::size_t n_terms, const CFExpansion& prefix,
                                const ConstructOptions& options = {});

// [0; 1]
CFExpansion default_divergent_prefix();

}  // namespace dioph

#endif  // DIOPH_CONTFRAC_HPP_
