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

// Sine-like periodic functions P and the series sum n^-u P(n)^-v.

#ifndef DIOPH_SERIES_HPP_
#define DIOPH_SERIES_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/numkernel.hpp"

namespace dioph {

enum class SineKind { abs_sin, lattice_distance, custom_table };

const char* to_string(SineKind kind);

// Vertex of a custom profile: P(s * alpha) = y for s in [0, 1/2].
struct TablePoint {
  mpq_class s;
  mpq_class y;
};

struct SineLikeSpec {
  RefinableReal alpha;  // period
  mpq_class b1;
  mpq_class b2;
  SineKind kind = SineKind::abs_sin;
  // abs_sin only: the period is pi itself, so P(x) = |sin x| exactly.
  bool pi_period = false;
  std::vector<TablePoint> table;  // custom_table only

  // |sin(pi x / alpha)|.
  static SineLikeSpec abs_sin(const RefinableReal& alpha, const mpq_class& b1, const mpq_class& b2);
  // Distance from x to the nearest multiple of alpha.
  static SineLikeSpec lattice_distance(const RefinableReal& alpha, const mpq_class& b1 = 1,
                                       const mpq_class& b2 = 1);
  // Even, alpha-periodic, piecewise linear through `table`, which must start
  // at (0, 0), end at s = 1/2 and be strictly increasing in s.
  static SineLikeSpec custom_table(const RefinableReal& alpha, std::vector<TablePoint> table,
                                   const mpq_class& b1, const mpq_class& b2);

  // Checks 0 < b1 <= b2 and, where it can be decided, the sandwich
  // b1 |x| <= P(x) <= b2 |x| on |x| <= alpha/2. Throws DomainError.
  void validate(int precision_bits = 128) const;
};

struct SeriesParams {
  mpq_class u;
  mpq_class v;

  void validate() const;  // u > 0, v > 0
};

struct Preset {
  std::string name;
  SineLikeSpec sine;
  SeriesParams params;
};

// "flint-hills": pi, |sin|, B1 = 1/2, B2 = 1, u = 3, v = 2.
Preset flint_hills_preset();
// "sqrt2-lattice": sqrt 2, lattice distance, B1 = B2 = 1, u = 3, v = 2.
Preset sqrt2_lattice_preset();
// Looks a preset up by name; throws std::invalid_argument.
Preset preset_by_name(const std::string& name);

// P(x) at a fixed precision.
CertReal evaluate(const SineLikeSpec& p, const CertReal& x, int precision_bits);
CertReal evaluate(const SineLikeSpec& p, const mpz_class& n, int precision_bits);

// n^-u P(n)^-v at a fixed precision. The upper end is +inf when the
// enclosure of P(n) touches zero.
CertReal term_at(const mpz_class& n, const SineLikeSpec& p, const SeriesParams& params,
                 int precision_bits);

// Adaptive version of term_at.
Enclosure term(const mpz_class& n, const SineLikeSpec& p, const SeriesParams& params,
               const PrecisionPolicy& policy);

// (alpha B1)^-v n^-(u + v - v r(n)), an upper bound on the term.
// Requires record.q == n.
CertReal term_upper_bound(const mpz_class& n, const ApproxRecord& record, const SineLikeSpec& p,
                          const SeriesParams& params);
// (alpha B2)^-v n^-(u + v - v r(n)), a lower bound on the term.
CertReal term_lower_bound(const mpz_class& n, const ApproxRecord& record, const SineLikeSpec& p,
                          const SeriesParams& params);

// b1 dist(n) <= P(n) <= b2 dist(n) as certified interval inequalities,
// where dist is the distance from n to the nearest multiple of the period.
// The factors may be irrational (e.g. 2/pi). Precision is raised until both
// sides are decided or policy.max_bits is reached.
struct SandwichCheck {
  CertReal dist;
  CertReal value;
  bool lower_ok = false;
  bool upper_ok = false;
};
SandwichCheck check_sandwich(const mpz_class& n, const SineLikeSpec& p, const RefinableReal& b1,
                             const RefinableReal& b2, const PrecisionPolicy& policy);

struct LargestTerm {
  mpz_class n;
  CertReal value;
};

struct PartialSumLedger {
  unsigned long count = 0;  // terms summed so far (n = 1..count)
  CertReal sum;
  std::optional<LargestTerm> largest;
  std::vector<unsigned long> wide_terms;  // precision exhausted
  int accumulator_bits = 0;
};

struct SumOptions {
  unsigned long checkpoint_every = 1'000'000;
  unsigned threads = 0;       // 0 = hardware concurrency
  std::size_t chunk = 4096;  // terms evaluated per parallel batch
  std::function<void(const PartialSumLedger&)> on_checkpoint;
  std::function<void(unsigned long n, const Enclosure& term)> on_term;
};

// Certified S(N) = sum_{n<=N} term(n). Terms are evaluated in parallel but
// folded strictly in ascending n at policy.start_bits, so the enclosure is
// bit-identical for any thread count or chunk size. `resume` continues a
// previous ledger (which must come from the same inputs and policy).
PartialSumLedger partial_sum(unsigned long n_max, const SineLikeSpec& p, const SeriesParams& params,
                             const PrecisionPolicy& policy, const SumOptions& options = {},
                             const std::optional<PartialSumLedger>& resume = std::nullopt);

// Term at a convergent denominator of a constructed number.
struct ConvergentCheck {
  std::size_t n;
  mpz_class q;
  CertReal term;
  bool above_one = false;  // certified term > 1
  int bits_used = 0;
};

// For each n in [first, last], the term q_n^-u dist(q_n)^-v with period
// alpha = 1 / x, where x is the real whose expansion begins with `cf`
// (lattice distance, B1 = B2 = 1). Precision is raised until the term is
// certainly on one side of 1 or policy.max_bits is reached.
std::vector<ConvergentCheck> check_convergent_terms(const CFExpansion& cf, std::size_t first,
                                                    std::size_t last, const SeriesParams& params,
                                                    const PrecisionPolicy& policy);

}  // namespace dioph

#endif  // DIOPH_SERIES_HPP_
