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

#include "dioph/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "dioph/detail/parallel.hpp"

namespace dioph {
namespace {

int bit_length(const mpz_class& z) {
  return z == 0 ? 1 : static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

CertReal exact_integer(const mpz_class& n, int bits) {
  return CertReal::from_integer(n, std::max(bits, bit_length(n) + 1));
}

CertReal positive_inf(int bits) {
  BigFloat inf(bits);
  mpfr_set_inf(inf.get(), 1);
  return CertReal::from_endpoints(inf, inf);
}

// x^-e for x certainly positive; integer exponents avoid exp/log.
CertReal reciprocal_power(const CertReal& x, const mpq_class& e) {
  if (e.get_den() == 1 && e.get_num().fits_slong_p()) {
    return CertReal::from_integer(1, x.precision_bits()) / pow(x, e.get_num().get_si());
  }
  return pow(x, mpq_class(-e));
}

CertReal linear_piece(const TablePoint& a, const TablePoint& b, const CertReal& t, int bits) {
  mpq_class slope = (b.y - a.y) / (b.s - a.s);
  slope.canonicalize();
  return CertReal::from_rational(a.y, bits) +
         CertReal::from_rational(slope, bits) * (t - CertReal::from_rational(a.s, bits));
}

// Range of the piecewise-linear profile over s in [lo, hi] within [0, 1/2].
CertReal interpolate(const std::vector<TablePoint>& table, const CertReal& s, int bits) {
  const mpq_class half(1, 2);
  BigFloat lo(s.lower()), hi(s.upper());
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  if (compare(hi, half) > 0) mpfr_set_d(hi.get(), 0.5, MPFR_RNDU);
  if (mpfr_cmp(lo.get(), hi.get()) > 0) lo = hi;
  std::optional<CertReal> out;
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    const TablePoint& a = table[i];
    const TablePoint& b = table[i + 1];
    if (compare(hi, a.s) < 0 || compare(lo, b.s) > 0) continue;
    // Clamp the query to this segment; a linear piece attains its range at
    // the ends of the clamped query.
    const CertReal seg_lo = compare(lo, a.s) < 0 ? CertReal::from_rational(a.s, bits)
                                                  : CertReal::from_endpoints(lo, lo);
    const CertReal seg_hi = compare(hi, b.s) > 0 ? CertReal::from_rational(b.s, bits)
                                                  : CertReal::from_endpoints(hi, hi);
    const CertReal range = hull(linear_piece(a, b, seg_lo, bits), linear_piece(a, b, seg_hi, bits));
    out = out ? hull(*out, range) : range;
  }
  if (!out) throw std::logic_error("interpolate: query outside the profile");
  return *out;
}

}  // namespace

const char* to_string(SineKind kind) {
  switch (kind) {
    case SineKind::abs_sin:
      return "abs-sin";
    case SineKind::lattice_distance:
      return "lattice-distance";
    case SineKind::custom_table:
      return "custom-table";
  }
  return "?";
}

SineLikeSpec SineLikeSpec::abs_sin(const RefinableReal& alpha, const mpq_class& b1, const mpq_class& b2) {
  SineLikeSpec out{alpha, b1, b2, SineKind::abs_sin, alpha.label() == "pi", {}};
  out.validate();
  return out;
}

SineLikeSpec SineLikeSpec::lattice_distance(const RefinableReal& alpha, const mpq_class& b1,
                                            const mpq_class& b2) {
  SineLikeSpec out{alpha, b1, b2, SineKind::lattice_distance, false, {}};
  out.validate();
  return out;
}

SineLikeSpec SineLikeSpec::custom_table(const RefinableReal& alpha, std::vector<TablePoint> table,
                                        const mpq_class& b1, const mpq_class& b2) {
  SineLikeSpec out{alpha, b1, b2, SineKind::custom_table, false, std::move(table)};
  out.validate();
  return out;
}

void SineLikeSpec::validate(int bits) const {
  if (b1 <= 0 || b2 < b1) throw DomainError("sine-like bounds need 0 < B1 <= B2");
  const CertReal a = alpha.enclose(bits);
  if (!a.certainly_positive()) throw DomainError("sine-like period must be positive");
  switch (kind) {
    case SineKind::lattice_distance:
      // dist(x) = |x| on |x| <= alpha/2.
      if (b1 > 1 || b2 < 1) throw DomainError("lattice distance needs B1 <= 1 <= B2");
      break;
    case SineKind::abs_sin: {
      // 2|x|/alpha <= |sin(pi x/alpha)| <= pi |x|/alpha on |x| <= alpha/2.
      const CertReal pi = pi_enclosure(bits);
      const CertReal lower = pi_period ? CertReal::from_integer(2, bits) / pi
                                       : CertReal::from_integer(2, bits) / a;
      const CertReal upper = pi_period ? CertReal::from_integer(1, bits) : pi / a;
      if (!certainly_less_equal(CertReal::from_rational(b1, bits), lower)) {
        throw DomainError("abs-sin profile: B1 exceeds 2/alpha");
      }
      if (!certainly_less_equal(upper, CertReal::from_rational(b2, bits))) {
        throw DomainError("abs-sin profile: B2 is below pi/alpha");
      }
      break;
    }
    case SineKind::custom_table: {
      if (table.size() < 2) throw DomainError("custom profile needs at least two points");
      if (table.front().s != 0 || table.front().y != 0) {
        throw DomainError("custom profile must start at (0, 0)");
      }
      if (table.back().s != mpq_class(1, 2)) throw DomainError("custom profile must end at s = 1/2");
      for (std::size_t i = 1; i < table.size(); ++i) {
        if (table[i].s <= table[i - 1].s) throw DomainError("custom profile s values must increase");
        // On a linear piece P(x)/x is monotone, so the vertices decide the
        // sandwich; x = s * alpha.
        const CertReal x = CertReal::from_rational(table[i].s, bits) * a;
        const CertReal y = CertReal::from_rational(table[i].y, bits);
        if (!certainly_less_equal(CertReal::from_rational(b1, bits) * x, y) ||
            !certainly_less_equal(y, CertReal::from_rational(b2, bits) * x)) {
          throw DomainError("custom profile violates B1 x <= P(x) <= B2 x at s = " +
                            rational_to_string(table[i].s));
        }
      }
      break;
    }
  }
}

void SeriesParams::validate() const {
  if (u <= 0 || v <= 0) throw DomainError("series parameters need u > 0 and v > 0");
}

Preset flint_hills_preset() {
  return {"flint-hills", SineLikeSpec::abs_sin(RefinableReal::pi(), mpq_class(1, 2), 1), {3, 2}};
}

Preset sqrt2_lattice_preset() {
  return {"sqrt2-lattice", SineLikeSpec::lattice_distance(RefinableReal::sqrt2()), {3, 2}};
}

Preset preset_by_name(const std::string& name) {
  if (name == "flint-hills") return flint_hills_preset();
  if (name == "sqrt2-lattice") return sqrt2_lattice_preset();
  throw std::invalid_argument("unknown preset '" + name + "' (flint-hills, sqrt2-lattice)");
}

// ---------------------------------------------------------------- evaluation

CertReal evaluate(const SineLikeSpec& p, const CertReal& x, int bits) {
  const CertReal a = p.alpha.enclose(bits);
  if (!a.certainly_positive()) throw DomainError("sine-like period enclosure is not positive");
  const CertReal ratio = x / a;
  const mpz_class m = round_of(ratio.midpoint());
  switch (p.kind) {
    case SineKind::abs_sin:
      if (p.pi_period) return abs(sin(x - exact_integer(m, bits) * a));
      return abs(sin(pi_enclosure(std::max(bits, 8)) * (ratio - exact_integer(m, bits))));
    case SineKind::lattice_distance: {
      CertReal best = abs(x - exact_integer(m, bits) * a);
      for (const long k : {-1L, 1L}) best = min(best, abs(x - exact_integer(m + k, bits) * a));
      return best;
    }
    case SineKind::custom_table: {
      const CertReal s = abs(ratio - exact_integer(m, bits));
      const CertReal folded = min(s, CertReal::from_integer(1, bits) - s);
      return interpolate(p.table, folded, bits);
    }
  }
  throw std::logic_error("evaluate: unknown kind");
}

CertReal evaluate(const SineLikeSpec& p, const mpz_class& n, int bits) {
  return evaluate(p, exact_integer(n, bits), bits);
}

CertReal term_at(const mpz_class& n, const SineLikeSpec& p, const SeriesParams& params, int bits) {
  if (n < 1) throw DomainError("term: n must be positive");
  const CertReal value = evaluate(p, n, bits);
  const CertReal n_part = reciprocal_power(exact_integer(n, bits), params.u);
  if (value.certainly_positive()) return n_part * reciprocal_power(value, params.v);
  // P(n) may be zero as far as this precision can tell.
  const CertReal top = CertReal::from_endpoints(BigFloat(value.upper()), BigFloat(value.upper()));
  if (!top.certainly_positive()) return hull(CertReal::from_integer(0, bits), positive_inf(bits));
  const CertReal low = n_part * reciprocal_power(top, params.v);
  return hull(low, positive_inf(bits));
}

Enclosure term(const mpz_class& n, const SineLikeSpec& p, const SeriesParams& params,
               const PrecisionPolicy& policy) {
  policy.validate();
  Enclosure out;
  int bits = policy.start_bits;
  while (true) {
    out.value = term_at(n, p, params, bits);
    out.bits_used = bits;
    if (out.value.is_finite() && policy.meets_target(out.value)) {
      out.status = Certainty::certified;
      return out;
    }
    out.status = Certainty::precision_exhausted;
    if (bits >= policy.max_bits || !p.alpha.refinable()) return out;
    bits = std::min(bits * 2, policy.max_bits);
  }
}

namespace {

CertReal term_bound(const mpz_class& n, const ApproxRecord& record, const SineLikeSpec& p,
                    const SeriesParams& params, const mpq_class& b) {
  if (record.q != n) throw std::invalid_argument("term bound: record is for a different denominator");
  const int bits = std::max(128, record.exponent.precision_bits());
  const CertReal a = p.alpha.enclose(bits);
  const CertReal coefficient = reciprocal_power(a * CertReal::from_rational(b, bits), params.v);
  const CertReal v = CertReal::from_rational(params.v, bits);
  const CertReal e = v * record.exponent - CertReal::from_rational(mpq_class(params.u + params.v), bits);
  return coefficient * exp(e * log(exact_integer(n, bits)));
}

}  // namespace

CertReal term_upper_bound(const mpz_class& n, const ApproxRecord& record, const SineLikeSpec& p,
                          const SeriesParams& params) {
  return term_bound(n, record, p, params, p.b1);
}

CertReal term_lower_bound(const mpz_class& n, const ApproxRecord& record, const SineLikeSpec& p,
                          const SeriesParams& params) {
  return term_bound(n, record, p, params, p.b2);
}

SandwichCheck check_sandwich(const mpz_class& n, const SineLikeSpec& p, const RefinableReal& b1,
                             const RefinableReal& b2, const PrecisionPolicy& policy) {
  policy.validate();
  const SineLikeSpec lattice{p.alpha, 1, 1, SineKind::lattice_distance, false, {}};
  SandwichCheck out;
  int bits = policy.start_bits;
  while (true) {
    out.dist = evaluate(lattice, n, bits);
    out.value = evaluate(p, n, bits);
    out.lower_ok = certainly_less_equal(b1.enclose(bits) * out.dist, out.value);
    out.upper_ok = certainly_less_equal(out.value, b2.enclose(bits) * out.dist);
    if ((out.lower_ok && out.upper_ok) || bits >= policy.max_bits) return out;
    bits = std::min(bits * 2, policy.max_bits);
  }
}

// ---------------------------------------------------------------- sums

PartialSumLedger partial_sum(unsigned long n_max, const SineLikeSpec& p, const SeriesParams& params,
                             const PrecisionPolicy& policy, const SumOptions& options,
                             const std::optional<PartialSumLedger>& resume) {
  if (n_max < 1) throw DomainError("partial_sum: N must be positive");
  policy.validate();
  params.validate();
  if (options.checkpoint_every == 0 || options.chunk == 0) {
    throw std::invalid_argument("partial_sum: checkpoint interval and chunk must be positive");
  }
  const int acc_bits = policy.start_bits;
  PartialSumLedger ledger;
  if (resume) {
    ledger = *resume;
    if (ledger.accumulator_bits != acc_bits) {
      throw std::invalid_argument("partial_sum: checkpoint was written with a different precision");
    }
    if (ledger.count > n_max) throw std::invalid_argument("partial_sum: checkpoint is past N");
  } else {
    ledger.sum = CertReal::from_integer(0, acc_bits);
    ledger.accumulator_bits = acc_bits;
  }
  const unsigned threads = detail::resolve_threads(options.threads);
  while (ledger.count < n_max) {
    const unsigned long to_checkpoint =
        options.checkpoint_every - ledger.count % options.checkpoint_every;
    const unsigned long batch =
        std::min<unsigned long>({static_cast<unsigned long>(options.chunk), n_max - ledger.count, to_checkpoint});
    const unsigned long first = ledger.count + 1;
    const std::vector<Enclosure> terms = detail::parallel_map(batch, threads, [&](std::size_t i) {
      return term(mpz_class(first + static_cast<unsigned long>(i)), p, params, policy);
    });
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const unsigned long n = first + i;
      const Enclosure& t = terms[i];
      ledger.sum = (ledger.sum + t.value).with_precision(acc_bits);
      if (t.status != Certainty::certified) ledger.wide_terms.push_back(n);
      if (!ledger.largest || mpfr_cmp(t.value.upper().get(), ledger.largest->value.upper().get()) > 0) {
        ledger.largest = LargestTerm{mpz_class(n), t.value};
      }
      if (options.on_term) options.on_term(n, t);
    }
    ledger.count += batch;
    if (ledger.count % options.checkpoint_every == 0 && options.on_checkpoint) {
      options.on_checkpoint(ledger);
    }
  }
  return ledger;
}

std::vector<ConvergentCheck> check_convergent_terms(const CFExpansion& cf, std::size_t first,
                                                    std::size_t last, const SeriesParams& params,
                                                    const PrecisionPolicy& policy) {
  policy.validate();
  params.validate();
  if (last >= cf.size() || first > last) throw std::out_of_range("check_convergent_terms: bad range");
  const RefinableReal alpha = RefinableReal::reciprocal(continued_fraction_value(cf, "x"));
  const SineLikeSpec lattice{alpha, 1, 1, SineKind::lattice_distance, false, {}};
  std::vector<ConvergentCheck> out;
  for (std::size_t n = first; n <= last; ++n) {
    ConvergentCheck check;
    check.n = n;
    check.q = cf.convergent(n).q;
    int bits = policy.start_bits;
    while (true) {
      check.term = term_at(check.q, lattice, params, bits);
      check.bits_used = bits;
      check.above_one = certainly_greater(check.term, 1);
      if (check.above_one || certainly_less_equal(check.term, CertReal::from_integer(1, bits)) ||
          bits >= policy.max_bits) {
        break;
      }
      bits = std::min(bits * 2, policy.max_bits);
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace dioph
