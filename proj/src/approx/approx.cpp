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

#include "dioph/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "dioph/contfrac.hpp"
#include "dioph/detail/parallel.hpp"

namespace dioph {
namespace {

using detail::parallel_map;
using detail::resolve_threads;

int bit_length(const mpz_class& z) {
  return z == 0 ? 1 : static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

CertReal exact_integer(const mpz_class& n, int bits) {
  return CertReal::from_integer(n, std::max(bits, bit_length(n) + 1));
}

// [-log(err) / log(q), +inf] style enclosure that tolerates err touching 0.
CertReal neg_log_base(const CertReal& err, const CertReal& log_q) {
  if (err.certainly_positive()) return -log(err) / log_q;
  const int bits = err.precision_bits();
  BigFloat hi(bits);
  mpfr_set_inf(hi.get(), 1);
  CertReal upper_part = CertReal::from_endpoints(BigFloat(err.upper()), BigFloat(err.upper()));
  const CertReal lo = -log(upper_part) / log_q;
  return CertReal::from_endpoints(BigFloat(lo.lower()), std::move(hi));
}

// Exact test a^b <= c^d style comparisons on small exponents.
mpz_class ipow(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

void check_fraction(const mpq_class& e, const char* what) {
  if (e <= 0 || e >= 1) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

}  // namespace

// ---------------------------------------------------------------- MuSpec

const char* to_string(MuProvenance p) {
  switch (p) {
    case MuProvenance::assumed:
      return "assumed";
    case MuProvenance::constructed:
      return "constructed";
    case MuProvenance::literature_bound:
      return "literature-bound";
  }
  return "?";
}

MuSpec MuSpec::make(const mpq_class& mu, MuProvenance provenance) {
  if (mu < 2) throw DomainError("irrationality measure must be at least 2, got " + rational_to_string(mu));
  MuSpec out;
  out.mu = mu;
  out.mu.canonicalize();
  out.provenance = provenance;
  return out;
}

MuSpec MuSpec::exactly_two(MuProvenance provenance) { return make(2, provenance); }

MuSpec MuSpec::pi_literature_bound() {
  return make(mpq_class(7104, 1000), MuProvenance::literature_bound);
}

MuSpec MuSpec::parse(const std::string& text, MuProvenance provenance) {
  if (text == "exactly-2") return exactly_two(provenance);
  return make(parse_rational(text), provenance);
}

std::string MuSpec::to_string() const {
  return (is_exactly_two() ? std::string("exactly-2") : rational_to_string(mu)) + " (" +
         dioph::to_string(provenance) + ")";
}

// ---------------------------------------------------------------- records

CertReal exponent_dual_form(const mpz_class& q, const mpz_class& p, const CertReal& alpha) {
  const int bits = alpha.precision_bits();
  const CertReal qq = exact_integer(q, bits);
  const CertReal dist = abs(qq - alpha * exact_integer(p, bits));
  const CertReal scaled = dist / alpha;
  const CertReal one = CertReal::from_integer(1, bits);
  if (!scaled.certainly_positive()) {
    // Only the lower end of the exponent is informative here.
    return one + neg_log_base(scaled, log(qq));
  }
  return one - log(scaled) / log(qq);
}

ApproxRecord exponent(const mpz_class& q, const RefinableReal& alpha, const PrecisionPolicy& policy) {
  if (q < 2) throw DomainError("exponent: q must be at least 2, got " + q.get_str());
  policy.validate();
  ApproxRecord out;
  out.q = q;
  bool have = false;
  int bits = policy.start_bits;
  while (true) {
    const bool last = bits >= policy.max_bits || !alpha.refinable();
    const CertReal a = alpha.enclose(bits);
    if (a.contains_zero() || a.certainly_negative()) throw DomainError("exponent: period must be positive");
    const CertReal qq = exact_integer(q, bits);
    const CertReal one = CertReal::from_integer(1, bits);
    const CertReal beta = one / a;
    const CertReal t = qq * beta;
    mpz_class p = round_of(t.midpoint());
    if (p < 0) p = 0;
    const mpq_class half(1, 2);
    const bool unique = compare(t.lower(), mpq_class(p) - half) > 0 &&
                        compare(t.upper(), mpq_class(p) + half) < 0;
    if (unique) {
      const CertReal signed_error = CertReal::from_rational(mpq_class(p, q), bits) - beta;
      const CertReal error = abs(signed_error);
      const CertReal log_q = log(qq);
      CertReal r = neg_log_base(error, log_q);
      if (error.certainly_positive()) {
        const CertReal dual = exponent_dual_form(q, p, a);
        if (!overlaps(r, dual)) {
          throw std::logic_error("exponent: the two forms disagree at q=" + q.get_str() + ": " +
                                 r.to_string() + " vs " + dual.to_string());
        }
        r = intersect(r, dual);
      }
      out.p = p;
      out.signed_error = signed_error;
      out.error = error;
      out.exponent = r;
      have = true;
      if (error.certainly_positive() && policy.meets_target(r)) {
        out.status = Certainty::certified;
        return out;
      }
      out.status = Certainty::precision_exhausted;
    }
    if (last) break;
    bits = std::min(bits * 2, policy.max_bits);
  }
  if (!have) {
    // The minimiser is not certified: enclose the minimum error over the
    // candidate numerators instead and flag the record.
    const int top = alpha.refinable() ? policy.max_bits : policy.start_bits;
    const CertReal beta = CertReal::from_integer(1, top) / alpha.enclose(top);
    const mpz_class centre = round_of((exact_integer(q, top) * beta).midpoint());
    out.p = centre < 0 ? mpz_class(0) : centre;
    out.signed_error = CertReal::from_rational(mpq_class(out.p, q), top) - beta;
    CertReal best = abs(out.signed_error);
    for (int delta : {-1, 1}) {
      const mpz_class p = out.p + delta;
      if (p < 0) continue;
      best = min(best, abs(CertReal::from_rational(mpq_class(p, q), top) - beta));
    }
    out.error = best;
    out.exponent = neg_log_base(out.error, log(exact_integer(q, top)));
    out.status = Certainty::precision_exhausted;
  }
  return out;
}

const char* to_string(Goodness g) {
  switch (g) {
    case Goodness::good:
      return "good";
    case Goodness::not_good:
      return "not-good";
    case Goodness::unknown:
      return "unknown";
  }
  return "?";
}

Goodness is_good(const ApproxRecord& record, const MuSpec& mu, const mpq_class& epsilon1) {
  if (epsilon1 <= 0) throw DomainError("is_good: epsilon1 must be positive");
  const mpq_class threshold = mu.mu - epsilon1;
  if (compare(record.exponent.lower(), threshold) >= 0) return Goodness::good;
  if (compare(record.exponent.upper(), threshold) < 0) return Goodness::not_good;
  return Goodness::unknown;
}

bool are_close(const mpz_class& q1, const mpz_class& q2, const mpq_class& delta) {
  if (q1 >= q2) throw ArgumentOrder("are_close: need q1 < q2, got " + q1.get_str() + ", " + q2.get_str());
  if (delta <= 0) throw DomainError("are_close: delta must be positive");
  mpq_class d = delta;
  d.canonicalize();
  if (!d.get_num().fits_ulong_p() || !d.get_den().fits_ulong_p()) {
    throw ResourceLimit("are_close: delta has an oversized numerator or denominator");
  }
  // q2 - q1 < q1^(a/b)  <=>  (q2 - q1)^b < q1^a
  return ipow(q2 - q1, d.get_den().get_ui()) < ipow(q1, d.get_num().get_ui());
}

ApproxRecord combine(const ApproxRecord& r1, const ApproxRecord& r2) {
  if (r1.q >= r2.q) throw ArgumentOrder("combine: need q1 < q2");
  const int bits = std::max(r1.signed_error.precision_bits(), r2.signed_error.precision_bits());
  ApproxRecord out;
  out.q = r2.q - r1.q;
  out.p = r2.p - r1.p;
  const CertReal d = exact_integer(out.q, bits);
  out.signed_error =
      (exact_integer(r2.q, bits) * r2.signed_error - exact_integer(r1.q, bits) * r1.signed_error) / d;
  out.error = abs(out.signed_error);
  out.status = (r1.status == Certainty::certified && r2.status == Certainty::certified)
                   ? Certainty::certified
                   : Certainty::precision_exhausted;
  if (out.q == 1) {
    throw DegenerateDenominator("combine: q2 - q1 = 1, exponent undefined", out.error);
  }
  out.exponent = neg_log_base(out.error, log(d));
  return out;
}

CertReal combined_exponent_bound(const MuSpec& mu, const mpq_class& epsilon1,
                                 const mpq_class& epsilon2, const mpz_class& q1, int precision_bits) {
  check_fraction(epsilon2, "epsilon2");
  if (q1 < 2) throw DomainError("combined_exponent_bound: q1 must be at least 2");
  const int bits = precision_bits;
  const CertReal qq = exact_integer(q1, bits);
  BigFloat lo(bits), hi(bits);
  mpfr_log2(lo.get(), qq.lower().get(), MPFR_RNDD);
  mpfr_log2(hi.get(), qq.upper().get(), MPFR_RNDU);
  const CertReal log2q = CertReal::from_endpoints(std::move(lo), std::move(hi));
  mpq_class head = 1 + (mu.mu - 1 - epsilon1) / epsilon2;
  head.canonicalize();
  return CertReal::from_rational(head, bits) -
         CertReal::from_integer(1, bits) / (CertReal::from_rational(epsilon2, bits) * log2q);
}

mpz_class slack_threshold(const MuSpec& mu, const mpq_class& epsilon1, const mpq_class& epsilon2) {
  check_fraction(epsilon2, "epsilon2");
  mpq_class slack = mu.mu - 1 - epsilon1 / (1 - epsilon2);
  slack.canonicalize();
  if (slack <= 0) {
    throw HypothesisViolation("mu=" + rational_to_string(mu.mu) + " does not exceed 1 + e1/(1-e2) = " +
                              rational_to_string(mpq_class(1 + epsilon1 / (1 - epsilon2))));
  }
  // log2 q0 > lambda  <=>  q0 > 2^lambda
  mpq_class lambda = 1 / ((1 - epsilon2) * slack);
  lambda.canonicalize();
  if (lambda > 100000) {
    throw ResourceLimit("slack_threshold: 2^" + std::to_string(lambda.get_d()) + " is too large");
  }
  const int bits = static_cast<int>(lambda.get_d()) + 128;
  const CertReal l = CertReal::from_rational(lambda, bits);
  BigFloat lo(bits), hi(bits);
  mpfr_exp2(lo.get(), l.lower().get(), MPFR_RNDD);
  mpfr_exp2(hi.get(), l.upper().get(), MPFR_RNDU);
  // floor(hi) + 1 is a valid threshold and equals the least one whenever
  // the enclosure does not straddle an integer (exact powers of two land on
  // an endpoint and are handled by the +1).
  mpz_class q0 = floor_of(hi) + 1;
  if (q0 < 2) q0 = 2;
  return q0;
}

// ---------------------------------------------------------------- scans

std::vector<ApproxRecord> scan_records(const RefinableReal& alpha, const mpz_class& q_lo,
                                       const mpz_class& q_hi, const PrecisionPolicy& policy,
                                       unsigned threads) {
  if (q_lo < 2) throw DomainError("scan_records: q_lo must be at least 2");
  if (q_hi < q_lo) return {};
  const mpz_class span = q_hi - q_lo + 1;
  if (!span.fits_ulong_p()) throw ResourceLimit("scan_records: range too large");
  const std::size_t count = span.get_ui();
  return parallel_map(count, resolve_threads(threads),
                      [&](std::size_t i) { return exponent(q_lo + mpz_class(static_cast<unsigned long>(i)), alpha, policy); });
}

namespace {

struct SkipPlan {
  std::vector<mpz_class> candidates;  // ascending, all >= q_start
  // Denominators above this bound lie past the certified expansion and must
  // be evaluated one by one.
  mpz_class scan_above;
};

// Candidate denominators >= q_start that can possibly be good for threshold
// t > 2. A partially certified expansion of 1/alpha still rules out
// everything up to its last convergent denominator.
std::optional<SkipPlan> skip_candidates(const RefinableReal& alpha, const mpq_class& t,
                                        const mpz_class& q_start, const mpz_class& q_max,
                                        const PrecisionPolicy& policy) {
  const RefinableReal beta = RefinableReal::reciprocal(alpha);
  CFExpansion cf;
  std::size_t n_terms = 8;
  bool partial = false;
  try {
    while (true) {
      cf = expand(beta, n_terms, policy);
      if (cf.convergents().back().q > q_max) break;
      n_terms *= 2;
      if (n_terms > 1u << 16) return std::nullopt;
    }
  } catch (const ExpansionExhausted& e) {
    cf = e.partial();
    partial = true;
  } catch (const PrecisionExhausted&) {
    return std::nullopt;
  }
  if (cf.size() < 2) return std::nullopt;
  SkipPlan plan;
  plan.scan_above = q_max;
  if (partial) plan.scan_above = std::min(q_max, mpz_class(std::max(q_start, cf.convergents().back().q) - 1));
  // A margin keeps skipped denominators well away from the threshold, so a
  // direct evaluation could never have called them unknown.
  const int bits = 128;
  const CertReal margin = CertReal::from_rational(mpq_class(1, mpz_class(1) << 30), bits);
  const CertReal tt = CertReal::from_rational(t, bits);
  std::set<mpz_class> out;
  const auto& conv = cf.convergents();
  for (std::size_t n = 0; n + 1 < conv.size(); ++n) {
    const mpz_class& qn = conv[n].q;
    if (qn < 1 || qn > q_max) continue;
    // Every multiple k*q_n has error >= 1 / (q_n (q_{n+1} + q_n)).
    const CertReal floor_log = log(exact_integer(qn * (conv[n + 1].q + qn), bits));
    for (mpz_class k = 1; k * qn <= q_max; ++k) {
      const mpz_class q = k * qn;
      if (q < q_start) continue;
      if (q > plan.scan_above) break;
      if (certainly_less_equal(floor_log + margin, tt * log(exact_integer(q, bits)))) break;
      out.insert(q);
    }
  }
  plan.candidates.assign(out.begin(), out.end());
  return plan;
}

}  // namespace

GoodScanResult scan_good(const RefinableReal& alpha, const MuSpec& mu, const mpq_class& epsilon1,
                         const mpz_class& q_max, const PrecisionPolicy& policy,
                         const ScanOptions& options) {
  if (q_max < 2) throw DomainError("scan_good: q_max must be at least 2");
  if (epsilon1 <= 0) throw DomainError("scan_good: epsilon1 must be positive");
  GoodScanResult out;
  out.alpha_id = alpha.label();
  out.mu = mu;
  out.epsilon1 = epsilon1;
  out.q_max = q_max;
  const unsigned threads = resolve_threads(options.threads);
  mpq_class t = mu.mu - epsilon1;
  t.canonicalize();

  std::vector<ApproxRecord> records;
  bool done = false;
  if (options.skip_hopeless && t > 2) {
    // Past q_start, (t - 2) log q > log 2 + margin holds for certain, so any
    // q that is not a multiple of a convergent denominator has error
    // >= 1/(2 q^2) > q^-t and cannot be good.
    const int bits = 128;
    const CertReal margin = CertReal::from_rational(mpq_class(1, mpz_class(1) << 30), bits);
    const CertReal need = (log(CertReal::from_integer(2, bits)) + margin) /
                          CertReal::from_rational(mpq_class(t - 2), bits);
    // q_start = first integer above exp(need).
    const CertReal e = exp(need);
    mpz_class q_start = floor_of(e.upper()) + 1;
    if (q_start < 2) q_start = 2;
    const mpz_class low_hi = std::min(q_max, mpz_class(q_start - 1));
    if (auto skip = skip_candidates(alpha, t, q_start, q_max, policy)) {
      const auto& candidates = skip->candidates;
      records = scan_records(alpha, 2, low_hi, policy, threads);
      auto extra = parallel_map(candidates.size(), threads,
                                [&](std::size_t i) { return exponent(candidates[i], alpha, policy); });
      for (auto& r : extra) records.push_back(std::move(r));
      if (skip->scan_above < q_max) {
        auto tail = scan_records(alpha, skip->scan_above + 1, q_max, policy, threads);
        for (auto& r : tail) records.push_back(std::move(r));
      }
      done = true;
    }
  }
  if (!done) records = scan_records(alpha, 2, q_max, policy, threads);

  out.evaluated = records.size();
  for (ApproxRecord& r : records) {
    switch (is_good(r, mu, epsilon1)) {
      case Goodness::good:
        out.records.push_back(std::move(r));
        break;
      case Goodness::unknown:
        out.unknown.push_back(std::move(r));
        break;
      case Goodness::not_good:
        break;
    }
  }
  return out;
}

WindowCount window_count(const GoodScanResult& scan, const mpz_class& q1, const mpq_class& epsilon2) {
  if (q1 > scan.q_max) throw std::invalid_argument("window_count: q1 exceeds q_max");
  if (epsilon2 <= 0) throw DomainError("window_count: epsilon2 must be positive");
  mpq_class e = epsilon2;
  e.canonicalize();
  const unsigned long a = e.get_num().get_ui();
  const unsigned long b = e.get_den().get_ui();
  const mpz_class reach = ipow(q1, a);
  // q in (q1, q1 + q1^e]  <=>  q > q1 and (q - q1)^b <= q1^a.
  auto inside = [&](const mpz_class& q) { return q > q1 && ipow(q - q1, b) <= reach; };
  WindowCount out;
  for (const ApproxRecord& r : scan.records) {
    if (inside(r.q)) ++out.count;
  }
  for (const ApproxRecord& r : scan.unknown) {
    if (inside(r.q)) ++out.unknown;
  }
  // Truncated when q_max < q1 + q1^e.
  out.truncated = scan.q_max <= q1 || ipow(scan.q_max - q1, b) < reach;
  return out;
}

GrowthReport growth_check(const GoodScanResult& scan, const mpq_class& epsilon2) {
  check_fraction(epsilon2, "epsilon2");
  mpq_class edge = 1 + scan.epsilon1 / (1 - epsilon2);
  edge.canonicalize();
  if (scan.mu.mu <= edge) {
    throw HypothesisViolation("growth_check: mu=" + rational_to_string(scan.mu.mu) +
                              " does not exceed 1 + e1/(1-e2) = " + rational_to_string(edge));
  }
  const int bits = 128;
  GrowthReport out;
  out.epsilon2 = epsilon2;
  mpq_class gamma = 1 / (1 - epsilon2);
  gamma.canonicalize();
  out.gamma = CertReal::from_rational(gamma, bits);
  const std::size_t count = scan.records.size();
  if (count == 0) return out;

  std::vector<CertReal> powers;
  std::optional<CertReal> c;
  for (std::size_t n = 1; n <= count; ++n) {
    powers.push_back(pow(CertReal::from_integer(static_cast<long>(n), bits), gamma));
    const CertReal ratio = exact_integer(scan.records[n - 1].q, bits) / powers.back();
    c = c ? min(*c, ratio) : ratio;
  }
  out.constant = c;
  for (std::size_t n = 1; n <= count; ++n) {
    const mpz_class& q = scan.records[n - 1].q;
    const CertReal floor = *c * powers[n - 1];
    out.rows.push_back({n, q, floor, exact_integer(q, bits) / floor});
  }

  // Least-squares slope of log Q_n against log n over the tail half.
  const std::size_t first = count / 2 == 0 ? 0 : count / 2;
  const std::size_t points = count - first;
  if (points >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = first; i < count; ++i) {
      const double x = std::log(static_cast<double>(i + 1));
      const double y = log(exact_integer(scan.records[i].q, bits)).to_double();
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double k = static_cast<double>(points);
    const double den = k * sxx - sx * sx;
    if (den > 0) {
      const double slope = (k * sxy - sx * sy) / den;
      BigFloat s(bits);
      mpfr_set_d(s.get(), slope, MPFR_RNDN);
      out.tail_exponent = CertReal::from_endpoints(s, s);
    }
  }
  const bool positive = c->certainly_positive();
  const bool tail_ok = !out.tail_exponent || compare(out.tail_exponent->lower(), gamma) >= 0;
  out.pass = positive && tail_ok;
  return out;
}

AuditSummary audit_close_pairs(const GoodScanResult& scan, const mpq_class& epsilon2, PairMode mode) {
  AuditSummary out;
  out.slack_threshold = slack_threshold(scan.mu, scan.epsilon1, epsilon2);
  const auto& recs = scan.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].q <= out.slack_threshold) continue;
    for (std::size_t j = i + 1; j < recs.size(); ++j) {
      if (!are_close(recs[i].q, recs[j].q, epsilon2)) break;
      if (recs[j].q - recs[i].q == 1) {
        ++out.degenerate;
      } else {
        PairAudit audit;
        audit.q1 = recs[i].q;
        audit.q2 = recs[j].q;
        audit.combined = combine(recs[i], recs[j]);
        audit.bound = combined_exponent_bound(scan.mu, scan.epsilon1, epsilon2, recs[i].q);
        audit.pass = certainly_less(audit.bound, audit.combined->exponent);
        if (!audit.pass) ++out.violations;
        out.pairs.push_back(std::move(audit));
      }
      if (mode == PairMode::adjacent) break;
    }
  }
  return out;
}

}  // namespace dioph
