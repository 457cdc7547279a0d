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

#include "dioph/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace dioph {
namespace {

mpq_class canon(mpq_class q) {
  q.canonicalize();
  return q;
}

mpz_class ceil_of(const mpq_class& x) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

// n = s^2 r, pulling out square factors of primes below a cap and a
// perfect-square cofactor.
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class s = 1;
  for (unsigned long p = 2; p < 100000; ++p) {
    const unsigned long p2 = p * p;
    if (mpz_class(p2) > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p2)) {
      n /= p2;
      s *= p;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return {s * root, 1};
  }
  return {s, n};
}

void require_mu_above_one(const mpq_class& mu) {
  if (mu <= 1) throw DomainError("step budget needs mu > 1");
}

mpq_class b_lower(const mpq_class& a_i, const SeriesParams& params) {
  return canon(1 - (params.u + params.v - params.v * a_i));
}

mpq_class b_upper(const mpq_class& a_prev, const mpq_class& mu) {
  return canon(1 - (mu - a_prev) / (mu - 1));
}

// Fills cuts and b from x, y and a cell count, then validates.
PartitionPlan finish(const MuSpec& mu, const SeriesParams& params, const mpq_class& x,
                     const mpq_class& y, const mpq_class& margin, const mpz_class& k) {
  if (!k.fits_ulong_p() || k > 1000000) throw ResourceLimit("plan: too many cells (" + k.get_str() + ")");
  PartitionPlan out{mu, params, x, y, {}, {}, margin};
  const mpq_class a0 = canon(mu.mu - x);
  const mpq_class ak = canon(mu.mu + y);
  const unsigned long cells = std::max(1UL, k.get_ui());
  for (unsigned long i = 0; i <= cells; ++i) {
    out.cuts.push_back(canon(a0 + (ak - a0) * mpq_class(i, cells)));
  }
  for (unsigned long i = 1; i <= cells; ++i) {
    const mpq_class lo = std::max<mpq_class>(mpq_class(0), b_lower(out.cuts[i], params));
    const mpq_class hi = std::min<mpq_class>(mpq_class(1), b_upper(out.cuts[i - 1], mu.mu));
    out.b.push_back(canon((lo + hi) / 2));
  }
  out.validate();
  return out;
}

}  // namespace

std::string SurdValue::to_string() const {
  if (is_rational()) return rational_to_string(a);
  return rational_to_string(a) + " + " + rational_to_string(b) + " * sqrt(" + r.get_str() + ")";
}

WeakThreshold weak_threshold(const SeriesParams& params, int bits) {
  params.validate();
  const mpq_class& u = params.u;
  const mpq_class& v = params.v;
  if (u < 1) throw DomainError("weak threshold needs u >= 1 (the radicand (u+3)(u-1) is negative)");
  WeakThreshold out;
  // sqrt(n/d) = sqrt(n d) / d = (s / d) sqrt(r)
  const mpq_class radicand = canon((u + 3) * (u - 1));
  const auto [s, r] = split_square(radicand.get_num() * radicand.get_den());
  out.value.a = canon((u - 1) / (2 * v) + 1);
  out.value.b = canon(mpq_class(s, radicand.get_den()) / (2 * v));
  out.value.r = r;
  if (r == 1) {
    out.value.a = canon(out.value.a + out.value.b);
    out.value.b = 0;
  }
  if (out.value.b == 0) out.value.r = 1;
  out.value.enclosure =
      CertReal::from_rational(out.value.a, bits) +
      CertReal::from_rational(out.value.b, bits) * sqrt(CertReal::from_integer(out.value.r, bits));
  if (u == 1) out.warning = "u = 1: the radicand vanishes and the threshold degenerates to 1";
  return out;
}

mpq_class step_budget(const mpq_class& a_prev, const mpq_class& mu, const SeriesParams& params) {
  require_mu_above_one(mu);
  const mpq_class& u = params.u;
  const mpq_class& v = params.v;
  return canon((a_prev * (1 + v - v * mu) + (mu - 1) * (u + v - 1) - 1) / (v * (mu - 1)));
}

mpq_class step_budget_slope(const mpq_class& mu, const SeriesParams& params) {
  require_mu_above_one(mu);
  return canon((1 + params.v - params.v * mu) / (params.v * (mu - 1)));
}

void PartitionPlan::validate() const {
  const mpq_class& m = mu.mu;
  const mpq_class& u = params.u;
  const mpq_class& v = params.v;
  auto fail = [](const std::string& what) { throw DomainError("invalid plan: " + what); };
  if (x <= 0 || y <= 0) fail("x and y must be positive");
  if (margin <= 0) fail("margin must be positive");
  if (cuts.size() < 2 || b.size() + 1 != cuts.size()) fail("need k >= 1 cells with one b per cell");
  if (cuts.front() != m - x) fail("a_0 != mu - x");
  if (cuts.back() != m + y) fail("a_k != mu + y");
  if (x <= m + (1 - u) / v - 1) fail("x must exceed mu + (1 - u)/v - 1");
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const std::string at = " at i=" + std::to_string(i);
    if (cuts[i] <= cuts[i - 1]) fail("cuts must increase" + at);
    if (cuts[i] - cuts[i - 1] >= step_budget(cuts[i - 1], m, params)) fail("cell wider than f(a_{i-1})" + at);
    const mpq_class& bi = b[i - 1];
    if (bi <= 0 || bi >= 1) fail("b_i outside (0, 1)" + at);
    if (bi >= b_upper(cuts[i - 1], m)) fail("b_i >= 1 - (mu - a_{i-1})/(mu - 1)" + at);
    if ((u + v - v * cuts[i]) / (1 - bi) <= 1) fail("(u + v - v a_i)/(1 - b_i) <= 1" + at);
  }
}

PartitionPlan plan(const MuSpec& mu, const SeriesParams& params, const mpq_class& safety) {
  params.validate();
  if (safety <= 0 || safety >= 1) throw DomainError("plan: safety must lie in (0, 1)");
  const mpq_class& m = mu.mu;
  const mpq_class& u = params.u;
  const mpq_class& v = params.v;
  if (v < 1) {
    throw Infeasible("plan: the hypothesis v >= 1 fails (v = " + rational_to_string(v) + ")");
  }
  if (m >= 1 + u / v) {
    throw Infeasible("plan: the hypothesis mu < 1 + u/v fails (mu = " + rational_to_string(m) +
                     ", 1 + u/v = " + rational_to_string(canon(1 + u / v)) + ")");
  }
  const mpq_class x_floor = std::max<mpq_class>(mpq_class(0), canon(m + (1 - u) / v - 1));
  const mpq_class x = canon(x_floor + safety * (m - 1 - x_floor));
  // f decreases with slope `coef`, so f(mu + y) >= (1 - safety) f(mu).
  const mpq_class coef = step_budget_slope(m, params);
  const mpq_class y = canon(safety * step_budget(m, m, params) / std::max<mpq_class>(mpq_class(1), mpq_class(-coef)));
  const mpq_class ak = canon(m + y);
  const mpq_class margin = canon(safety * step_budget(ak, m, params));
  const mpz_class k = ceil_of(canon((ak - (m - x)) / margin));
  return finish(mu, params, x, y, margin, k);
}

bool weak_condition(const mpq_class& mu, const SeriesParams& params, const mpq_class& x,
                    const mpq_class& y) {
  return x < (params.u + params.v * (1 - mu - y)) * (mu - 1);
}

bool single_cell_feasible(const mpq_class& mu, const SeriesParams& params, const mpq_class& x,
                          const mpq_class& y) {
  const mpq_class a0 = canon(mu - x);
  const mpq_class a1 = canon(mu + y);
  const bool width_ok = a1 - a0 < step_budget(a0, mu, params);
  const bool b_ok = std::max<mpq_class>(mpq_class(0), b_lower(a1, params)) < std::min<mpq_class>(mpq_class(1), b_upper(a0, mu));
  return width_ok && b_ok;
}

PartitionPlan single_cell_plan(const MuSpec& mu, const SeriesParams& params, const mpq_class& safety) {
  params.validate();
  if (safety <= 0 || safety >= 1) throw DomainError("single_cell_plan: safety must lie in (0, 1)");
  const mpq_class& m = mu.mu;
  const mpq_class& u = params.u;
  const mpq_class& v = params.v;
  const mpq_class x_floor = std::max<mpq_class>(mpq_class(0), canon(m + (1 - u) / v - 1));
  const mpq_class x_ceiling = canon((u + v - v * m) * (m - 1));  // weak condition at y = 0
  if (x_ceiling <= x_floor) {
    throw Infeasible("single_cell_plan: mu = " + rational_to_string(m) +
                     " is not below the weak threshold " + weak_threshold(params).value.to_string());
  }
  const mpq_class x = canon(x_floor + safety * (x_ceiling - x_floor));
  const mpq_class y = canon(safety * (u + v - v * m - x / (m - 1)) / v);
  const mpq_class margin = canon(step_budget(m - x, m, params));
  return finish(mu, params, x, y, margin, 1);
}

// ---------------------------------------------------------------- classification

const char* to_string(Cell3 cell) {
  switch (cell) {
    case Cell3::s1:
      return "S1";
    case Cell3::s2:
      return "S2";
    case Cell3::s3:
      return "S3";
    case Cell3::unknown:
      return "unknown";
  }
  return "?";
}

Cell3 classify3(const ApproxRecord& record, const MuSpec& mu, const mpq_class& x, const mpq_class& y) {
  if (x <= 0 || y <= 0) throw DomainError("classify3: x and y must be positive");
  const mpq_class top = canon(mu.mu + y);
  const mpq_class bottom = canon(mu.mu - x);
  const BigFloat& lo = record.exponent.lower();
  const BigFloat& hi = record.exponent.upper();
  if (compare(lo, top) >= 0) return Cell3::s1;
  if (compare(hi, bottom) < 0) return Cell3::s3;
  if (compare(lo, bottom) >= 0 && compare(hi, top) < 0) return Cell3::s2;
  return Cell3::unknown;
}

std::string FineCell::to_string() const {
  switch (kind) {
    case Kind::s1:
      return "S1";
    case Kind::s3:
      return "S3";
    case Kind::t:
      return "T" + std::to_string(index);
    case Kind::unknown:
      return "unknown";
  }
  return "?";
}

FineCell classify_fine(const ApproxRecord& record, const PartitionPlan& plan) {
  const BigFloat& lo = record.exponent.lower();
  const BigFloat& hi = record.exponent.upper();
  const auto& cuts = plan.cuts;
  if (compare(lo, cuts.back()) >= 0) return {FineCell::Kind::s1, 0};
  if (compare(hi, cuts.front()) < 0) return {FineCell::Kind::s3, 0};
  // First cut strictly above lo; the cell is [cuts[i-1], cuts[i]).
  const auto it = std::upper_bound(cuts.begin(), cuts.end(), lo,
                                   [](const BigFloat& x, const mpq_class& c) { return compare(x, c) < 0; });
  if (it == cuts.begin() || it == cuts.end()) return {};
  const std::size_t i = static_cast<std::size_t>(it - cuts.begin());
  if (compare(hi, cuts[i]) < 0) return {FineCell::Kind::t, i};
  return {};
}

std::vector<CellReport> cell_sum_report(const std::vector<ApproxRecord>& records,
                                        const PartitionPlan& plan, const SineLikeSpec& sine,
                                        const SeriesParams& params, const PrecisionPolicy& policy) {
  plan.validate();
  const int bits = policy.start_bits;
  std::vector<CellReport> out;
  auto add = [&](FineCell cell) {
    CellReport r;
    r.cell = cell;
    r.sum = CertReal::from_integer(0, bits);
    out.push_back(std::move(r));
  };
  add({FineCell::Kind::s3, 0});
  for (std::size_t i = 1; i <= plan.k(); ++i) {
    add({FineCell::Kind::t, i});
    const mpq_class predicted =
        canon((params.u + params.v - params.v * plan.cuts[i]) / (1 - plan.b[i - 1]));
    out.back().predicted = predicted;
    out.back().flagged = predicted <= 1;
  }
  add({FineCell::Kind::s1, 0});
  add({FineCell::Kind::unknown, 0});
  auto slot = [&](const FineCell& c) -> CellReport& {
    switch (c.kind) {
      case FineCell::Kind::s3:
        return out.front();
      case FineCell::Kind::t:
        return out[c.index];
      case FineCell::Kind::s1:
        return out[out.size() - 2];
      case FineCell::Kind::unknown:
        break;
    }
    return out.back();
  };
  for (const ApproxRecord& rec : records) {
    CellReport& r = slot(classify_fine(rec, plan));
    ++r.count;
    r.sum = (r.sum + term(rec.q, sine, params, policy).value).with_precision(bits);
  }
  return out;
}

}  // namespace dioph
