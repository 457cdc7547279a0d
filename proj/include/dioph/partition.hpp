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

// Convergence planner: splits denominators by approximation exponent into
// cells on which the series provably converges, given an assumed measure.
//
// All planning is exact rational arithmetic. Enclosures only appear when
// real records are classified.

#ifndef DIOPH_PARTITION_HPP_
#define DIOPH_PARTITION_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/series.hpp"

namespace dioph {

// a + b sqrt(r) with r >= 1 free of small square factors (b = 0 when the
// value is rational).
struct SurdValue {
  mpq_class a;
  mpq_class b;
  mpz_class r;
  CertReal enclosure;

  bool is_rational() const { return b == 0; }
  std::string to_string() const;
};

struct WeakThreshold {
  SurdValue value;
  std::optional<std::string> warning;
};

// (sqrt((u+3)(u-1)) + u - 1) / (2v) + 1. u = 1 gives the degenerate value 1
// with a warning; u < 1 throws DomainError.
WeakThreshold weak_threshold(const SeriesParams& params, int precision_bits = 256);

// f(a) = (a (1 + v - v mu) + (mu - 1)(u + v - 1) - 1) / (v (mu - 1)), the
// largest admissible cell width starting at exponent a. Requires mu > 1.
mpq_class step_budget(const mpq_class& a_prev, const mpq_class& mu, const SeriesParams& params);
// The coefficient of a in f, (1 + v - v mu) / (v (mu - 1)).
mpq_class step_budget_slope(const mpq_class& mu, const SeriesParams& params);

struct PartitionPlan {
  MuSpec mu;
  SeriesParams params;
  mpq_class x;
  mpq_class y;
  std::vector<mpq_class> cuts;  // a_0 < ... < a_k
  std::vector<mpq_class> b;     // b_1 ... b_k
  mpq_class margin;             // C

  std::size_t k() const { return b.size(); }
  // Checks every structural and analytic invariant exactly; throws
  // DomainError naming the first failure.
  void validate() const;
};

// Canonical plan with uniform cuts of width at most safety * f(a_k).
// Throws Infeasible when mu >= 1 + u/v or v < 1.
PartitionPlan plan(const MuSpec& mu, const SeriesParams& params,
                   const mpq_class& safety = mpq_class(1, 2));

// x < (u + v (1 - mu - y)) (mu - 1).
bool weak_condition(const mpq_class& mu, const SeriesParams& params, const mpq_class& x,
                    const mpq_class& y);
// Whether the single cell [mu - x, mu + y) admits a width and a b_1.
bool single_cell_feasible(const mpq_class& mu, const SeriesParams& params, const mpq_class& x,
                          const mpq_class& y);
// One-cell plan (x, y chosen inside the weak condition). Throws Infeasible
// when mu is not below the weak threshold.
PartitionPlan single_cell_plan(const MuSpec& mu, const SeriesParams& params,
                               const mpq_class& safety = mpq_class(1, 2));

enum class Cell3 { s1, s2, s3, unknown };

const char* to_string(Cell3 cell);

// S1: r >= mu + y, S3: r < mu - x, S2 in between; straddles are unknown.
Cell3 classify3(const ApproxRecord& record, const MuSpec& mu, const mpq_class& x, const mpq_class& y);

struct FineCell {
  enum class Kind { s1, s3, t, unknown } kind = Kind::unknown;
  std::size_t index = 0;  // 1..k for Kind::t

  std::string to_string() const;
  bool operator==(const FineCell& other) const { return kind == other.kind && index == other.index; }
};

// T_i: r in [a_{i-1}, a_i).
FineCell classify_fine(const ApproxRecord& record, const PartitionPlan& plan);

struct CellReport {
  FineCell cell;
  std::size_t count = 0;
  CertReal sum;                         // certified sum of the cell's terms
  std::optional<mpq_class> predicted;   // (u + v - v a_i) / (1 - b_i), T cells only
  bool flagged = false;                 // predicted exponent <= 1
};

// Per-cell counts and term sums over `records` (ascending q), in the order
// S3, T_1..T_k, S1, unknown.
std::vector<CellReport> cell_sum_report(const std::vector<ApproxRecord>& records,
                                        const PartitionPlan& plan, const SineLikeSpec& sine,
                                        const SeriesParams& params, const PrecisionPolicy& policy);

}  // namespace dioph

#endif  // DIOPH_PARTITION_HPP_
