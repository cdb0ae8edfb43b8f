/*
 * Copyright 2026 The Parity Audit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "parity/chi_square.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "parity/error.hpp"

namespace parity {
namespace {

constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 1'000'000;

double LowerSeries(double a, double x, double log_prefactor) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(log_prefactor);
}

double UpperContinuedFraction(double a, double x, double log_prefactor) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(log_prefactor) * h;
}

}  // namespace

double LogGamma(double a) {
  // Shift the argument up with the recurrence, then Stirling's series.
  double shift = 1.0;
  while (a < 15.0) {
    shift *= a;
    a += 1.0;
  }
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 -
             inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
  return (a - 0.5) * std::log(a) - a + 0.5 * std::log(2.0 * std::numbers::pi) + series -
         std::log(shift);
}

double RegularizedGammaQ(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw ParityError(ErrorCode::kInvalidArgument, "RegularizedGammaQ requires a > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefactor = -x + a * std::log(x) - LogGamma(a);
  double q = x < a + 1.0 ? 1.0 - LowerSeries(a, x, log_prefactor)
                         : UpperContinuedFraction(a, x, log_prefactor);
  return std::clamp(q, 0.0, 1.0);
}

double ChiSquareSurvival(double x, std::uint64_t df) {
  if (df == 0) throw ParityError(ErrorCode::kInvalidArgument, "df must be >= 1");
  if (x <= 0.0) return 1.0;
  return RegularizedGammaQ(0.5 * static_cast<double>(df), 0.5 * x);
}

IndependenceTestResult ChiSquareTest(const ContingencyTable& table, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParityError(ErrorCode::kInvalidAlpha, "alpha must lie in (0, 1)");
  }
  const std::size_t rows = table.rows();
  const std::size_t cols = table.cols();
  if (rows < 2 || cols < 2) {
    throw ParityError(ErrorCode::kDegenerateTable, "table must be at least 2x2");
  }

  std::vector<double> row_totals(rows);
  std::vector<double> col_totals(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = static_cast<double>(table.at(r, c));
      row_totals[r] += v;
      col_totals[c] += v;
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_totals[r] == 0.0) {
      throw ParityError(ErrorCode::kDegenerateTable, "row '" + table.row_labels()[r] + "' is empty");
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_totals[c] == 0.0) {
      throw ParityError(ErrorCode::kDegenerateTable,
                        "column '" + table.col_labels()[c].name() + "' is empty");
    }
  }
  double grand = 0.0;
  for (const double t : row_totals) grand += t;

  double statistic = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double expected = row_totals[r] * col_totals[c] / grand;
      const double diff = static_cast<double>(table.at(r, c)) - expected;
      statistic += diff * diff / expected;
    }
  }

  IndependenceTestResult result;
  result.statistic = statistic;
  result.df = static_cast<std::uint64_t>((rows - 1) * (cols - 1));
  result.p_value = ChiSquareSurvival(statistic, result.df);
  result.alpha = alpha;
  result.reject = result.p_value < alpha;
  return result;
}

}  // namespace parity
