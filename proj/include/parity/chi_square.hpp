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

#pragma once

#include <cstdint>

#include "parity/contingency.hpp"

namespace parity {

struct IndependenceTestResult {
  double statistic = 0.0;
  std::uint64_t df = 0;
  double p_value = 1.0;
  double alpha = 0.01;
  bool reject = false;
};

/// Natural log of the gamma function for a > 0.
///
/// Reentrant replacement for std::lgamma, which writes the global `signgam`
/// and therefore cannot be called from concurrent Monte Carlo trials.
double LogGamma(double a);

/// Regularized upper incomplete gamma function Q(a, x) for a > 0, x >= 0.
/// Series expansion of P for x < a + 1, Lentz continued fraction otherwise.
double RegularizedGammaQ(double a, double x);

/// Survival function of the chi-square distribution: Q(df/2, x/2).
double ChiSquareSurvival(double x, std::uint64_t df);

/// Pearson chi-square test of independence (no continuity correction).
///
/// Throws DegenerateTable for tables smaller than 2x2 or with an empty row or
/// column, and InvalidAlpha unless 0 < alpha < 1.
IndependenceTestResult ChiSquareTest(const ContingencyTable& table, double alpha);

}  // namespace parity
