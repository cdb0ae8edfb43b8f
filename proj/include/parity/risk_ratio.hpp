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

#include <optional>

#include "parity/contingency.hpp"
#include "parity/labels.hpp"

namespace parity {

inline constexpr double kEightyPercentRule = 0.8;

struct RiskRatioEstimate {
  ProtectedLabel label;
  double rr = 1.0;
  double ci_low = 0.0;
  std::optional<double> ci_high;  // nullopt: unbounded
  double nrr = 1.0;
  bool passes_80_rule = true;
};

struct RiskRatioOptions {
  double z = 1.96;  // two-sided 95%
  bool continuity_correction = false;  // add 0.5 to every cell
};

/// rr if rr <= 1, else 1/rr.
double NormalizedRiskRatio(double rr);

/// Risk ratio of a 2x2 contrast [[a, b], [c, d]] (query row first, catalog
/// row second) with the Katz log interval
/// exp(ln rr +/- z * sqrt(1/a - 1/(a+b) + 1/c - 1/(c+d))).
/// a == 0 yields rr = 0 and the interval [0, unbounded].
RiskRatioEstimate RiskRatio(const ContingencyTable& contrast, const RiskRatioOptions& options = {});

}  // namespace parity
