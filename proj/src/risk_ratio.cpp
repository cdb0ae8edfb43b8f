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

#include "parity/risk_ratio.hpp"

#include <cmath>

#include "parity/error.hpp"

namespace parity {

double NormalizedRiskRatio(double rr) {
  if (rr < 0.0 || std::isnan(rr)) {
    throw ParityError(ErrorCode::kInvalidArgument, "risk ratio must be non-negative");
  }
  return rr <= 1.0 ? rr : 1.0 / rr;
}

RiskRatioEstimate RiskRatio(const ContingencyTable& contrast, const RiskRatioOptions& options) {
  if (contrast.rows() != 2 || contrast.cols() != 2) {
    throw ParityError(ErrorCode::kInvalidArgument, "risk ratio needs a 2x2 contrast table");
  }
  const double shift = options.continuity_correction ? 0.5 : 0.0;
  const double a = static_cast<double>(contrast.at(0, 0)) + shift;
  const double b = static_cast<double>(contrast.at(0, 1)) + shift;
  const double c = static_cast<double>(contrast.at(1, 0)) + shift;
  const double d = static_cast<double>(contrast.at(1, 1)) + shift;
  if (c == 0.0) {
    throw ParityError(ErrorCode::kCatalogZeroCount, contrast.col_labels()[0].name());
  }
  if (a + b == 0.0) {
    throw ParityError(ErrorCode::kDegenerateTable, "contrast query row is empty");
  }

  RiskRatioEstimate est{.label = contrast.col_labels()[0], .rr = 1.0, .ci_low = 0.0,
                        .ci_high = std::nullopt, .nrr = 1.0, .passes_80_rule = true};
  est.rr = (a / (a + b)) / (c / (c + d));
  if (a == 0.0) {
    est.ci_low = 0.0;
    est.ci_high = std::nullopt;
  } else {
    const double se = std::sqrt(1.0 / a - 1.0 / (a + b) + 1.0 / c - 1.0 / (c + d));
    const double log_rr = std::log(est.rr);
    est.ci_low = std::exp(log_rr - options.z * se);
    est.ci_high = std::exp(log_rr + options.z * se);
  }
  est.nrr = NormalizedRiskRatio(est.rr);
  est.passes_80_rule = est.nrr >= kEightyPercentRule;
  return est;
}

}  // namespace parity
