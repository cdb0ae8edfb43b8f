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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parity/chi_square.hpp"
#include "parity/contingency.hpp"
#include "parity/labels.hpp"
#include "parity/recommendation_log.hpp"
#include "parity/risk_ratio.hpp"

namespace parity {

enum class PAdjust { kNone, kBonferroni, kBenjaminiHochberg };

std::string_view PAdjustName(PAdjust method);
std::optional<PAdjust> ParsePAdjust(std::string_view name);

// Adjusted p-values in input order, each clamped to [0, 1].
std::vector<double> AdjustPValues(std::span<const double> p_values, PAdjust method);

struct AuditOptions {
  double alpha = 0.01;
  PAdjust p_adjust = PAdjust::kNone;
  RankFilter rank_filter = TopK{6};
  RiskRatioOptions risk_ratio;
};

struct ContrastResult {
  ProtectedLabel label;
  std::uint64_t query_count = 0;
  ContingencyTable table;
  IndependenceTestResult test;  // raw p-value; `reject` uses p_adjusted
  double p_adjusted = 1.0;
  RiskRatioEstimate risk_ratio;
};

struct AuditReport {
  AuditOptions options;
  std::uint64_t catalog_size = 0;
  std::uint64_t query_count = 0;
  ContingencyTable omnibus_table;
  IndependenceTestResult omnibus;
  std::vector<ContrastResult> contrasts;  // one per query label, label order
};

// Omnibus test over every query label plus the catalog row, then one contrast
// test and risk ratio per query label.
AuditReport Audit(const RecommendationLog& log, const ProtectedDistribution& catalog,
                  const AuditOptions& options = {});

// "***" for p < 1e-4, "**" for p < 1e-3, "*" for p < 1e-2, "" otherwise.
std::string SignificanceStars(double p_value);

}  // namespace parity
