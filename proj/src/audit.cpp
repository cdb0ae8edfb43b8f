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

#include "parity/audit.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "parity/error.hpp"

namespace parity {

std::string_view PAdjustName(PAdjust method) {
  switch (method) {
    case PAdjust::kNone: return "none";
    case PAdjust::kBonferroni: return "bonferroni";
    case PAdjust::kBenjaminiHochberg: return "benjamini_hochberg";
  }
  return "none";
}

std::optional<PAdjust> ParsePAdjust(std::string_view name) {
  if (name == "none") return PAdjust::kNone;
  if (name == "bonferroni") return PAdjust::kBonferroni;
  if (name == "benjamini_hochberg" || name == "bh") return PAdjust::kBenjaminiHochberg;
  return std::nullopt;
}

std::vector<double> AdjustPValues(std::span<const double> p_values, PAdjust method) {
  const std::size_t m = p_values.size();
  std::vector<double> out(p_values.begin(), p_values.end());
  switch (method) {
    case PAdjust::kNone:
      break;
    case PAdjust::kBonferroni:
      for (auto& p : out) p = std::min(1.0, p * static_cast<double>(m));
      break;
    case PAdjust::kBenjaminiHochberg: {
      // Step-up: p_(i) * m / i, made monotone from the largest p downwards.
      std::vector<std::size_t> order(m);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
      double running = 1.0;
      for (std::size_t pos = m; pos-- > 0;) {
        const std::size_t idx = order[pos];
        const double scaled = p_values[idx] * static_cast<double>(m) / static_cast<double>(pos + 1);
        running = std::min(running, scaled);
        out[idx] = std::min(1.0, running);
      }
      break;
    }
  }
  return out;
}

std::string SignificanceStars(double p_value) {
  if (p_value < 1e-4) return "***";
  if (p_value < 1e-3) return "**";
  if (p_value < 1e-2) return "*";
  return "";
}

AuditReport Audit(const RecommendationLog& log, const ProtectedDistribution& catalog,
                  const AuditOptions& options) {
  ContingencyTable omnibus_table = BuildOmnibusTable(log, catalog, options.rank_filter);
  const IndependenceTestResult omnibus = ChiSquareTest(omnibus_table, options.alpha);

  std::map<std::string, std::uint64_t> queries_per_label;
  for (const auto& record : log.records) queries_per_label[record.query_label.name()] += 1;

  std::vector<ContrastResult> contrasts;
  std::vector<double> raw;
  for (std::size_t r = 0; r + 1 < omnibus_table.rows(); ++r) {
    const ProtectedLabel label(omnibus_table.row_labels()[r]);
    ContingencyTable table = BuildContrastTable(omnibus_table, label);
    IndependenceTestResult test = ChiSquareTest(table, options.alpha);
    RiskRatioEstimate rr = RiskRatio(table, options.risk_ratio);
    raw.push_back(test.p_value);
    contrasts.push_back(ContrastResult{.label = label,
                                       .query_count = queries_per_label[label.name()],
                                       .table = std::move(table),
                                       .test = test,
                                       .p_adjusted = test.p_value,
                                       .risk_ratio = std::move(rr)});
  }

  const std::vector<double> adjusted = AdjustPValues(raw, options.p_adjust);
  for (std::size_t i = 0; i < contrasts.size(); ++i) {
    contrasts[i].p_adjusted = adjusted[i];
    contrasts[i].test.reject = adjusted[i] < options.alpha;
  }

  return AuditReport{.options = options,
                     .catalog_size = catalog.total(),
                     .query_count = log.size(),
                     .omnibus_table = std::move(omnibus_table),
                     .omnibus = omnibus,
                     .contrasts = std::move(contrasts)};
}

}  // namespace parity
