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

#include "parity/io/report.hpp"

#include <cstdio>
#include <sstream>
#include <variant>

namespace parity::io {
namespace {

Json TestToJson(const IndependenceTestResult& test) {
  return Json{{"statistic", test.statistic},
              {"df", test.df},
              {"p_value", test.p_value},
              {"reject", test.reject},
              {"stars", SignificanceStars(test.p_value)}};
}

std::string Printf(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

std::string FormatCi(const RiskRatioEstimate& rr) {
  const std::string high = rr.ci_high ? Printf("%.3g", *rr.ci_high) : std::string("inf");
  return Printf("%.3g [%.3g, %s]", rr.rr, rr.ci_low, high.c_str());
}

}  // namespace

Json AuditReportToJson(const AuditReport& report, const ProtectedDistribution& catalog) {
  const auto& options = report.options;
  const bool top_k = std::holds_alternative<TopK>(options.rank_filter);
  const std::uint32_t depth = top_k ? std::get<TopK>(options.rank_filter).k
                                    : std::get<ExactRank>(options.rank_filter).rank;

  Json catalog_json = Json::array();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    catalog_json.push_back(Json{{"label", catalog.labels()[i].name()}, {"count", catalog.counts()[i]}});
  }

  Json contrasts = Json::array();
  for (const auto& c : report.contrasts) {
    const double decision_p = c.p_adjusted;
    Json row{{"label", c.label.name()},
             {"query_count", c.query_count},
             {"table", Json::array({Json::array({c.table.at(0, 0), c.table.at(0, 1)}),
                                    Json::array({c.table.at(1, 0), c.table.at(1, 1)})})},
             {"statistic", c.test.statistic},
             {"df", c.test.df},
             {"p_value", c.test.p_value},
             {"p_value_adjusted", c.p_adjusted},
             {"reject", c.test.reject},
             {"stars", SignificanceStars(decision_p)},
             {"rr", c.risk_ratio.rr},
             {"ci_low", c.risk_ratio.ci_low},
             {"ci_high", nullptr},
             {"nrr", c.risk_ratio.nrr},
             {"passes_80_rule", c.risk_ratio.passes_80_rule}};
    if (c.risk_ratio.ci_high) row["ci_high"] = *c.risk_ratio.ci_high;
    contrasts.push_back(std::move(row));
  }

  return Json{{"metadata",
               {{"k", depth},
                {"rank_filter", top_k ? "top_k" : "exact_rank"},
                {"alpha", options.alpha},
                {"p_adjust", std::string(PAdjustName(options.p_adjust))},
                {"continuity_correction", options.risk_ratio.continuity_correction},
                {"catalog_size", report.catalog_size},
                {"catalog_labels", catalog.size()},
                {"query_count", report.query_count}}},
              {"catalog", std::move(catalog_json)},
              {"omnibus", TestToJson(report.omnibus)},
              {"contrasts", std::move(contrasts)}};
}

std::string FormatAuditTable(const AuditReport& report) {
  std::ostringstream out;
  const auto& o = report.omnibus;
  out << Printf("Omnibus  chi2(%llu) = %.4g%-3s  p = %.3g  %s\n",
                static_cast<unsigned long long>(o.df), o.statistic,
                SignificanceStars(o.p_value).c_str(), o.p_value,
                o.reject ? "BIAS DETECTED" : "parity not rejected");
  out << Printf("alpha = %g, p-adjust = %s, catalog size = %llu, queries = %llu\n\n",
                report.options.alpha, std::string(PAdjustName(report.options.p_adjust)).c_str(),
                static_cast<unsigned long long>(report.catalog_size),
                static_cast<unsigned long long>(report.query_count));
  out << Printf("%-12s %8s  %-14s %-26s %6s  %s\n", "label", "queries", "chi2(1)", "RR [95% CI]",
                "nRR", "80%");
  for (const auto& c : report.contrasts) {
    const std::string chi = Printf("%.4g", c.test.statistic) + SignificanceStars(c.p_adjusted);
    out << Printf("%-12s %8llu  %-14s %-26s %6.3f  %s\n", c.label.name().c_str(),
                  static_cast<unsigned long long>(c.query_count), chi.c_str(),
                  FormatCi(c.risk_ratio).c_str(), c.risk_ratio.nrr,
                  c.risk_ratio.passes_80_rule ? "pass" : "FAIL");
  }
  out << "\n* p < 1e-2; ** p < 1e-3; *** p < 1e-4\n";
  return out.str();
}

Json PowerEstimateToJson(const PowerEstimate& estimate, const SimulationConfig& config,
                         const TestKind& kind) {
  return Json{{"test", kind.name()},
              {"n", estimate.n},
              {"rr", estimate.rr},
              {"nrr", estimate.rr <= 1.0 ? estimate.rr : 1.0 / estimate.rr},
              {"k", config.k},
              {"alpha", config.alpha},
              {"seed", config.master_seed},
              {"catalog_row", std::string(CatalogRowName(config.catalog_row))},
              {"trials", estimate.trials},
              {"rejections", estimate.rejections},
              {"power", estimate.power},
              {"se", estimate.standard_error},
              {"degenerate_trials", estimate.degenerate_trials},
              {"mean_target_queries", estimate.mean_target_queries}};
}

Json ItaRecordToJson(const ita::ItaRecord& record) {
  return Json{{"ita_degrees", record.ita_degrees},
              {"category", std::string(ita::SkinToneName(record.category))},
              {"pixel_count", record.pixel_count},
              {"median_l", record.median_l},
              {"median_b", record.median_b}};
}

}  // namespace parity::io
