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

#include <string>

#include "json.hpp"
#include "parity/audit.hpp"
#include "parity/ita.hpp"
#include "parity/montecarlo.hpp"

namespace parity::io {

using Json = nlohmann::ordered_json;

// Layout is described by schemas/audit_report.schema.json.
Json AuditReportToJson(const AuditReport& report, const ProtectedDistribution& catalog);

// Fixed-width summary: omnibus line, then one row per contrast with
// chi-square, stars, RR [95% CI], nRR and the 80% rule verdict.
std::string FormatAuditTable(const AuditReport& report);

Json PowerEstimateToJson(const PowerEstimate& estimate, const SimulationConfig& config,
                         const TestKind& kind);

Json ItaRecordToJson(const ita::ItaRecord& record);

}  // namespace parity::io
