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

// Plain comma-separated formats with a fixed header line. Fields are not
// quoted, so ids and labels may not contain commas. Parse failures throw
// ParseError naming the 1-based line.
//
//   log        query_id,query_label,rank,result_id,result_label
//   catalog    label,count
//   embeddings id,label,group_id,v0,...,v{d-1}
//   pixels     r,g,b          (header optional)
//   power      test,n,rr,nrr,power,se
//   detect     n,side,detectable_rr,detectable_nrr

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "parity/ita.hpp"
#include "parity/labels.hpp"
#include "parity/montecarlo.hpp"
#include "parity/recommendation_log.hpp"
#include "parity/retrieval.hpp"

namespace parity::io {

inline constexpr std::string_view kLogHeader = "query_id,query_label,rank,result_id,result_label";
inline constexpr std::string_view kCatalogHeader = "label,count";
inline constexpr std::string_view kPixelsHeader = "r,g,b";
inline constexpr std::string_view kPowerCurveHeader = "test,n,rr,nrr,power,se";
inline constexpr std::string_view kDetectHeader = "n,side,detectable_rr,detectable_nrr";

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double value);

RecommendationLog ReadLogCsv(std::istream& in);
void WriteLogCsv(std::ostream& out, const RecommendationLog& log);

ProtectedDistribution ReadCatalogCsv(std::istream& in);
void WriteCatalogCsv(std::ostream& out, const ProtectedDistribution& catalog);

retrieval::EmbeddingCatalog ReadEmbeddingsCsv(std::istream& in);
void WriteEmbeddingsCsv(std::ostream& out, const retrieval::EmbeddingCatalog& catalog);

std::vector<ita::Rgb> ReadPixelsCsv(std::istream& in);

struct PowerCurveRow {
  std::string test;
  std::uint64_t n = 0;
  double rr = 0.0;
  double nrr = 0.0;
  double power = 0.0;
  double se = 0.0;

  friend bool operator==(const PowerCurveRow&, const PowerCurveRow&) = default;
};

std::vector<PowerCurveRow> PowerCurveRows(const PowerCurve& curve);
void WritePowerCurveCsv(std::ostream& out, const std::vector<PowerCurveRow>& rows);
std::vector<PowerCurveRow> ReadPowerCurveCsv(std::istream& in);

}  // namespace parity::io
