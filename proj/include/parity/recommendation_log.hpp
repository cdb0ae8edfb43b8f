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
#include <string>
#include <vector>

#include "parity/labels.hpp"

namespace parity {

struct RecommendedItem {
  std::uint32_t rank;  // 1-based
  std::string result_id;
  ProtectedLabel result_label;

  friend bool operator==(const RecommendedItem&, const RecommendedItem&) = default;
};

struct QueryRecord {
  std::string query_id;
  ProtectedLabel query_label;
  std::vector<RecommendedItem> results;  // ranks 1..K, in order

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct RecommendationLog {
  std::vector<QueryRecord> records;

  bool empty() const noexcept { return records.empty(); }
  std::size_t size() const noexcept { return records.size(); }

  friend bool operator==(const RecommendationLog&, const RecommendationLog&) = default;
};

// Throws InvalidArgument if any record's ranks are not exactly 1..K.
void ValidateRanks(const RecommendationLog& log);

}  // namespace parity
