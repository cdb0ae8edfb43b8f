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
#include <variant>
#include <vector>

#include "parity/labels.hpp"
#include "parity/recommendation_log.hpp"

namespace parity {

inline constexpr const char* kCatalogRowName = "catalog";

// Row-major matrix of counts with row and column labels. The builders always
// put the catalog row last.
class ContingencyTable {
 public:
  ContingencyTable(std::vector<std::string> row_labels, std::vector<ProtectedLabel> col_labels,
                   std::vector<std::uint64_t> counts);

  std::size_t rows() const noexcept { return row_labels_.size(); }
  std::size_t cols() const noexcept { return col_labels_.size(); }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<ProtectedLabel>& col_labels() const noexcept { return col_labels_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  std::uint64_t at(std::size_t row, std::size_t col) const { return counts_[row * cols() + col]; }
  std::uint64_t row_total(std::size_t row) const;
  std::uint64_t col_total(std::size_t col) const;
  std::uint64_t grand_total() const;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  std::vector<std::string> row_labels_;
  std::vector<ProtectedLabel> col_labels_;
  std::vector<std::uint64_t> counts_;
};

// Pool ranks 1..K (weak parity) or look at a single rank k (strong parity,
// one table per rank).
struct TopK {
  std::uint32_t k;
};
struct ExactRank {
  std::uint32_t rank;
};
using RankFilter = std::variant<TopK, ExactRank>;

// One row per query label present in the log (lexicographic), counting the
// result labels that pass `filter`, followed by the raw catalog counts.
ContingencyTable BuildOmnibusTable(const RecommendationLog& log,
                                   const ProtectedDistribution& catalog,
                                   const RankFilter& filter = TopK{6});

// 2x2 aggregation [label, not label] of the query row for `label` and of
// the catalog row.
ContingencyTable BuildContrastTable(const ContingencyTable& omnibus, const ProtectedLabel& label);

}  // namespace parity
