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

#include "parity/contingency.hpp"

#include <map>
#include <numeric>

#include "parity/error.hpp"

namespace parity {

void ValidateRanks(const RecommendationLog& log) {
  for (const auto& record : log.records) {
    for (std::size_t i = 0; i < record.results.size(); ++i) {
      if (record.results[i].rank != i + 1) {
        throw ParityError(ErrorCode::kInvalidArgument,
                          "record '" + record.query_id + "' has non-consecutive ranks");
      }
    }
  }
}

ContingencyTable::ContingencyTable(std::vector<std::string> row_labels,
                                   std::vector<ProtectedLabel> col_labels,
                                   std::vector<std::uint64_t> counts)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      counts_(std::move(counts)) {
  if (counts_.size() != row_labels_.size() * col_labels_.size()) {
    throw ParityError(ErrorCode::kInvalidArgument, "count matrix does not match table shape");
  }
}

std::uint64_t ContingencyTable::row_total(std::size_t row) const {
  const auto begin = counts_.begin() + static_cast<std::ptrdiff_t>(row * cols());
  return std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(cols()), std::uint64_t{0});
}

std::uint64_t ContingencyTable::col_total(std::size_t col) const {
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < rows(); ++r) total += at(r, col);
  return total;
}

std::uint64_t ContingencyTable::grand_total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

ContingencyTable BuildOmnibusTable(const RecommendationLog& log,
                                   const ProtectedDistribution& catalog,
                                   const RankFilter& filter) {
  if (log.empty()) throw ParityError(ErrorCode::kEmptyLog, "recommendation log has no records");
  ValidateRanks(log);

  const auto [depth, lo, hi] = std::visit(
      [](const auto& f) -> std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, TopK>) {
          return {f.k, 1, f.k};
        } else {
          return {f.rank, f.rank, f.rank};
        }
      },
      filter);
  if (depth == 0) throw ParityError(ErrorCode::kInvalidArgument, "rank filter must be >= 1");

  const std::size_t ncols = catalog.size();
  auto column_of = [&](const ProtectedLabel& label) {
    const auto idx = catalog.index_of(label);
    if (!idx) throw ParityError(ErrorCode::kUnknownLabel, label.name());
    return *idx;
  };

  std::map<ProtectedLabel, std::vector<std::uint64_t>> rows;
  for (const auto& record : log.records) {
    column_of(record.query_label);
    if (record.results.size() < depth) {
      throw ParityError(ErrorCode::kInsufficientRankDepth, record.query_id);
    }
    auto& row = rows.try_emplace(record.query_label, ncols, 0).first->second;
    for (const auto& item : record.results) {
      const std::size_t col = column_of(item.result_label);
      if (item.rank >= lo && item.rank <= hi) row[col] += 1;
    }
  }

  std::vector<std::string> row_labels;
  std::vector<std::uint64_t> counts;
  row_labels.reserve(rows.size() + 1);
  counts.reserve((rows.size() + 1) * ncols);
  for (const auto& [label, row] : rows) {
    row_labels.push_back(label.name());
    counts.insert(counts.end(), row.begin(), row.end());
  }
  row_labels.emplace_back(kCatalogRowName);
  counts.insert(counts.end(), catalog.counts().begin(), catalog.counts().end());
  return ContingencyTable(std::move(row_labels), catalog.labels(), std::move(counts));
}

ContingencyTable BuildContrastTable(const ContingencyTable& omnibus, const ProtectedLabel& label) {
  if (omnibus.rows() < 2) {
    throw ParityError(ErrorCode::kLabelNotFound, "omnibus table has no query rows");
  }
  std::optional<std::size_t> col;
  for (std::size_t c = 0; c < omnibus.cols(); ++c) {
    if (omnibus.col_labels()[c] == label) col = c;
  }
  std::optional<std::size_t> row;
  for (std::size_t r = 0; r + 1 < omnibus.rows(); ++r) {
    if (omnibus.row_labels()[r] == label.name()) row = r;
  }
  if (!col || !row) throw ParityError(ErrorCode::kLabelNotFound, label.name());

  const std::size_t catalog_row = omnibus.rows() - 1;
  const std::uint64_t query_hit = omnibus.at(*row, *col);
  const std::uint64_t catalog_hit = omnibus.at(catalog_row, *col);
  std::vector<std::uint64_t> counts = {query_hit, omnibus.row_total(*row) - query_hit,
                                       catalog_hit, omnibus.row_total(catalog_row) - catalog_hit};
  return ContingencyTable({label.name(), kCatalogRowName},
                          {label, ProtectedLabel("not " + label.name())}, std::move(counts));
}

}  // namespace parity
