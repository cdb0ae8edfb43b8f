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

#include "parity/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "parity/error.hpp"
#include "parity/parallel.hpp"

namespace parity::retrieval {
namespace {

void CheckOrder(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ParityError(ErrorCode::kInvalidArgument, "Minkowski order must be a finite p >= 1");
  }
}

// Sum of |x_i - y_i|^p; monotone in the distance, so ranking uses it directly.
double PowerSum(std::span<const double> x, std::span<const double> y, double p) {
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::fabs(x[i] - y[i]);
  } else if (p == 2.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      sum += d * d;
    }
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::pow(std::fabs(x[i] - y[i]), p);
  }
  return sum;
}

double Root(double power_sum, double p) {
  if (p == 1.0) return power_sum;
  if (p == 2.0) return std::sqrt(power_sum);
  return std::pow(power_sum, 1.0 / p);
}

}  // namespace

EmbeddingCatalog::EmbeddingCatalog(std::vector<CatalogItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw ParityError(ErrorCode::kInvalidArgument, "embedding catalog is empty");
  dimension_ = items_.front().vector.size();
  if (dimension_ == 0) {
    throw ParityError(ErrorCode::kInvalidArgument, "embedding vectors must have dimension >= 1");
  }
  by_id_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].vector.size() != dimension_) {
      throw ParityError(ErrorCode::kInvalidArgument,
                        "item '" + items_[i].id + "' has dimension " +
                            std::to_string(items_[i].vector.size()) + ", expected " +
                            std::to_string(dimension_));
    }
    if (!by_id_.emplace(items_[i].id, i).second) {
      throw ParityError(ErrorCode::kInvalidArgument, "duplicate item id '" + items_[i].id + "'");
    }
  }
}

std::optional<std::size_t> EmbeddingCatalog::index_of(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

ProtectedDistribution EmbeddingCatalog::label_distribution() const {
  std::map<ProtectedLabel, std::uint64_t> counts;
  for (const auto& item : items_) counts[item.label] += 1;
  return ProtectedDistribution({counts.begin(), counts.end()});
}

std::string_view ExclusionName(Exclusion exclusion) {
  switch (exclusion) {
    case Exclusion::kNone: return "none";
    case Exclusion::kSelf: return "self";
    case Exclusion::kSameGroup: return "group";
  }
  return "self";
}

std::optional<Exclusion> ParseExclusion(std::string_view name) {
  if (name == "none") return Exclusion::kNone;
  if (name == "self") return Exclusion::kSelf;
  if (name == "group" || name == "same_group") return Exclusion::kSameGroup;
  return std::nullopt;
}

double MinkowskiDistance(std::span<const double> x, std::span<const double> y, double p) {
  CheckOrder(p);
  if (x.size() != y.size()) {
    throw ParityError(ErrorCode::kInvalidArgument, "vectors differ in dimension");
  }
  return Root(PowerSum(x, y, p), p);
}

std::vector<Neighbor> KnnSearch(const EmbeddingCatalog& catalog, std::string_view query_id,
                                std::uint32_t k, double p, Exclusion exclusion) {
  CheckOrder(p);
  if (k == 0) throw ParityError(ErrorCode::kInvalidArgument, "k must be >= 1");
  const auto query_index = catalog.index_of(query_id);
  if (!query_index) throw ParityError(ErrorCode::kUnknownQuery, std::string(query_id));
  const CatalogItem& query = catalog.item(*query_index);

  struct Candidate {
    double key;
    std::size_t index;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const CatalogItem& item = catalog.item(i);
    if (exclusion != Exclusion::kNone && i == *query_index) continue;
    if (exclusion == Exclusion::kSameGroup && !query.group_id.empty() &&
        item.group_id == query.group_id) {
      continue;
    }
    candidates.push_back({PowerSum(query.vector, item.vector, p), i});
  }
  if (candidates.size() < k) {
    throw ParityError(ErrorCode::kNotEnoughItems,
                      "query '" + query.id + "' has " + std::to_string(candidates.size()) +
                          " eligible items, needs " + std::to_string(k));
  }

  const auto before = [&](const Candidate& a, const Candidate& b) {
    if (a.key != b.key) return a.key < b.key;
    return catalog.item(a.index).id < catalog.item(b.index).id;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end(), before);

  std::vector<Neighbor> out;
  out.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    out.push_back({catalog.item(candidates[i].index).id, Root(candidates[i].key, p)});
  }
  return out;
}

BuildLogResult BuildLog(const EmbeddingCatalog& catalog, const BuildLogOptions& options) {
  std::vector<std::size_t> queries;
  if (options.query_subset) {
    for (const auto& id : *options.query_subset) {
      const auto idx = catalog.index_of(id);
      if (!idx) throw ParityError(ErrorCode::kUnknownQuery, id);
      queries.push_back(*idx);
    }
  } else {
    queries.resize(catalog.size());
    for (std::size_t i = 0; i < queries.size(); ++i) queries[i] = i;
  }

  std::vector<std::optional<QueryRecord>> records(queries.size());
  ParallelFor(queries.size(), options.threads, [&](std::size_t q) {
    const CatalogItem& query = catalog.item(queries[q]);
    std::vector<Neighbor> neighbors;
    try {
      neighbors = KnnSearch(catalog, query.id, options.k, options.p, options.exclusion);
    } catch (const ParityError& e) {
      if (e.code() != ErrorCode::kNotEnoughItems) throw;
      return;
    }
    QueryRecord record{.query_id = query.id, .query_label = query.label, .results = {}};
    record.results.reserve(neighbors.size());
    for (std::size_t r = 0; r < neighbors.size(); ++r) {
      const CatalogItem& hit = catalog.item(*catalog.index_of(neighbors[r].id));
      record.results.push_back(RecommendedItem{.rank = static_cast<std::uint32_t>(r + 1),
                                               .result_id = hit.id,
                                               .result_label = hit.label});
    }
    records[q] = std::move(record);
  });

  BuildLogResult result;
  for (std::size_t q = 0; q < records.size(); ++q) {
    if (records[q]) {
      result.log.records.push_back(std::move(*records[q]));
    } else {
      result.skipped_queries.push_back(catalog.item(queries[q]).id);
    }
  }
  return result;
}

}  // namespace parity::retrieval
