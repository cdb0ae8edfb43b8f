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
#include <unordered_map>
#include <vector>

#include "parity/labels.hpp"
#include "parity/recommendation_log.hpp"

namespace parity::retrieval {

struct CatalogItem {
  std::string id;
  ProtectedLabel label;
  std::string group_id;  // empty: no product group
  std::vector<double> vector;
};

// Immutable set of embedded items sharing one dimensionality.
class EmbeddingCatalog {
 public:
  explicit EmbeddingCatalog(std::vector<CatalogItem> items);

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<CatalogItem>& items() const noexcept { return items_; }
  const CatalogItem& item(std::size_t index) const { return items_[index]; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  // Label counts over the whole catalog.
  ProtectedDistribution label_distribution() const;

 private:
  std::vector<CatalogItem> items_;
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::size_t> by_id_;
};

enum class Exclusion { kNone, kSelf, kSameGroup };

std::string_view ExclusionName(Exclusion exclusion);
std::optional<Exclusion> ParseExclusion(std::string_view name);

struct Neighbor {
  std::string id;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Minkowski distance (sum |x_i - y_i|^p)^(1/p), p >= 1.
double MinkowskiDistance(std::span<const double> x, std::span<const double> y, double p);

/// Exact k nearest neighbors of `query_id`, ascending by distance with ties
/// broken by id. kSameGroup drops every item sharing the query's group (and
/// the query itself).
std::vector<Neighbor> KnnSearch(const EmbeddingCatalog& catalog, std::string_view query_id,
                                std::uint32_t k, double p = 2.0,
                                Exclusion exclusion = Exclusion::kSelf);

struct BuildLogOptions {
  std::uint32_t k = 6;
  double p = 2.0;
  Exclusion exclusion = Exclusion::kSelf;
  std::optional<std::vector<std::string>> query_subset;  // default: every item
  unsigned threads = 0;
};

struct BuildLogResult {
  RecommendationLog log;
  std::vector<std::string> skipped_queries;  // NotEnoughItems
};

BuildLogResult BuildLog(const EmbeddingCatalog& catalog, const BuildLogOptions& options = {});

}  // namespace parity::retrieval
