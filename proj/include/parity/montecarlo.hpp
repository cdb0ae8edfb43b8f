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

#include "parity/contingency.hpp"
#include "parity/labels.hpp"
#include "parity/recommendation_log.hpp"
#include "parity/seeding.hpp"

namespace parity {

// Catalog row that accompanies a simulated log.
enum class CatalogRow {
  // Label counts of the n sampled query items: the queries are the catalog.
  kRealizedQueries,
  // round(n * P_Z) with largest-remainder correction. Fixed across trials,
  // which makes the omnibus test conservative (rejects below alpha at rr = 1).
  kExpectedCounts,
};

std::string_view CatalogRowName(CatalogRow row);
std::optional<CatalogRow> ParseCatalogRow(std::string_view name);

struct SimulationConfig {
  std::uint64_t n = 1000;  // catalog size = number of query items
  double rr = 1.0;
  ProtectedDistribution base = ReferenceSkinToneDistribution();
  std::uint32_t k = 6;
  std::uint32_t trials = 1000;
  double alpha = 0.01;
  std::uint64_t master_seed = kDefaultSeed;
  CatalogRow catalog_row = CatalogRow::kRealizedQueries;
  unsigned threads = 0;  // 0: hardware concurrency; never affects results
};

// Throws InvalidArgument / InvalidAlpha on an unusable config.
void ValidateConfig(const SimulationConfig& config);

class TestKind {
 public:
  static TestKind Omnibus() { return TestKind(std::nullopt); }
  static TestKind Contrast(ProtectedLabel label) { return TestKind(std::move(label)); }
  // "omnibus" or "contrast:LABEL".
  static TestKind Parse(std::string_view text);

  bool is_omnibus() const noexcept { return !label_.has_value(); }
  const std::optional<ProtectedLabel>& contrast_label() const noexcept { return label_; }
  std::string name() const;

 private:
  explicit TestKind(std::optional<ProtectedLabel> label) : label_(std::move(label)) {}
  std::optional<ProtectedLabel> label_;
};

/// Skews `base` towards `target`: P*(target) = min(1, rr * P(target)) and
/// every other label is scaled by (1 - P*(target)) / (1 - P(target)).
/// The denominator is taken as the summed mass of the other labels.
/// rr == 1 returns the input bit-for-bit.
LabelProbabilities SkewDistribution(const LabelProbabilities& base, const ProtectedLabel& target,
                                    double rr);

/// n query labels i.i.d. from the base distribution, then k result labels per
/// query i.i.d. from the distribution skewed towards that query's label.
/// Query ids are "q{i}", result ids "r{i}_{rank}".
RecommendationLog GenerateLog(const SimulationConfig& config, Rng& rng);

/// Catalog row paired with `log` under config.catalog_row.
ProtectedDistribution SimulatedCatalog(const SimulationConfig& config,
                                       const RecommendationLog& log);

/// Same draws as GenerateLog, aggregated straight into the omnibus table
/// (top-k over all ranks) without materializing the log.
ContingencyTable SimulateOmnibusTable(const SimulationConfig& config, Rng& rng);

struct PowerEstimate {
  double rr = 1.0;
  std::uint64_t n = 0;
  double power = 0.0;
  std::uint32_t trials = 0;
  std::uint32_t rejections = 0;
  double standard_error = 0.0;  // sqrt(power (1 - power) / trials)
  // Diagnostics.
  std::uint32_t degenerate_trials = 0;  // undefined test, counted as non-rejection
  double mean_target_queries = 0.0;     // contrast: realized queries with the label
};

/// Fraction of `config.trials` simulated audits that reject at config.alpha.
/// Trial t draws from Rng(DeriveSeed(master_seed, t)).
PowerEstimate EstimatePower(const SimulationConfig& config, const TestKind& kind);

struct PowerCurve {
  TestKind kind;
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  double alpha = 0.0;
  std::vector<PowerEstimate> points;  // increasing rr
};

PowerCurve ComputePowerCurve(const SimulationConfig& config, std::span<const double> rr_grid,
                             const TestKind& kind);

enum class RrSide { kBelowOne, kAboveOne };

std::string_view RrSideName(RrSide side);
std::optional<RrSide> ParseRrSide(std::string_view name);

struct DetectableRrOptions {
  double target_power = 0.8;
  RrSide side = RrSide::kBelowOne;
  double resolution = 0.01;  // grid step in nrr units
};

struct DetectableRr {
  double rr = 1.0;
  double nrr = 1.0;
  PowerEstimate estimate;  // at the returned rr
  std::uint32_t evaluations = 0;
};

/// Risk ratio closest to 1 on the requested side whose estimated power minus
/// one standard error exceeds the target. Bisects an nrr grid of step
/// `resolution` assuming power grows as nrr falls. The above-one side of a
/// contrast is capped at rr = 1 / P_Z(label).
///
/// Throws Unachievable when even the most extreme grid point falls short.
DetectableRr FindDetectableRr(const SimulationConfig& config, const TestKind& kind,
                              const DetectableRrOptions& options = {});

}  // namespace parity
