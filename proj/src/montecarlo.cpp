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

#include "parity/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "parity/chi_square.hpp"
#include "parity/error.hpp"
#include "parity/parallel.hpp"

namespace parity {
namespace {

// Inverse-CDF sampler over a fixed categorical distribution.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const std::vector<double>& probabilities) {
    cumulative_.reserve(probabilities.size());
    double running = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
      running += probabilities[i];
      cumulative_.push_back(running);
      if (probabilities[i] > 0.0) last_positive_ = static_cast<std::uint32_t>(i);
    }
  }

  std::uint32_t operator()(Rng& rng) const {
    const double u = UniformUnit(rng);
    for (std::size_t i = 0; i < cumulative_.size(); ++i) {
      if (u < cumulative_[i]) return static_cast<std::uint32_t>(i);
    }
    return last_positive_;  // u landed in the rounding gap below 1
  }

 private:
  std::vector<double> cumulative_;
  std::uint32_t last_positive_ = 0;
};

// Per-config sampling tables: the base distribution for query labels and one
// skewed distribution per possible query label.
struct Samplers {
  explicit Samplers(const SimulationConfig& config) : base(config.base.probabilities().probabilities) {
    const LabelProbabilities probs = config.base.probabilities();
    skewed.reserve(probs.size());
    for (const auto& label : probs.labels) {
      skewed.emplace_back(SkewDistribution(probs, label, config.rr).probabilities);
    }
  }

  CategoricalSampler base;
  std::vector<CategoricalSampler> skewed;
};

struct Draws {
  std::vector<std::uint32_t> query_labels;   // n
  std::vector<std::uint32_t> result_labels;  // n * k, query-major
};

// All query labels are drawn first, then the recommendations query by query.
// GenerateLog and SimulateOmnibusTable must consume the stream identically.
Draws Sample(const SimulationConfig& config, const Samplers& samplers, Rng& rng) {
  Draws draws;
  draws.query_labels.resize(config.n);
  for (auto& q : draws.query_labels) q = samplers.base(rng);
  draws.result_labels.resize(config.n * config.k);
  std::size_t pos = 0;
  for (const auto q : draws.query_labels) {
    const CategoricalSampler& sampler = samplers.skewed[q];
    for (std::uint32_t j = 0; j < config.k; ++j) draws.result_labels[pos++] = sampler(rng);
  }
  return draws;
}

ProtectedDistribution CatalogFromQueryCounts(const ProtectedDistribution& base,
                                             const std::vector<std::uint64_t>& query_counts) {
  std::vector<ProtectedDistribution::Entry> entries;
  entries.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) entries.emplace_back(base.labels()[i], query_counts[i]);
  return ProtectedDistribution(std::move(entries));
}

}  // namespace

std::string_view CatalogRowName(CatalogRow row) {
  return row == CatalogRow::kRealizedQueries ? "realized" : "expected";
}

std::optional<CatalogRow> ParseCatalogRow(std::string_view name) {
  if (name == "realized") return CatalogRow::kRealizedQueries;
  if (name == "expected") return CatalogRow::kExpectedCounts;
  return std::nullopt;
}

void ValidateConfig(const SimulationConfig& config) {
  if (config.n == 0) throw ParityError(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (config.k == 0) throw ParityError(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (config.trials == 0) throw ParityError(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!(config.rr > 0.0) || !std::isfinite(config.rr)) {
    throw ParityError(ErrorCode::kInvalidArgument, "rr must be a positive finite number");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ParityError(ErrorCode::kInvalidAlpha, "alpha must lie in (0, 1)");
  }
}

TestKind TestKind::Parse(std::string_view text) {
  if (text == "omnibus") return Omnibus();
  constexpr std::string_view kPrefix = "contrast:";
  if (text.starts_with(kPrefix) && text.size() > kPrefix.size()) {
    return Contrast(ProtectedLabel(std::string(text.substr(kPrefix.size()))));
  }
  throw ParityError(ErrorCode::kInvalidArgument,
                    "test kind must be 'omnibus' or 'contrast:LABEL', got '" + std::string(text) + "'");
}

std::string TestKind::name() const {
  return label_ ? "contrast:" + label_->name() : std::string("omnibus");
}

LabelProbabilities SkewDistribution(const LabelProbabilities& base, const ProtectedLabel& target,
                                    double rr) {
  const auto idx = base.index_of(target);
  if (!idx) throw ParityError(ErrorCode::kLabelNotFound, target.name());
  if (!(rr > 0.0)) throw ParityError(ErrorCode::kInvalidArgument, "rr must be positive");

  const double p_target = base.probabilities[*idx];
  LabelProbabilities out = base;
  if (rr == 1.0 || p_target >= 1.0) return out;

  // The remaining mass is summed directly rather than taken as 1 - p_target,
  // which loses digits when p_target is close to 1.
  double others = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i != *idx) others += base.probabilities[i];
  }
  if (others <= 0.0) return out;
  const double skewed_target = std::min(1.0, rr * p_target);
  const double scale = (1.0 - skewed_target) / others;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.probabilities[i] = i == *idx ? skewed_target : base.probabilities[i] * scale;
  }
  return out;
}

RecommendationLog GenerateLog(const SimulationConfig& config, Rng& rng) {
  ValidateConfig(config);
  const Samplers samplers(config);
  const Draws draws = Sample(config, samplers, rng);
  const auto& labels = config.base.labels();

  RecommendationLog log;
  log.records.reserve(config.n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < config.n; ++i) {
    QueryRecord record{.query_id = "q" + std::to_string(i),
                       .query_label = labels[draws.query_labels[i]],
                       .results = {}};
    record.results.reserve(config.k);
    for (std::uint32_t j = 1; j <= config.k; ++j) {
      record.results.push_back(RecommendedItem{
          .rank = j,
          .result_id = "r" + std::to_string(i) + "_" + std::to_string(j),
          .result_label = labels[draws.result_labels[pos++]]});
    }
    log.records.push_back(std::move(record));
  }
  return log;
}

ProtectedDistribution SimulatedCatalog(const SimulationConfig& config,
                                       const RecommendationLog& log) {
  if (config.catalog_row == CatalogRow::kExpectedCounts) {
    return ProtectedDistribution::FromProbabilities(config.base.probabilities(), config.n);
  }
  std::vector<std::uint64_t> counts(config.base.size(), 0);
  for (const auto& record : log.records) {
    const auto idx = config.base.index_of(record.query_label);
    if (!idx) throw ParityError(ErrorCode::kUnknownLabel, record.query_label.name());
    counts[*idx] += 1;
  }
  return CatalogFromQueryCounts(config.base, counts);
}

ContingencyTable SimulateOmnibusTable(const SimulationConfig& config, Rng& rng) {
  ValidateConfig(config);
  const Samplers samplers(config);
  const Draws draws = Sample(config, samplers, rng);
  const std::size_t labels = config.base.size();

  std::vector<std::uint64_t> query_counts(labels, 0);
  std::vector<std::uint64_t> cells(labels * labels, 0);
  std::size_t pos = 0;
  for (const auto q : draws.query_labels) {
    query_counts[q] += 1;
    for (std::uint32_t j = 0; j < config.k; ++j) cells[q * labels + draws.result_labels[pos++]] += 1;
  }

  std::vector<std::string> row_labels;
  std::vector<std::uint64_t> counts;
  for (std::size_t q = 0; q < labels; ++q) {
    if (query_counts[q] == 0) continue;
    row_labels.push_back(config.base.labels()[q].name());
    counts.insert(counts.end(), cells.begin() + static_cast<std::ptrdiff_t>(q * labels),
                  cells.begin() + static_cast<std::ptrdiff_t>((q + 1) * labels));
  }
  row_labels.emplace_back(kCatalogRowName);
  if (config.catalog_row == CatalogRow::kExpectedCounts) {
    const auto catalog = ProtectedDistribution::FromProbabilities(config.base.probabilities(), config.n);
    counts.insert(counts.end(), catalog.counts().begin(), catalog.counts().end());
  } else {
    counts.insert(counts.end(), query_counts.begin(), query_counts.end());
  }
  return ContingencyTable(std::move(row_labels), config.base.labels(), std::move(counts));
}

PowerEstimate EstimatePower(const SimulationConfig& config, const TestKind& kind) {
  ValidateConfig(config);
  if (!kind.is_omnibus() && !config.base.contains(*kind.contrast_label())) {
    throw ParityError(ErrorCode::kLabelNotFound, kind.contrast_label()->name());
  }

  enum Outcome : std::uint8_t { kAccept, kReject, kDegenerate };
  std::vector<std::uint8_t> outcomes(config.trials, kAccept);
  std::vector<std::uint64_t> target_queries(config.trials, 0);

  ParallelFor(config.trials, config.threads, [&](std::size_t t) {
    Rng rng(DeriveSeed(config.master_seed, t));
    const ContingencyTable omnibus = SimulateOmnibusTable(config, rng);
    try {
      if (kind.is_omnibus()) {
        outcomes[t] = ChiSquareTest(omnibus, config.alpha).reject ? kReject : kAccept;
        return;
      }
      const ProtectedLabel& label = *kind.contrast_label();
      const auto& rows = omnibus.row_labels();
      const auto row = std::find(rows.begin(), rows.end() - 1, label.name());
      if (row == rows.end() - 1) {
        outcomes[t] = kDegenerate;  // no query carried the label this trial
        return;
      }
      target_queries[t] = omnibus.row_total(static_cast<std::size_t>(row - rows.begin())) / config.k;
      const ContingencyTable contrast = BuildContrastTable(omnibus, label);
      outcomes[t] = ChiSquareTest(contrast, config.alpha).reject ? kReject : kAccept;
    } catch (const ParityError& e) {
      if (e.code() != ErrorCode::kDegenerateTable) throw;
      outcomes[t] = kDegenerate;
    }
  });

  PowerEstimate est;
  est.rr = config.rr;
  est.n = config.n;
  est.trials = config.trials;
  std::uint64_t query_sum = 0;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (outcomes[t] == kReject) ++est.rejections;
    if (outcomes[t] == kDegenerate) ++est.degenerate_trials;
    query_sum += target_queries[t];
  }
  est.power = static_cast<double>(est.rejections) / static_cast<double>(est.trials);
  est.standard_error = std::sqrt(est.power * (1.0 - est.power) / static_cast<double>(est.trials));
  est.mean_target_queries = static_cast<double>(query_sum) / static_cast<double>(est.trials);
  return est;
}

PowerCurve ComputePowerCurve(const SimulationConfig& config, std::span<const double> rr_grid,
                             const TestKind& kind) {
  if (rr_grid.empty()) throw ParityError(ErrorCode::kInvalidArgument, "rr grid is empty");
  for (std::size_t i = 1; i < rr_grid.size(); ++i) {
    if (!(rr_grid[i] > rr_grid[i - 1])) {
      throw ParityError(ErrorCode::kInvalidArgument, "rr grid must be strictly increasing");
    }
  }
  PowerCurve curve{.kind = kind, .n = config.n, .k = config.k, .alpha = config.alpha, .points = {}};
  curve.points.reserve(rr_grid.size());
  for (const double rr : rr_grid) {
    SimulationConfig point = config;
    point.rr = rr;
    curve.points.push_back(EstimatePower(point, kind));
  }
  return curve;
}

std::string_view RrSideName(RrSide side) {
  return side == RrSide::kBelowOne ? "below_one" : "above_one";
}

std::optional<RrSide> ParseRrSide(std::string_view name) {
  if (name == "below_one" || name == "below") return RrSide::kBelowOne;
  if (name == "above_one" || name == "above") return RrSide::kAboveOne;
  return std::nullopt;
}

DetectableRr FindDetectableRr(const SimulationConfig& config, const TestKind& kind,
                              const DetectableRrOptions& options) {
  ValidateConfig(config);
  if (!(options.target_power > config.alpha && options.target_power < 1.0)) {
    throw ParityError(ErrorCode::kInvalidArgument, "target power must lie in (alpha, 1)");
  }
  if (!(options.resolution > 0.0 && options.resolution < 1.0)) {
    throw ParityError(ErrorCode::kInvalidArgument, "resolution must lie in (0, 1)");
  }

  // Grid point i sits at nrr = 1 - i * resolution, i = 1..last.
  double nrr_floor = options.resolution;
  if (options.side == RrSide::kAboveOne && !kind.is_omnibus()) {
    nrr_floor = std::max(nrr_floor, config.base.probability(*kind.contrast_label()));
  }
  const auto last =
      static_cast<std::uint32_t>(std::floor((1.0 - nrr_floor) / options.resolution + 1e-9));
  if (last == 0) {
    throw ParityError(ErrorCode::kUnachievable, "no risk ratio grid point on this side");
  }
  auto nrr_at = [&](std::uint32_t i) { return 1.0 - i * options.resolution; };
  auto rr_at = [&](std::uint32_t i) {
    return options.side == RrSide::kBelowOne ? nrr_at(i) : 1.0 / nrr_at(i);
  };

  std::map<std::uint32_t, PowerEstimate> cache;
  auto estimate = [&](std::uint32_t i) -> const PowerEstimate& {
    auto it = cache.find(i);
    if (it == cache.end()) {
      SimulationConfig point = config;
      point.rr = rr_at(i);
      it = cache.emplace(i, EstimatePower(point, kind)).first;
    }
    return it->second;
  };
  auto detected = [&](std::uint32_t i) {
    const PowerEstimate& e = estimate(i);
    return e.power - e.standard_error > options.target_power;
  };

  if (!detected(last)) {
    throw ParityError(ErrorCode::kUnachievable,
                      "power at nrr " + std::to_string(nrr_at(last)) + " is " +
                          std::to_string(estimate(last).power) + ", below target");
  }
  std::uint32_t lo = 0;  // nrr = 1, never counted as detected
  std::uint32_t hi = last;
  while (hi - lo > 1) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (detected(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return DetectableRr{.rr = rr_at(hi),
                      .nrr = nrr_at(hi),
                      .estimate = estimate(hi),
                      .evaluations = static_cast<std::uint32_t>(cache.size())};
}

}  // namespace parity
