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

#include "parity/labels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parity/error.hpp"

namespace parity {

ProtectedLabel::ProtectedLabel(std::string name) : name_(std::move(name)) {
  if (name_.empty()) {
    throw ParityError(ErrorCode::kInvalidArgument, "protected label must be non-empty");
  }
}

std::optional<std::size_t> LabelProbabilities::index_of(const ProtectedLabel& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

double LabelProbabilities::sum() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

ProtectedDistribution::ProtectedDistribution(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].first == entries[i - 1].first) {
      throw ParityError(ErrorCode::kInvalidArgument,
                        "duplicate label '" + entries[i].first.name() + "'");
    }
  }
  labels_.reserve(entries.size());
  counts_.reserve(entries.size());
  for (auto& [label, count] : entries) {
    labels_.push_back(std::move(label));
    counts_.push_back(count);
    total_ += count;
  }
  if (total_ == 0) {
    throw ParityError(ErrorCode::kInvalidArgument, "distribution total count must be positive");
  }
}

std::optional<std::size_t> ProtectedDistribution::index_of(const ProtectedLabel& label) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::uint64_t ProtectedDistribution::count(const ProtectedLabel& label) const {
  const auto idx = index_of(label);
  if (!idx) throw ParityError(ErrorCode::kLabelNotFound, label.name());
  return counts_[*idx];
}

double ProtectedDistribution::probability(const ProtectedLabel& label) const {
  return static_cast<double>(count(label)) / static_cast<double>(total_);
}

LabelProbabilities ProtectedDistribution::probabilities() const {
  LabelProbabilities out;
  out.labels = labels_;
  out.probabilities.reserve(counts_.size());
  const double total = static_cast<double>(total_);
  for (const auto c : counts_) out.probabilities.push_back(static_cast<double>(c) / total);
  return out;
}

ProtectedDistribution ProtectedDistribution::FromProbabilities(const LabelProbabilities& probs,
                                                               std::uint64_t n) {
  if (probs.labels.size() != probs.probabilities.size() || probs.labels.empty()) {
    throw ParityError(ErrorCode::kInvalidArgument, "malformed label probabilities");
  }
  const double total = probs.sum();
  std::vector<std::uint64_t> counts(probs.size());
  std::vector<double> remainders(probs.size());
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double exact = static_cast<double>(n) * probs.probabilities[i] / total;
    counts[i] = static_cast<std::uint64_t>(std::floor(exact));
    remainders[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  // Ties go to the earlier label so the rounding is deterministic.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) counts[order[i % order.size()]] += 1;

  std::vector<Entry> entries;
  entries.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) entries.emplace_back(probs.labels[i], counts[i]);
  return ProtectedDistribution(std::move(entries));
}

ProtectedDistribution ReferenceSkinToneDistribution() {
  return ProtectedDistribution({{ProtectedLabel("ST1"), 5},
                                {ProtectedLabel("ST2"), 15},
                                {ProtectedLabel("ST3"), 15},
                                {ProtectedLabel("ST4"), 25},
                                {ProtectedLabel("ST5"), 30},
                                {ProtectedLabel("ST6"), 10}});
}

}  // namespace parity
