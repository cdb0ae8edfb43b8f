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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parity {

// A value of the protected variable (e.g. "ST3"). Never empty.
class ProtectedLabel {
 public:
  explicit ProtectedLabel(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend auto operator<=>(const ProtectedLabel&, const ProtectedLabel&) = default;
  friend bool operator==(const ProtectedLabel&, const ProtectedLabel&) = default;

 private:
  std::string name_;
};

// Normalized categorical distribution over protected labels. Used for the
// Monte Carlo base distribution and its skewed variants.
struct LabelProbabilities {
  std::vector<ProtectedLabel> labels;
  std::vector<double> probabilities;

  std::size_t size() const noexcept { return labels.size(); }
  std::optional<std::size_t> index_of(const ProtectedLabel& label) const;
  double sum() const;
};

// Label counts over a catalog (P_Z). Labels are kept in lexicographic order
// and are unique; individual counts may be zero but the total may not.
class ProtectedDistribution {
 public:
  using Entry = std::pair<ProtectedLabel, std::uint64_t>;

  explicit ProtectedDistribution(std::vector<Entry> entries);

  const std::vector<ProtectedLabel>& labels() const noexcept { return labels_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return labels_.size(); }

  std::optional<std::size_t> index_of(const ProtectedLabel& label) const;
  bool contains(const ProtectedLabel& label) const { return index_of(label).has_value(); }
  std::uint64_t count(const ProtectedLabel& label) const;
  double probability(const ProtectedLabel& label) const;
  LabelProbabilities probabilities() const;

  // Integer counts for a catalog of `n` items following `probs`: floor of
  // n*p plus largest-remainder rounding so the counts sum to exactly n.
  static ProtectedDistribution FromProbabilities(const LabelProbabilities& probs,
                                                 std::uint64_t n);

 private:
  std::vector<ProtectedLabel> labels_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Skin-tone distribution used for the simulated power study (percent).
ProtectedDistribution ReferenceSkinToneDistribution();

}  // namespace parity
