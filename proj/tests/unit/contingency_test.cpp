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

#include <gtest/gtest.h>

#include <algorithm>

#include "../common/test_support.hpp"
#include "parity/chi_square.hpp"
#include "parity/contingency.hpp"
#include "parity/error.hpp"

namespace parity {
namespace {

using testing::Catalog;
using testing::L;
using testing::LogFromCounts;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const ParityError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ParityError thrown";
  return ErrorCode::kInvalidArgument;
}

// Row totals 600, 900 and 2030 share the factor K = 10.
RecommendationLog ThreeLabelLog() {
  return LogFromCounts({"A", "B", "C"}, {"A", "B", "C"},
                       {{300, 50, 250}, {40, 600, 260}, {80, 150, 1800}}, 10);
}

TEST(ProtectedDistribution, SortsAndCounts) {
  const auto d = Catalog({{"b", 30}, {"a", 10}, {"c", 60}});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.labels()[0], L("a"));
  EXPECT_EQ(d.total(), 100u);
  EXPECT_EQ(d.count(L("c")), 60u);
  EXPECT_DOUBLE_EQ(d.probability(L("b")), 0.3);
  EXPECT_FALSE(d.contains(L("z")));
  EXPECT_EQ(CodeOf([&] { d.count(L("z")); }), ErrorCode::kLabelNotFound);
  EXPECT_EQ(CodeOf([] { Catalog({{"a", 1}, {"a", 2}}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Catalog({{"a", 0}}); }), ErrorCode::kInvalidArgument);
  EXPECT_THROW(ProtectedLabel(""), ParityError);
}

TEST(ProtectedDistribution, ReferenceSkinTones) {
  const auto d = ReferenceSkinToneDistribution();
  const auto p = d.probabilities();
  ASSERT_EQ(p.size(), 6u);
  const std::vector<double> expected = {0.05, 0.15, 0.15, 0.25, 0.30, 0.10};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(p.labels[i].name(), "ST" + std::to_string(i + 1));
    EXPECT_DOUBLE_EQ(p.probabilities[i], expected[i]);
  }
}

TEST(ProtectedDistribution, FromProbabilitiesSumsToN) {
  const auto p = ReferenceSkinToneDistribution().probabilities();
  for (const std::uint64_t n : {1u, 7u, 99u, 100u, 1000u, 1001u}) {
    const auto d = ProtectedDistribution::FromProbabilities(p, n);
    EXPECT_EQ(d.total(), n);
  }
  const auto d = ProtectedDistribution::FromProbabilities(p, 1000);
  EXPECT_EQ(d.counts(), (std::vector<std::uint64_t>{50, 150, 150, 250, 300, 100}));
}

TEST(OmnibusTable, RoundTripsHandTable) {
  const auto table = BuildOmnibusTable(ThreeLabelLog(), Catalog({{"A", 100}, {"B", 150}, {"C", 350}}), TopK{10});
  ASSERT_EQ(table.rows(), 4u);
  ASSERT_EQ(table.cols(), 3u);
  EXPECT_EQ(table.row_labels(), (std::vector<std::string>{"A", "B", "C", "catalog"}));
  EXPECT_EQ(table.counts(), (std::vector<std::uint64_t>{300, 50, 250, 40, 600, 260, 80, 150, 1800,
                                                        100, 150, 350}));
  const auto test = ChiSquareTest(table, 0.01);
  EXPECT_EQ(test.df, 6u);
  EXPECT_TRUE(test.reject);
}

TEST(OmnibusTable, SixLabelsGiveThirtyDegreesOfFreedom) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::uint64_t>> rows;
  for (int i = 1; i <= 6; ++i) labels.push_back("ST" + std::to_string(i));
  for (int i = 0; i < 6; ++i) rows.push_back({6, 6, 6, 6, 6, 6 + 6 * static_cast<std::uint64_t>(i)});
  const auto log = LogFromCounts(labels, labels, rows, 6);
  const auto table = BuildOmnibusTable(log, ReferenceSkinToneDistribution());
  EXPECT_EQ(table.rows(), 7u);
  EXPECT_EQ(table.cols(), 6u);
  EXPECT_EQ(ChiSquareTest(table, 0.01).df, 30u);
}

TEST(OmnibusTable, RankFilters) {
  RecommendationLog log;
  log.records.push_back({.query_id = "q1",
                         .query_label = L("A"),
                         .results = {{1, "x", L("A")}, {2, "y", L("B")}, {3, "z", L("B")}}});
  const auto catalog = Catalog({{"A", 1}, {"B", 1}});
  EXPECT_EQ(BuildOmnibusTable(log, catalog, TopK{2}).counts(),
            (std::vector<std::uint64_t>{1, 1, 1, 1}));
  EXPECT_EQ(BuildOmnibusTable(log, catalog, TopK{3}).counts(),
            (std::vector<std::uint64_t>{1, 2, 1, 1}));
  EXPECT_EQ(BuildOmnibusTable(log, catalog, ExactRank{3}).counts(),
            (std::vector<std::uint64_t>{0, 1, 1, 1}));
  EXPECT_EQ(CodeOf([&] { BuildOmnibusTable(log, catalog, TopK{4}); }),
            ErrorCode::kInsufficientRankDepth);
  EXPECT_EQ(CodeOf([&] { BuildOmnibusTable(log, catalog, ExactRank{4}); }),
            ErrorCode::kInsufficientRankDepth);
}

TEST(OmnibusTable, Errors) {
  const auto catalog = Catalog({{"A", 1}, {"B", 1}});
  EXPECT_EQ(CodeOf([&] { BuildOmnibusTable(RecommendationLog{}, catalog); }), ErrorCode::kEmptyLog);
  RecommendationLog log;
  log.records.push_back({.query_id = "q", .query_label = L("A"), .results = {{1, "x", L("Z")}}});
  EXPECT_EQ(CodeOf([&] { BuildOmnibusTable(log, catalog, TopK{1}); }), ErrorCode::kUnknownLabel);
  log.records[0].query_label = L("Z");
  log.records[0].results[0].result_label = L("A");
  EXPECT_EQ(CodeOf([&] { BuildOmnibusTable(log, catalog, TopK{1}); }), ErrorCode::kUnknownLabel);
}

TEST(OmnibusTable, SingleColumnIsReturnedAsIs) {
  RecommendationLog log;
  log.records.push_back({.query_id = "q", .query_label = L("A"), .results = {{1, "x", L("A")}}});
  const auto table = BuildOmnibusTable(log, Catalog({{"A", 5}}), TopK{1});
  EXPECT_EQ(table.rows(), 2u);
  EXPECT_EQ(table.cols(), 1u);
  EXPECT_EQ(CodeOf([&] { ChiSquareTest(table, 0.01); }), ErrorCode::kDegenerateTable);
}

TEST(ContrastTable, AggregatesRowsAgainstCatalog) {
  const auto omnibus = BuildOmnibusTable(ThreeLabelLog(), Catalog({{"A", 100}, {"B", 150}, {"C", 350}}), TopK{10});
  const auto a = BuildContrastTable(omnibus, L("A"));
  EXPECT_EQ(a.counts(), (std::vector<std::uint64_t>{300, 300, 100, 500}));
  EXPECT_EQ(a.row_labels(), (std::vector<std::string>{"A", "catalog"}));
  EXPECT_EQ(a.col_labels()[0], L("A"));
  const auto b = BuildContrastTable(omnibus, L("B"));
  EXPECT_EQ(b.counts(), (std::vector<std::uint64_t>{600, 300, 150, 450}));
  EXPECT_EQ(ChiSquareTest(a, 0.01).df, 1u);
  for (const auto& label : {L("A"), L("B"), L("C")}) {
    const auto c = BuildContrastTable(omnibus, label);
    const auto& names = omnibus.row_labels();
    const auto row = static_cast<std::size_t>(
        std::find(names.begin(), names.end(), label.name()) - names.begin());
    EXPECT_EQ(c.row_total(0), omnibus.row_total(row));
    EXPECT_EQ(c.row_total(1), omnibus.row_total(omnibus.rows() - 1));
  }
}

TEST(ContrastTable, QueryRowEntirelyInLabel) {
  const auto log = LogFromCounts({"A"}, {"A", "B", "C"}, {{600, 0, 0}}, 6);
  const auto omnibus = BuildOmnibusTable(log, Catalog({{"A", 100}, {"B", 150}, {"C", 350}}));
  EXPECT_EQ(BuildContrastTable(omnibus, L("A")).counts(),
            (std::vector<std::uint64_t>{600, 0, 100, 500}));
}

TEST(ContrastTable, LabelNotFound) {
  const auto log = LogFromCounts({"A"}, {"A", "B"}, {{6, 6}}, 6);
  const auto omnibus = BuildOmnibusTable(log, Catalog({{"A", 1}, {"B", 1}}));
  EXPECT_EQ(CodeOf([&] { BuildContrastTable(omnibus, L("B")); }), ErrorCode::kLabelNotFound);
  EXPECT_EQ(CodeOf([&] { BuildContrastTable(omnibus, L("Q")); }), ErrorCode::kLabelNotFound);
  EXPECT_EQ(CodeOf([&] { BuildContrastTable(omnibus, L("catalog")); }), ErrorCode::kLabelNotFound);
}

TEST(ValidateRanks, RejectsGapsAndDisorder) {
  RecommendationLog log;
  log.records.push_back(
      {.query_id = "q", .query_label = L("A"), .results = {{1, "x", L("A")}, {3, "y", L("A")}}});
  EXPECT_THROW(ValidateRanks(log), ParityError);
  log.records[0].results[1].rank = 2;
  EXPECT_NO_THROW(ValidateRanks(log));
}

}  // namespace
}  // namespace parity
