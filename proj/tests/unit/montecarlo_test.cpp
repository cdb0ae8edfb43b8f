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

#include <cmath>
#include <random>

#include "../common/test_support.hpp"
#include "parity/contingency.hpp"
#include "parity/error.hpp"
#include "parity/montecarlo.hpp"

namespace parity {
namespace {

using testing::L;

LabelProbabilities Reference() { return ReferenceSkinToneDistribution().probabilities(); }

TEST(Seeding, SplitMixIsStable) {
  // First outputs of the splitmix64 generator seeded with 0.
  EXPECT_EQ(SplitMix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = UniformUnit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SkewDistribution, HandWorkedDarkestTone) {
  const auto skewed = SkewDistribution(Reference(), L("ST1"), 2.0);
  const double scale = 0.9 / 0.95;
  EXPECT_NEAR(skewed.probabilities[0], 0.10, 1e-15);
  EXPECT_NEAR(skewed.probabilities[1], 0.15 * scale, 1e-15);
  EXPECT_NEAR(skewed.probabilities[1], 0.142105263157894, 1e-14);
  EXPECT_NEAR(skewed.probabilities[4], 0.284210526315789, 1e-14);
  EXPECT_NEAR(skewed.sum(), 1.0, 1e-12);
}

TEST(SkewDistribution, IdentityAtOne) {
  const auto base = Reference();
  for (const auto& label : base.labels) {
    const auto skewed = SkewDistribution(base, label, 1.0);
    EXPECT_EQ(skewed.probabilities, base.probabilities);
    EXPECT_EQ(skewed.labels, base.labels);
  }
}

TEST(SkewDistribution, Clamps) {
  const auto skewed = SkewDistribution(Reference(), L("ST5"), 4.0);
  for (std::size_t i = 0; i < skewed.size(); ++i) {
    EXPECT_EQ(skewed.probabilities[i], i == 4 ? 1.0 : 0.0);
  }
}

TEST(SkewDistribution, Fuzz) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t m = 2 + gen() % 10;
    std::vector<double> raw(m);
    double total = 0.0;
    for (auto& v : raw) total += (v = u(gen) + 1e-6);
    LabelProbabilities base;
    for (std::size_t i = 0; i < m; ++i) {
      base.labels.emplace_back("z" + std::to_string(i));
      base.probabilities.push_back(raw[i] / total);
    }
    const std::size_t target = gen() % m;
    const double rr = std::exp(u(gen) * 8.0 - 4.0);
    const auto skewed = SkewDistribution(base, base.labels[target], rr);
    ASSERT_NEAR(skewed.sum(), 1.0, 1e-12);
    for (const double p : skewed.probabilities) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
    }
    ASSERT_DOUBLE_EQ(skewed.probabilities[target], std::min(1.0, rr * base.probabilities[target]));
  }
}

TEST(SkewDistribution, Errors) {
  EXPECT_THROW(SkewDistribution(Reference(), L("ST9"), 2.0), ParityError);
  EXPECT_THROW(SkewDistribution(Reference(), L("ST1"), 0.0), ParityError);
}

TEST(TestKind, Parse) {
  EXPECT_TRUE(TestKind::Parse("omnibus").is_omnibus());
  const auto c = TestKind::Parse("contrast:ST3");
  ASSERT_FALSE(c.is_omnibus());
  EXPECT_EQ(*c.contrast_label(), L("ST3"));
  EXPECT_EQ(c.name(), "contrast:ST3");
  EXPECT_THROW(TestKind::Parse("contrast:"), ParityError);
  EXPECT_THROW(TestKind::Parse("pairwise"), ParityError);
}

TEST(GenerateLog, ShapeAndDeterminism) {
  SimulationConfig config;
  config.n = 100;
  config.rr = 2.0;
  Rng a(DeriveSeed(7, 0));
  Rng b(DeriveSeed(7, 0));
  const auto log = GenerateLog(config, a);
  EXPECT_EQ(log, GenerateLog(config, b));
  ASSERT_EQ(log.size(), 100u);
  EXPECT_EQ(log.records[3].query_id, "q3");
  ASSERT_EQ(log.records[3].results.size(), 6u);
  EXPECT_EQ(log.records[3].results[5].result_id, "r3_6");
  EXPECT_EQ(log.records[3].results[5].rank, 6u);
  Rng c(DeriveSeed(8, 0));
  EXPECT_NE(log, GenerateLog(config, c));
}

TEST(SimulateOmnibusTable, MatchesBuilderOnGeneratedLog) {
  for (const auto row : {CatalogRow::kRealizedQueries, CatalogRow::kExpectedCounts}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SimulationConfig config;
      config.n = 40 + seed * 7;
      config.rr = 0.5 + 0.1 * static_cast<double>(seed);
      config.k = 1 + static_cast<std::uint32_t>(seed % 6);
      config.catalog_row = row;
      Rng a(seed);
      Rng b(seed);
      const auto log = GenerateLog(config, a);
      const auto expected =
          BuildOmnibusTable(log, SimulatedCatalog(config, log), TopK{config.k});
      EXPECT_EQ(SimulateOmnibusTable(config, b), expected);
    }
  }
}

TEST(GenerateLog, RealizedRiskRatioConverges) {
  // n * k = 60,000 recommendations. Checked on the two largest labels, where
  // the binomial noise of the same-label share sits well inside 2%; the last
  // ST5 case is clamped at 1 / P(ST5).
  struct Case {
    const char* label;
    double rr;
  };
  SimulationConfig config;
  config.n = 10000;
  config.k = 6;
  for (const auto& [name, rr] : std::vector<Case>{
           {"ST4", 2.0}, {"ST4", 3.0}, {"ST5", 2.0}, {"ST5", 3.0}, {"ST5", 4.0}}) {
    config.rr = rr;
    Rng rng(DeriveSeed(2024, static_cast<std::uint64_t>(rr * 10)));
    const auto log = GenerateLog(config, rng);
    const auto table = BuildOmnibusTable(log, config.base, TopK{6});
    const ProtectedLabel label(name);
    const double p = config.base.probability(label);
    const auto contrast = BuildContrastTable(table, label);
    const double share =
        static_cast<double>(contrast.at(0, 0)) / static_cast<double>(contrast.row_total(0));
    const double expected = std::min(rr, 1.0 / p);
    EXPECT_NEAR(share / p, expected, 0.02 * expected) << name << " rr=" << rr;
  }
}

TEST(GenerateLog, UnbiasedGeneratorMatchesBase) {
  SimulationConfig config;
  config.n = 20000;
  Rng rng(5);
  const auto log = GenerateLog(config, rng);
  std::vector<double> counts(6, 0.0);
  for (const auto& record : log.records) {
    for (const auto& item : record.results) counts[*config.base.index_of(item.result_label)] += 1;
  }
  const double total = 120000.0;
  for (std::size_t i = 0; i < 6; ++i) {
    const double p = config.base.probabilities().probabilities[i];
    EXPECT_NEAR(counts[i] / total, p, 4.0 * std::sqrt(p * (1 - p) / total));
  }
}

TEST(EstimatePower, DeterministicAcrossThreadCounts) {
  SimulationConfig config;
  config.n = 200;
  config.rr = 0.8;
  config.trials = 200;
  config.threads = 1;
  const auto one = EstimatePower(config, TestKind::Omnibus());
  config.threads = 7;
  const auto seven = EstimatePower(config, TestKind::Omnibus());
  EXPECT_EQ(one.rejections, seven.rejections);
  EXPECT_EQ(one.degenerate_trials, seven.degenerate_trials);
  const auto contrast1 = EstimatePower(config, TestKind::Contrast(L("ST1")));
  config.threads = 2;
  const auto contrast2 = EstimatePower(config, TestKind::Contrast(L("ST1")));
  EXPECT_EQ(contrast1.rejections, contrast2.rejections);
  EXPECT_EQ(contrast1.mean_target_queries, contrast2.mean_target_queries);
}

TEST(EstimatePower, CalibratedUnderNull) {
  for (const std::uint64_t n : {100u, 250u, 1000u}) {
    SimulationConfig config;
    config.n = n;
    config.trials = 1000;
    const auto est = EstimatePower(config, TestKind::Omnibus());
    EXPECT_GE(est.power, 0.003) << "n=" << n;
    EXPECT_LE(est.power, 0.025) << "n=" << n;
    EXPECT_NEAR(est.standard_error, std::sqrt(est.power * (1 - est.power) / 1000.0), 1e-15);
    EXPECT_EQ(est.rejections, static_cast<std::uint32_t>(std::lround(est.power * 1000)));
  }
}

TEST(EstimatePower, LargeBiasIsDetected) {
  SimulationConfig config;
  config.n = 1000;
  config.trials = 300;
  for (const double rr : {0.1, 10.0}) {
    config.rr = rr;
    EXPECT_GE(EstimatePower(config, TestKind::Omnibus()).power, 0.99) << "rr=" << rr;
  }
}

TEST(EstimatePower, ContrastReportsRealizedQueries) {
  SimulationConfig config;
  config.n = 400;
  config.trials = 100;
  const auto est = EstimatePower(config, TestKind::Contrast(L("ST5")));
  EXPECT_NEAR(est.mean_target_queries, 120.0, 10.0);
  EXPECT_THROW(EstimatePower(config, TestKind::Contrast(L("nope"))), ParityError);
}

TEST(EstimatePower, MissingContrastLabelCountsAsDegenerate) {
  SimulationConfig config;
  config.n = 5;
  config.trials = 200;
  const auto est = EstimatePower(config, TestKind::Contrast(L("ST1")));
  // P(no ST1 among 5 queries) = 0.95^5, about 0.77.
  EXPECT_GT(est.degenerate_trials, 120u);
  EXPECT_LE(est.rejections + est.degenerate_trials, est.trials);
}

TEST(PowerCurve, ValidatesGrid) {
  SimulationConfig config;
  config.n = 50;
  config.trials = 10;
  const std::vector<double> bad = {1.0, 0.5};
  EXPECT_THROW(ComputePowerCurve(config, bad, TestKind::Omnibus()), ParityError);
  const std::vector<double> good = {0.5, 1.0, 2.0};
  const auto curve = ComputePowerCurve(config, good, TestKind::Omnibus());
  ASSERT_EQ(curve.points.size(), 3u);
  EXPECT_EQ(curve.points[2].rr, 2.0);
  EXPECT_EQ(curve.n, 50u);
}

TEST(PowerCurve, MinimumAtParity) {
  SimulationConfig config;
  config.n = 250;
  config.trials = 400;
  const std::vector<double> grid = {0.5, 0.7, 1.0, 1.0 / 0.7, 2.0};
  const auto curve = ComputePowerCurve(config, grid, TestKind::Omnibus());
  for (const auto& p : curve.points) EXPECT_GE(p.power, curve.points[2].power);
}

TEST(DetectableRr, RareLabelNeedsLargerCatalog) {
  // Smallest catalog on a doubling grid reaching 80% power at nrr = 0.5.
  auto needed = [](const char* label) {
    for (std::uint64_t n = 50; n <= 6400; n *= 2) {
      SimulationConfig config;
      config.n = n;
      config.rr = 0.5;
      config.trials = 200;
      if (EstimatePower(config, TestKind::Contrast(L(label))).power >= 0.8) return n;
    }
    return std::uint64_t{1} << 40;
  };
  const auto rare = needed("ST1");
  const auto common = needed("ST5");
  EXPECT_GT(rare, common);
  EXPECT_LE(common, 6400u);
}

TEST(DetectableRr, FindsGridPointAboveTarget) {
  SimulationConfig config;
  config.n = 500;
  config.trials = 200;
  const auto found = FindDetectableRr(config, TestKind::Omnibus(), {.side = RrSide::kAboveOne});
  EXPECT_GT(found.estimate.power - found.estimate.standard_error, 0.8);
  EXPECT_NEAR(found.rr, 1.0 / found.nrr, 1e-12);
  EXPECT_NEAR(found.nrr * 100.0, std::round(found.nrr * 100.0), 1e-9);
  // The next grid point toward parity falls short.
  SimulationConfig closer = config;
  closer.rr = 1.0 / (found.nrr + 0.01);
  const auto est = EstimatePower(closer, TestKind::Omnibus());
  EXPECT_LE(est.power - est.standard_error, 0.8);
}

TEST(DetectableRr, AboveOneContrastCappedByCatalogShare) {
  SimulationConfig config;
  config.n = 5;
  config.trials = 200;
  // With 5 queries, no ST5 query at all happens 17% of the time, so power
  // stays below 0.99 even at the cap rr = 1 / P(ST5).
  try {
    FindDetectableRr(config, TestKind::Contrast(L("ST5")),
                     {.target_power = 0.99, .side = RrSide::kAboveOne});
    FAIL();
  } catch (const ParityError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnachievable);
  }
}

TEST(DetectableRr, TargetJustAboveAlphaIsNearParity) {
  SimulationConfig config;
  config.n = 1000;
  config.trials = 400;
  const auto found = FindDetectableRr(config, TestKind::Omnibus(), {.target_power = 0.011});
  EXPECT_GE(found.nrr, 0.9);
  EXPECT_LT(found.nrr, 1.0);
}

TEST(DetectableRr, ValidatesOptions) {
  SimulationConfig config;
  EXPECT_THROW(FindDetectableRr(config, TestKind::Omnibus(), {.target_power = 0.005}), ParityError);
  EXPECT_THROW(FindDetectableRr(config, TestKind::Omnibus(), {.resolution = 0.0}), ParityError);
}

TEST(SimulationConfig, Validation) {
  SimulationConfig config;
  config.n = 0;
  EXPECT_THROW(ValidateConfig(config), ParityError);
  config.n = 10;
  config.rr = -1.0;
  EXPECT_THROW(ValidateConfig(config), ParityError);
  config.rr = 1.0;
  config.alpha = 1.0;
  EXPECT_THROW(ValidateConfig(config), ParityError);
}

}  // namespace
}  // namespace parity
