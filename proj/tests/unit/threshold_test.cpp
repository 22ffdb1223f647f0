// Copyright 2026 The teasekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "teasekit/threshold.hpp"

namespace teasekit {
namespace {

using testing::model_of_counts;

TEST(Pareto, Examples) {
  auto p = pareto_sets(model_of_counts({{{"a", 8}, {"b", 1}, {"c", 1}}}), 0.8);
  EXPECT_EQ(p.terms[0], (std::vector<std::string>{"a"}));
  EXPECT_DOUBLE_EQ(p.achieved_coverage[0], 0.8);
  p = pareto_sets(model_of_counts({{{"a", 5}, {"b", 4}, {"c", 1}}}), 0.8);
  EXPECT_EQ(p.terms[0], (std::vector<std::string>{"a", "b"}));
  p = pareto_sets(model_of_counts({{{"solo", 3}}}), 0.8);
  EXPECT_EQ(p.terms[0], (std::vector<std::string>{"solo"}));
  EXPECT_EQ(p.achieved_coverage[0], 1.0);
  EXPECT_TRUE(p.contains(0, "solo"));
  EXPECT_FALSE(p.contains(0, "other"));
}

TEST(Pareto, TiesLexicographic) {
  const auto p = pareto_sets(model_of_counts({{{"d", 1}, {"c", 1}, {"b", 1}, {"a", 1}}}), 0.5);
  EXPECT_EQ(p.terms[0], (std::vector<std::string>{"a", "b"}));
}

TEST(Pareto, Errors) {
  EXPECT_THROW(pareto_sets(model_of_counts({{{"a", 1}}, {}}), 0.8), EmptyDomain);
  EXPECT_THROW(pareto_sets(model_of_counts({{{"a", 1}}}), 1.0), std::invalid_argument);
}

TEST(Pareto, PrefixIsMinimal) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::map<std::string, std::uint64_t>> counts(1 + rng() % 4);
    for (auto& c : counts)
      for (std::size_t t = 0, n = 1 + rng() % 30; t < n; ++t) c["t" + std::to_string(t)] = 1 + rng() % 50;
    const auto model = model_of_counts(counts);
    const auto p = pareto_sets(model, 0.8);
    for (std::size_t d = 0; d < counts.size(); ++d) {
      std::uint64_t sum = 0;
      for (const auto& t : p.terms[d]) sum += counts[d].at(t);
      const double total = static_cast<double>(model.total_terms[d]);
      EXPECT_GE(sum / total, 0.8 - 1e-12);
      EXPECT_LT((sum - counts[d].at(p.terms[d].back())) / total, 0.8);
    }
  }
}

TEST(Grid, Geometric) {
  const auto g = geometric_grid(1e-4, 5e-2, 25);
  ASSERT_EQ(g.size(), 25u);
  EXPECT_EQ(g.front(), 1e-4);
  EXPECT_EQ(g.back(), 5e-2);
  for (std::size_t i = 2; i < g.size(); ++i)
    EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
  EXPECT_EQ(geometric_grid(0.005, 0.01, 1), (std::vector<double>{0.005}));
  EXPECT_THROW(geometric_grid(0.0, 1.0, 3), std::invalid_argument);
}

struct CurveFixture {
  DomainModel model = model_of_counts({{{"freq", 90}, {"rare", 1}, {"mid", 9}}, {{"other", 10}}});
  RelevanceMatrix matrix = build_matrix(model);
  ParetoSet pareto = pareto_sets(model, 0.8);
};

TEST(Curve, NothingQualifiesBelowEveryValue) {
  CurveFixture f;
  const auto c = overlap_ratio_curve({1e-9}, {{"r", 0, {"freq"}}}, f.matrix, f.pareto);
  EXPECT_EQ(c.overlap_ratio[0][0], 0.0);
  EXPECT_TRUE(c.flagged(0, 0));
  EXPECT_TRUE(c.flagged(1, 0));
}

TEST(Curve, RareWordOutsideParetoGivesZero) {
  CurveFixture f;
  const std::vector<ThresholdInput> records = {
      {"r1", 0, {"rare"}}, {"r2", 0, {}}, {"r3", 1, {"other"}}};
  const auto c = overlap_ratio_curve({0.01}, records, f.matrix, f.pareto);
  EXPECT_EQ(c.n_qualifying[0][0], 1u);
  EXPECT_EQ(c.overlap_ratio[0][0], 0.0);
  EXPECT_FALSE(c.flagged(0, 0));
}

TEST(Curve, ParetoSubsetsGiveOne) {
  CurveFixture f;
  const std::vector<ThresholdInput> records = {{"r1", 0, {"freq"}}, {"r2", 0, {"freq", "freq"}}};
  const auto c = overlap_ratio_curve({1.0}, records, f.matrix, f.pareto);
  EXPECT_EQ(c.overlap_ratio[0][0], 1.0);
}

TEST(Curve, QualificationGrowsWithCandidate) {
  CurveFixture f;
  const std::vector<ThresholdInput> records = {
      {"a", 0, {"rare"}}, {"b", 0, {"mid"}}, {"c", 0, {"freq"}}, {"d", 0, {"mid", "freq"}}};
  const auto grid = geometric_grid(1e-4, 1.0, 30);
  const auto c = overlap_ratio_curve(grid, records, f.matrix, f.pareto);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_GE(c.n_qualifying[0][i], c.n_qualifying[0][i - 1]);
  EXPECT_EQ(c.n_qualifying[0].back(), 4u);
  EXPECT_DOUBLE_EQ(c.overlap_ratio[0].back(), 0.25);
  EXPECT_THROW(overlap_ratio_curve({0.5, 0.1}, records, f.matrix, f.pareto), std::invalid_argument);
}

ThresholdCurve curve_of(std::vector<double> candidates, std::vector<std::vector<double>> ratios) {
  ThresholdCurve c;
  c.candidates = std::move(candidates);
  c.overlap_ratio = std::move(ratios);
  for (const auto& row : c.overlap_ratio) c.n_qualifying.emplace_back(row.size(), 1);
  return c;
}

TEST(Select, BoundaryBelowWhichNoOverlap) {
  const auto c = curve_of({0.001, 0.0025, 0.005, 0.01}, {{0, 0, 0, 0.3}, {0, 0, 0, 0.1}});
  EXPECT_EQ(select_threshold(c), 0.005);
}

TEST(Select, FallbackToLeastWorstRatio) {
  const auto c = curve_of({0.001, 0.002, 0.003}, {{0.5, 0.2, 0.2}, {0.1, 0.3, 0.1}});
  EXPECT_EQ(select_threshold(c), 0.003);
  const auto tie = curve_of({0.001, 0.002}, {{0.4, 0.4}});
  EXPECT_EQ(select_threshold(tie), 0.001);
}

TEST(Select, SingleCandidate) {
  EXPECT_EQ(select_threshold(curve_of({0.7}, {{0.9}})), 0.7);
  EXPECT_THROW(select_threshold(curve_of({}, {})), std::invalid_argument);
}

TEST(Select, ZeroAfterOverlapDoesNotCount) {
  const auto c = curve_of({1, 2, 3}, {{0, 0.5, 0}});
  EXPECT_EQ(select_threshold(c), 1.0);
}

TEST(CurveTsv, Layout) {
  const auto c = curve_of({0.5}, {{0.25}, {0}});
  std::ostringstream ss;
  write_curve_tsv(ss, c);
  EXPECT_EQ(ss.str(), "candidate\tdomain\tratio\tn_qualifying\n0.5\t0\t0.25\t1\n0.5\t1\t0\t1\n");
}

}  // namespace
}  // namespace teasekit
