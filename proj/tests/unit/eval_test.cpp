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
#include "oracles.hpp"
#include "teasekit/eval.hpp"

namespace teasekit {
namespace {

using Words = std::vector<std::string>;

Words words(const std::string& text) {
  Words out;
  for (auto w : split_words(text)) out.emplace_back(w);
  return out;
}

TEST(Rouge, IdentityAndDisjoint) {
  const Words a = words("storm hits the coast tonight");
  const auto same = score_pair(a, a);
  EXPECT_EQ(same.rouge1.f1, 1.0);
  EXPECT_EQ(same.rouge2.f1, 1.0);
  EXPECT_EQ(same.rougeL.f1, 1.0);
  const auto none = score_pair(a, words("quiet inland morning"));
  EXPECT_EQ(none.rouge1.f1, 0.0);
  EXPECT_EQ(none.rouge2.f1, 0.0);
  EXPECT_EQ(none.rougeL.f1, 0.0);
}

TEST(Rouge, HandFixtureCatMat) {
  const auto s = score_pair(words("the cat sat on the mat"), words("the cat lay on the mat"));
  EXPECT_NEAR(s.rouge1.precision, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(s.rouge1.recall, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(s.rouge1.f1, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(s.rouge2.f1, 3.0 / 5.0, 1e-12);
  EXPECT_NEAR(s.rougeL.f1, 5.0 / 6.0, 1e-12);
}

TEST(Rouge, HandFixtureUneven) {
  const auto s = score_pair(words("a b c d"), words("a c e"));
  EXPECT_NEAR(s.rouge1.precision, 0.5, 1e-12);
  EXPECT_NEAR(s.rouge1.recall, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.rouge1.f1, 4.0 / 7.0, 1e-12);
  EXPECT_EQ(s.rouge2.f1, 0.0);
  EXPECT_NEAR(s.rougeL.f1, 4.0 / 7.0, 1e-12);
  const auto sub = rouge_l(words("a b c d"), words("a c e"), RougeLMode::Substring);
  EXPECT_NEAR(sub.f1, 2.0 * 0.25 * (1.0 / 3.0) / (0.25 + 1.0 / 3.0), 1e-12);
}

TEST(Rouge, ClippedCounts) {
  const auto s = rouge_n(words("the the the the"), words("the cat the"), 1);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3.0);
}

TEST(Rouge, EdgeCases) {
  EXPECT_THROW(score_pair(words("a"), Words{}), EmptyReference);
  EXPECT_THROW(rouge_n(words("a b"), words("a"), 2), EmptyReference);
  EXPECT_THROW(rouge_n(words("a"), words("a"), 0), std::invalid_argument);
  const auto empty_candidate = score_pair(Words{}, words("a b"));
  EXPECT_EQ(empty_candidate.rouge1.f1, 0.0);
  EXPECT_EQ(empty_candidate.rougeL.f1, 0.0);
  const auto one = score_pair(words("a"), words("a"));
  EXPECT_EQ(one.rouge1.f1, 1.0);
  EXPECT_EQ(one.rouge2.f1, 0.0);
}

TEST(Rouge, RandomAgainstOracles) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = testing::random_tokens(rng, 8, 5, 1);
    const auto b = testing::random_tokens(rng, 8, 5, 1);
    const std::size_t lcs = oracle::lcs_brute(a, b);
    EXPECT_EQ(lcs_length(a, b), lcs);
    const auto l = rouge_l(a, b);
    EXPECT_NEAR(l.f1, oracle::f1(double(lcs) / a.size(), double(lcs) / b.size()), 1e-12);
    for (std::size_t n : {1u, 2u}) {
      if (b.size() < n) continue;
      const auto r = rouge_n(a, b, n);
      const double o = static_cast<double>(oracle::clipped_overlap(a, b, n));
      EXPECT_NEAR(r.recall, o / double(b.size() - n + 1), 1e-12);
      if (a.size() >= n) {
        EXPECT_NEAR(r.precision, o / double(a.size() - n + 1), 1e-12);
      }
    }
  }
}

TEST(Aggregate, MeanAndOrderFree) {
  std::vector<TokenPair> pairs = {{words("a b"), words("a b")}, {words("x"), words("a b")}};
  const auto agg = evaluate_corpus(pairs);
  EXPECT_DOUBLE_EQ(agg.rouge1.f1, 0.5);
  std::reverse(pairs.begin(), pairs.end());
  EXPECT_EQ(evaluate_corpus(pairs).rouge1.f1, agg.rouge1.f1);
  EXPECT_THROW(evaluate_corpus(std::vector<TokenPair>{}), EmptyCorpus);
}

Record article_record(std::string article, std::string tweet) {
  return make_record("r", std::move(article), "Headline", std::move(tweet), NormConfig{});
}

TEST(Baselines, Lead) {
  const auto r = article_record("One two three. Four five six seven. Eight.", "x");
  EXPECT_EQ(lead_baseline(r, 5).text, "One two three. Four five");
  EXPECT_EQ(lead_baseline(r, 100).words, 8u);
  EXPECT_TRUE(lead_baseline(r, 0).empty);
  EXPECT_THROW(lead_baseline(article_record("", "x"), 5), EmptyArticle);
}

TEST(Baselines, Prominent) {
  const auto r = article_record("Cats purr loudly. Dogs bark at night. Birds sing early.", "dogs bark");
  EXPECT_EQ(prominent_baseline(r, 1, 1), "Dogs bark at night.");
  EXPECT_EQ(prominent_baseline(r, 5, 1), "Cats purr loudly.");
  EXPECT_THROW(prominent_baseline(article_record("", "x")), EmptyArticle);
}

}  // namespace
}  // namespace teasekit
