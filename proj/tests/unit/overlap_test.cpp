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

#include "oracles.hpp"
#include "fixtures.hpp"
#include "teasekit/overlap.hpp"

namespace teasekit {
namespace {

using testing::article_of;
using testing::text_of;

TEST(PercMatch, IdentityAndDisjoint) {
  const auto a = text_of({"a", "b", "c"});
  EXPECT_EQ(perc_match(a, a), 1.0);
  EXPECT_EQ(perc_match(a, text_of({"x", "y"})), 0.0);
}

TEST(PercMatch, HandFixture) {
  EXPECT_DOUBLE_EQ(perc_match(text_of({"a", "b", "c", "d"}), text_of({"b", "d", "e"})), 0.5);
}

TEST(PercMatch, EmptyFirstArgumentThrows) {
  EXPECT_THROW(perc_match(text_of({}), text_of({"a"})), EmptyReference);
  EXPECT_EQ(perc_match(text_of({"a"}), text_of({})), 0.0);
}

TEST(PercMatch, DuplicatesCountOnce) {
  EXPECT_DOUBLE_EQ(perc_match(text_of({"a", "a", "b"}), text_of({"a"})), 0.5);
}

TEST(PercMatch, ScaleFreeAndMonotone) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto x1 = testing::random_tokens(rng, 8, 12, 1);
    auto x2 = testing::random_tokens(rng, 8, 12);
    const double base = perc_match(text_of(x1), text_of(x2));
    auto padded = x2;
    if (!x2.empty()) padded.push_back(x2.front());
    EXPECT_EQ(perc_match(text_of(x1), text_of(padded)), base);
    auto grown = x2;
    grown.push_back(x1[rng() % x1.size()]);
    EXPECT_GE(perc_match(text_of(x1), text_of(grown)), base);
  }
}

TEST(Window, Counts) {
  std::vector<std::vector<std::string>> s(7, {"w"});
  EXPECT_EQ(window_article(article_of(s), 5, 1).windows.size(), 3u);
  s.resize(5);
  EXPECT_EQ(window_article(article_of(s), 5, 1).windows.size(), 1u);
  s.resize(1);
  EXPECT_EQ(window_article(article_of(s), 5, 1).windows.size(), 1u);
  s.assign(10, {"w"});
  EXPECT_EQ(window_article(article_of(s), 3, 2).windows.size(), 4u);
  EXPECT_EQ(window_article(article_of({}), 5, 1).windows.size(), 1u);
}

TEST(Window, CoversSentenceRanges) {
  const auto w = window_article(article_of({{"a"}, {"b"}, {"c"}, {"d"}}), 2, 1);
  ASSERT_EQ(w.windows.size(), 3u);
  EXPECT_EQ(w.windows[1].tokens, (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(w.first_sentence, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Window, RejectsZeroSizes) {
  EXPECT_THROW(window_article(article_of({{"a"}}), 0, 1), std::invalid_argument);
  EXPECT_THROW(window_article(article_of({{"a"}}), 1, 0), std::invalid_argument);
}

TEST(Prominent, PlantedMaximum) {
  const auto w = window_article(article_of({{"a", "b"}, {"c"}, {"d"}}), 1, 1);
  const auto [section, profile] = prominent_section(text_of({"a", "b"}), w);
  EXPECT_EQ(section.window_index, 0u);
  EXPECT_EQ(section.score, 1.0);
  EXPECT_EQ(profile.scores, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(Prominent, TiesGoToFirstWindow) {
  const auto w = window_article(article_of({{"a"}, {"a"}, {"a"}}), 1, 1);
  EXPECT_EQ(prominent_section(text_of({"a", "z"}), w).first.window_index, 0u);
}

TEST(Prominent, ThreeWindowFixture) {
  // Shortcut {a,b,c,d}: window 0 shares {a}, window 1 {a,b,c}, window 2 {b,c}.
  const auto w3 = window_article(article_of({{"a"}, {"b", "c", "a"}, {"b", "c"}}), 1, 1);
  const auto [section, profile] = prominent_section(text_of({"a", "b", "c", "d"}), w3);
  EXPECT_EQ(profile.scores, (std::vector<double>{0.25, 0.75, 0.5}));
  EXPECT_EQ(section.window_index, 1u);
  EXPECT_EQ(section.score, 0.75);
}

TEST(Prominent, ScoreIsProfileMaximum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<std::string>> sentences(1 + rng() % 10);
    for (auto& s : sentences) s = testing::random_tokens(rng, 8, 15);
    const auto shortcut = testing::random_tokens(rng, 6, 15, 1);
    const auto w = window_article(article_of(sentences), 5, 1);
    const auto [section, profile] = prominent_section(text_of(shortcut), w);
    EXPECT_EQ(section.score, *std::max_element(profile.scores.begin(), profile.scores.end()));
    const auto best = oracle::prominent(shortcut, sentences, 5, 1);
    EXPECT_EQ(section.window_index, best.index);
    EXPECT_EQ(section.score, best.score);
  }
}

TEST(Prominent, EmptyShortcutThrows) {
  const auto w = window_article(article_of({{"a"}}), 5, 1);
  EXPECT_THROW(prominent_section(text_of({}), w), EmptyReference);
}

TEST(Abstractivity, BoundsAreInclusive) {
  EXPECT_EQ(abstractivity_class(0.2, 0.2, 0.8), Abstractivity::Abstractive);
  EXPECT_EQ(abstractivity_class(0.8, 0.2, 0.8), Abstractivity::Abstractive);
  EXPECT_EQ(abstractivity_class(0.81, 0.2, 0.8), Abstractivity::TooHigh);
  EXPECT_EQ(abstractivity_class(0.19, 0.2, 0.8), Abstractivity::TooLow);
  EXPECT_EQ(abstractivity_class(0.5), Abstractivity::Abstractive);
  EXPECT_THROW(abstractivity_class(0.5, 0.8, 0.2), std::invalid_argument);
}

}  // namespace
}  // namespace teasekit
