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

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "teasekit/record.hpp"
#include "teasekit/recognizer.hpp"

namespace teasekit::testing {

struct TeaserCase {
  Record record;
  oracle::NaiveInput naive;
  Stage intended = Stage::Degenerate;
};

inline std::string joined(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

// Builds a record from made-up words, which normalize to themselves.
inline TeaserCase teaser_case(std::string id, const std::vector<std::vector<std::string>>& sentences,
                              const std::vector<std::string>& headline,
                              const std::vector<std::string>& tweet, std::optional<DomainId> domain) {
  TeaserCase c;
  std::string article;
  for (const auto& s : sentences) {
    article += (article.empty() ? "" : " ") + joined(s) + ".";
    c.naive.raw_sentences.push_back(joined(s) + ".");
  }
  c.record = make_record(std::move(id), article, joined(headline), joined(tweet) + " https://t.co/abc",
                         NormConfig{});
  c.record.domain = domain;
  c.naive.headline = joined(headline);
  c.naive.tweet = joined(tweet);
  c.naive.tweet_tokens = tweet;
  c.naive.sentence_tokens = sentences;
  c.naive.domain = domain;
  return c;
}

// dr recomputed straight from per-domain counts.
inline std::function<double(std::size_t, const std::string&)> count_lookup(
    const std::vector<std::map<std::string, std::uint64_t>>& counts) {
  return [counts](std::size_t d, const std::string& term) {
    std::uint64_t total = 0;
    for (const auto& [t, n] : counts[d]) total += n;
    auto it = counts[d].find(term);
    if (it == counts[d].end()) return 0.0;
    std::size_t containing = 0;
    for (const auto& c : counts) containing += c.count(term);
    return static_cast<double>(it->second) / static_cast<double>(total) *
           std::log(static_cast<double>(counts.size()) / static_cast<double>(containing));
  };
}

inline oracle::NaiveStage naive_stage(Stage s) {
  switch (s) {
    case Stage::ExtractiveVsHeadline: return oracle::NaiveStage::Headline;
    case Stage::ExtractiveVsArticle: return oracle::NaiveStage::Article;
    case Stage::AbstractivityLow: return oracle::NaiveStage::Low;
    case Stage::AbstractivityHigh: return oracle::NaiveStage::High;
    case Stage::NotTeasing: return oracle::NaiveStage::NotTeasing;
    case Stage::Accepted: return oracle::NaiveStage::Accepted;
    case Stage::Degenerate: return oracle::NaiveStage::Degenerate;
  }
  return oracle::NaiveStage::Degenerate;
}

// 100 records in domain 0 of a two-domain model, built to leave the
// recognizer at known stages: 37 headline copies, 5 sentence copies,
// 11 too-low, 11 too-high, 13 not teasing and 23 accepted.
struct PruneFixture {
  std::vector<std::map<std::string, std::uint64_t>> counts;
  std::vector<TeaserCase> cases;
  double threshold = 0.005;
};

inline PruneFixture prune_fixture() {
  PruneFixture f;
  const auto a = [](std::size_t i) { return made_up_word(i % 60); };
  const auto b = [](std::size_t i) { return made_up_word(100 + i % 60); };
  const auto rare = [](std::size_t i) { return made_up_word(200 + i % 20); };
  f.counts.resize(2);
  for (std::size_t i = 0; i < 60; ++i) {
    f.counts[0][a(i)] = 100;
    f.counts[0][b(i)] = 100;
  }
  for (std::size_t i = 0; i < 20; ++i) f.counts[0][rare(i)] = 1;
  for (std::size_t i = 0; i < 10; ++i) f.counts[1][made_up_word(300 + i)] = 100;

  const std::pair<Stage, std::size_t> plan[] = {
      {Stage::ExtractiveVsHeadline, 37}, {Stage::ExtractiveVsArticle, 5},
      {Stage::AbstractivityLow, 11},     {Stage::AbstractivityHigh, 11},
      {Stage::NotTeasing, 13},           {Stage::Accepted, 23}};
  std::size_t n = 0;
  for (const auto& [stage, count] : plan) {
    for (std::size_t j = 0; j < count; ++j, ++n) {
      std::vector<std::vector<std::string>> sentences(6);
      for (std::size_t s = 0; s < 6; ++s)
        for (std::size_t w = 0; w < 4; ++w) sentences[s].push_back(a(n + 4 * s + w));
      const std::vector<std::string> headline = {b(3 * n), b(3 * n + 1), b(3 * n + 2)};
      std::vector<std::string> tweet;
      switch (stage) {
        case Stage::ExtractiveVsHeadline: tweet = headline; break;
        case Stage::ExtractiveVsArticle: tweet = sentences[3]; break;
        case Stage::AbstractivityLow:
          for (std::size_t w = 0; w < 5; ++w) tweet.push_back(b(3 * n + 30 + w));
          break;
        case Stage::AbstractivityHigh:
          for (std::size_t s = 0; s < 5; ++s) tweet.push_back(sentences[s][s % 4]);
          break;
        case Stage::NotTeasing:
          tweet = {sentences[1][0], sentences[3][2], b(3 * n + 30), b(3 * n + 31)};
          break;
        default:
          tweet = {sentences[1][0], sentences[3][2], b(3 * n + 30), rare(n)};
          break;
      }
      auto c = teaser_case("p" + std::to_string(n), sentences, headline, tweet, DomainId{0});
      c.intended = stage;
      f.cases.push_back(std::move(c));
    }
  }
  return f;
}

// Random small record over a 30-word vocabulary; tweets are sometimes
// copies of the headline or of a sentence.
inline TeaserCase random_teaser_case(std::mt19937_64& rng, std::size_t domains, std::string id) {
  const auto word = [&] { return made_up_word(rng() % 30); };
  const auto words = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::string> out(lo + rng() % (hi - lo + 1));
    for (auto& w : out) w = word();
    return out;
  };
  std::vector<std::vector<std::string>> sentences(1 + rng() % 8);
  for (auto& s : sentences) s = words(1, 6);
  const auto headline = words(1, 4);
  std::vector<std::string> tweet;
  const auto kind = rng() % 10;
  if (kind < 2) {
    tweet = headline;
  } else if (kind < 3) {
    tweet = sentences[rng() % sentences.size()];
  } else if (kind < 5) {
    const auto& s = sentences[rng() % sentences.size()];
    tweet.assign(s.begin(), s.begin() + 1 + rng() % s.size());
    tweet.push_back(word());
  } else {
    tweet = words(1, 6);
  }
  std::optional<DomainId> domain = rng() % domains;
  if (rng() % 25 == 0) domain = std::nullopt;
  if (rng() % 25 == 0) domain = domains;
  return teaser_case(std::move(id), sentences, headline, tweet, domain);
}

}  // namespace teasekit::testing
