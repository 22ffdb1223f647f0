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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "teasekit/textnorm.hpp"

namespace teasekit {

using DomainId = std::size_t;

// One corpus instance: article, headline and tweet, each kept verbatim next
// to its normalized form.
struct Record {
  std::string id;

  std::string article;
  SentenceSplitArticle article_sentences;
  NormalizedText article_text;

  std::string headline;
  NormalizedText headline_text;

  std::string tweet;
  std::string tweet_clean;
  NormalizedText tweet_text;

  std::optional<DomainId> domain;
  std::vector<std::string> keywords;
  std::optional<std::string> highlight;
  std::optional<std::string> account;
  std::optional<std::string> timestamp;
  std::optional<std::string> url;
};

inline Record make_record(std::string id, std::string article, std::string headline,
                          std::string tweet, const NormConfig& config) {
  Record r;
  r.id = std::move(id);
  r.article = std::move(article);
  r.article_sentences = split_sentences(r.article, config);
  r.article_text = concatenate(r.article_sentences.sentences, 0, r.article_sentences.size());
  r.headline = std::move(headline);
  r.headline_text = normalize(r.headline, config);
  r.tweet = std::move(tweet);
  r.tweet_clean = clean_tweet(r.tweet, config);
  r.tweet_text = normalize(r.tweet_clean, config);
  return r;
}

}  // namespace teasekit
