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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "teasekit/random.hpp"
#include "teasekit/recognizer.hpp"

namespace teasekit {

// Generator for corpora with known structure: disjoint per-domain
// vocabularies, a word pool shared by every domain, and tweets built to
// land in a chosen recognizer stage.
struct SyntheticSpec {
  std::size_t records = 1000;
  std::size_t domains = 8;
  std::size_t domain_vocabulary = 200;
  std::size_t shared_vocabulary = 40;
  std::size_t sentences = 8;
  std::size_t words_per_sentence = 8;
  std::uint64_t seed = 1;
  // Stage mix, in percent: headline copy, sentence copy, low overlap,
  // high overlap, frequent-word tweet; the rest get a rare word.
  std::size_t pct_headline = 37;
  std::size_t pct_sentence = 5;
  std::size_t pct_low = 11;
  std::size_t pct_high = 11;
  std::size_t pct_frequent = 13;
};

struct SyntheticRecord {
  nlohmann::json line;
  std::size_t domain = 0;
  Stage intended = Stage::Accepted;
};

namespace detail {

// Alternating consonant-vowel words ending in k/m/p/b: never stopwords and
// left unchanged by the stemmer. `syllables` consonant-vowel pairs come
// before the final consonant.
inline std::string synthetic_word(Rng& rng, std::size_t syllables) {
  static constexpr char consonants[] = "bdfgklmnprstvz";
  static constexpr char vowels[] = "aiou";
  static constexpr char finals[] = "kmpb";
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w += consonants[rng.below(sizeof consonants - 1)];
    w += vowels[rng.below(sizeof vowels - 1)];
  }
  w += finals[rng.below(sizeof finals - 1)];
  return w;
}

class ZipfSampler {
 public:
  explicit ZipfSampler(std::size_t n) : cumulative_(n) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) cumulative_[r] = sum += 1.0 / static_cast<double>(r + 1);
  }
  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline std::string sentence_text(std::vector<std::string> words) {
  if (words.empty()) return {};
  words.front()[0] = static_cast<char>(words.front()[0] - 'a' + 'A');
  return join_words(words) + ".";
}

}  // namespace detail

inline std::vector<SyntheticRecord> synthetic_corpus(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  std::set<std::string> used;
  // Vocabulary words have two syllables, one-off words three.
  const auto fresh_word = [&](std::size_t syllables) {
    for (;;) {
      std::string w = detail::synthetic_word(rng, syllables);
      if (used.insert(w).second) return w;
    }
  };
  const auto fresh = [&] { return fresh_word(3); };
  std::vector<std::vector<std::string>> vocab(spec.domains);
  for (auto& v : vocab)
    for (std::size_t i = 0; i < spec.domain_vocabulary; ++i) v.push_back(fresh_word(2));
  std::vector<std::string> shared;
  for (std::size_t i = 0; i < spec.shared_vocabulary; ++i) shared.push_back(fresh_word(2));
  static const std::vector<std::string> fillers = {"the", "of", "and", "in", "to", "a", "is", "for"};

  const detail::ZipfSampler domain_zipf(spec.domain_vocabulary);
  const detail::ZipfSampler shared_zipf(std::max<std::size_t>(spec.shared_vocabulary, 1));

  struct Draft {
    std::size_t domain;
    std::vector<std::vector<std::string>> sentences;
  };
  std::vector<Draft> drafts(spec.records);
  for (auto& d : drafts) {
    d.domain = static_cast<std::size_t>(rng.below(spec.domains));
    d.sentences.resize(spec.sentences);
    for (auto& s : d.sentences)
      for (std::size_t w = 0; w < spec.words_per_sentence; ++w) {
        if (!shared.empty() && rng.below(4) == 0) s.push_back(shared[shared_zipf(rng)]);
        else s.push_back(vocab[d.domain][domain_zipf(rng)]);
        if (rng.below(3) == 0) s.push_back(fillers[rng.below(fillers.size())]);
      }
  }
  // Rare words: each appears once in one article of its domain.
  std::vector<std::vector<std::string>> rare(spec.domains);
  for (auto& d : drafts) {
    if (rng.below(4) != 0) continue;
    std::string w = fresh();
    d.sentences.back().push_back(w);
    rare[d.domain].push_back(std::move(w));
  }

  std::vector<SyntheticRecord> out;
  out.reserve(spec.records);
  for (std::size_t i = 0; i < spec.records; ++i) {
    const Draft& d = drafts[i];
    const auto& dv = vocab[d.domain];
    std::set<std::string> in_article;
    for (const auto& s : d.sentences) in_article.insert(s.begin(), s.end());

    std::vector<std::string> headline;
    for (std::size_t w = 0; w < 7; ++w) headline.push_back(dv[domain_zipf(rng)]);
    headline.push_back(fresh());

    const auto pick_sentence_words = [&](std::size_t n) {
      std::vector<std::string> pool;
      for (const auto& w : d.sentences[rng.below(d.sentences.size())])
        if (std::find(fillers.begin(), fillers.end(), w) == fillers.end() &&
            std::find(pool.begin(), pool.end(), w) == pool.end())
          pool.push_back(w);
      rng.shuffle(pool);
      if (pool.size() > n) pool.resize(n);
      return pool;
    };
    const auto frequent_absent = [&](std::size_t n) {
      std::vector<std::string> words;
      for (const auto& w : dv) {
        if (words.size() == n) break;
        if (!in_article.count(w)) words.push_back(w);
      }
      return words;
    };

    const std::size_t roll = static_cast<std::size_t>(rng.below(100));
    std::size_t edge = spec.pct_headline;
    Stage intended;
    std::vector<std::string> tweet;
    std::string tweet_text;
    if (roll < edge) {
      intended = Stage::ExtractiveVsHeadline;
      tweet_text = detail::sentence_text(headline);
    } else if (roll < (edge += spec.pct_sentence)) {
      intended = Stage::ExtractiveVsArticle;
      tweet_text = detail::sentence_text(d.sentences[rng.below(d.sentences.size())]);
    } else if (roll < (edge += spec.pct_low)) {
      intended = Stage::AbstractivityLow;
      for (std::size_t w = 0; w < 8; ++w) tweet.push_back(fresh());
    } else if (roll < (edge += spec.pct_high)) {
      intended = Stage::AbstractivityHigh;
      tweet = pick_sentence_words(6);
      std::reverse(tweet.begin(), tweet.end());
    } else if (roll < (edge += spec.pct_frequent)) {
      intended = Stage::NotTeasing;
      tweet = pick_sentence_words(4);
      for (auto& w : frequent_absent(4)) tweet.push_back(std::move(w));
    } else {
      intended = Stage::Accepted;
      tweet = pick_sentence_words(4);
      for (auto& w : frequent_absent(3)) tweet.push_back(std::move(w));
      const auto& pool = rare[d.domain];
      tweet.push_back(pool.empty() ? fresh() : pool[rng.below(pool.size())]);
    }
    if (tweet_text.empty()) {
      rng.shuffle(tweet);
      std::vector<std::string> with_fillers;
      for (auto& w : tweet) {
        with_fillers.push_back(std::move(w));
        if (rng.below(3) == 0) with_fillers.push_back(fillers[rng.below(fillers.size())]);
      }
      tweet_text = detail::sentence_text(std::move(with_fillers));
    }
    tweet_text += " https://t.co/x" + std::to_string(i);

    std::string article;
    for (const auto& s : d.sentences) {
      if (!article.empty()) article += ' ';
      article += detail::sentence_text(s);
    }
    SyntheticRecord rec;
    rec.domain = d.domain;
    rec.intended = intended;
    rec.line = {{"id", "r" + std::to_string(i)},
                {"tweet_text", tweet_text},
                {"headline", detail::join_words(headline)},
                {"article_text", article},
                {"keywords", {"topic" + std::to_string(d.domain)}},
                {"account", "account" + std::to_string(d.domain % 3)},
                {"url", "https://news.example/" + std::to_string(i)}};
    out.push_back(std::move(rec));
  }
  return out;
}

inline void write_synthetic_ndjson(std::ostream& out, const std::vector<SyntheticRecord>& corpus) {
  for (const auto& r : corpus) out << r.line.dump() << '\n';
}

}  // namespace teasekit
