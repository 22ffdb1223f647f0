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

#include <filesystem>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "teasekit/domains.hpp"
#include "teasekit/random.hpp"
#include "teasekit/textnorm.hpp"

namespace teasekit::testing {

inline NormalizedText text_of(std::vector<std::string> tokens) {
  return NormalizedText::from_tokens(std::move(tokens), 0);
}

// Article whose raw sentences are the tokens joined and closed with '.'.
inline SentenceSplitArticle article_of(const std::vector<std::vector<std::string>>& sentences) {
  SentenceSplitArticle a;
  for (const auto& s : sentences) {
    a.sentences.push_back(NormalizedText::from_tokens(s, s.size()));
    std::string raw;
    for (const auto& w : s) raw += (raw.empty() ? "" : " ") + w;
    a.raw_sentences.push_back(raw + ".");
  }
  return a;
}

// Model with one pseudo-record per domain holding the given tokens.
inline DomainModel model_of(const std::vector<std::vector<std::string>>& domain_tokens) {
  DomainModel m;
  m.k = domain_tokens.size();
  m.term_counts.assign(m.k, {});
  m.total_terms.assign(m.k, 0);
  m.domain_sizes.assign(m.k, 1);
  m.avg_article_words.assign(m.k, 0.0);
  for (std::size_t d = 0; d < m.k; ++d) {
    for (const auto& t : domain_tokens[d]) ++m.term_counts[d][t];
    m.total_terms[d] = domain_tokens[d].size();
  }
  return m;
}

inline DomainModel model_of_counts(const std::vector<std::map<std::string, std::uint64_t>>& counts) {
  DomainModel m;
  m.k = counts.size();
  m.term_counts = counts;
  m.total_terms.assign(m.k, 0);
  m.domain_sizes.assign(m.k, 1);
  m.avg_article_words.assign(m.k, 0.0);
  for (std::size_t d = 0; d < m.k; ++d)
    for (const auto& [t, c] : counts[d]) m.total_terms[d] += c;
  return m;
}

// Made-up lowercase words that normalization leaves untouched.
inline std::string made_up_word(std::size_t i) {
  static constexpr char c[] = "bdfgklmnprstvz";
  static constexpr char v[] = "aiou";
  std::string w;
  w += c[i % 14];
  w += v[(i / 14) % 4];
  w += c[(i / 56) % 14];
  w += v[(i / 784) % 4];
  w += c[(i / 3136) % 14];
  w += "ak";
  return w;
}

inline std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len,
                                              std::size_t vocab, std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::vector<std::string> out(len(rng));
  for (auto& w : out) w = "w" + std::to_string(word(rng));
  return out;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::size_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("teasekit-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace teasekit::testing
