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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "teasekit/error.hpp"
#include "teasekit/overlap.hpp"
#include "teasekit/record.hpp"

namespace teasekit {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline double f1_score(double precision, double recall) {
  if (precision == 0.0 || recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

inline PRF make_prf(double precision, double recall) {
  return PRF{precision, recall, f1_score(precision, recall)};
}

namespace detail {

inline std::map<std::string, std::size_t> ngram_counts(std::span<const std::string> tokens,
                                                       std::size_t n) {
  std::map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace detail

// Clipped n-gram overlap.
inline PRF rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n) {
  if (n == 0) throw std::invalid_argument("rouge_n: n must be >= 1");
  if (reference.size() < n) throw EmptyReference("rouge_n: reference has no n-grams");
  const auto ref = detail::ngram_counts(reference, n);
  const auto cand = detail::ngram_counts(candidate, n);
  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  const std::size_t ref_total = reference.size() - n + 1;
  const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  const double recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  const double precision =
      cand_total == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(cand_total);
  return make_prf(precision, recall);
}

inline std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::size_t longest_common_substring(std::span<const std::string> a,
                                            std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

enum class RougeLMode { Subsequence, Substring };

inline PRF rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference,
                   RougeLMode mode = RougeLMode::Subsequence) {
  if (reference.empty()) throw EmptyReference("rouge_l: empty reference");
  if (candidate.empty()) return {};
  const std::size_t common = mode == RougeLMode::Subsequence
                                 ? lcs_length(candidate, reference)
                                 : longest_common_substring(candidate, reference);
  return make_prf(static_cast<double>(common) / static_cast<double>(candidate.size()),
                  static_cast<double>(common) / static_cast<double>(reference.size()));
}

struct RougeScore {
  PRF rouge1;
  PRF rouge2;
  PRF rougeL;
};

// A one-token reference has no bigrams; ROUGE-2 then scores 0.
inline RougeScore score_pair(std::span<const std::string> candidate,
                             std::span<const std::string> reference,
                             RougeLMode mode = RougeLMode::Subsequence) {
  RougeScore s;
  s.rouge1 = rouge_n(candidate, reference, 1);
  if (reference.size() >= 2) s.rouge2 = rouge_n(candidate, reference, 2);
  s.rougeL = rouge_l(candidate, reference, mode);
  return s;
}

namespace detail {
// Sums in sorted order so the mean does not depend on input order.
inline double order_free_mean(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}
}  // namespace detail

// Unweighted per-pair mean of precision, recall and F1 for each metric.
inline RougeScore aggregate(std::span<const RougeScore> scores) {
  if (scores.empty()) throw EmptyCorpus("evaluate_corpus: no pairs");
  RougeScore out;
  const auto mean_of = [&](auto member_prf, auto member_value) {
    std::vector<double> xs;
    xs.reserve(scores.size());
    for (const auto& s : scores) xs.push_back(s.*member_prf.*member_value);
    return detail::order_free_mean(std::move(xs));
  };
  for (auto metric : {&RougeScore::rouge1, &RougeScore::rouge2, &RougeScore::rougeL}) {
    (out.*metric).precision = mean_of(metric, &PRF::precision);
    (out.*metric).recall = mean_of(metric, &PRF::recall);
    (out.*metric).f1 = mean_of(metric, &PRF::f1);
  }
  return out;
}

using TokenPair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// pairs: (candidate, reference).
inline RougeScore evaluate_corpus(std::span<const TokenPair> pairs,
                                  RougeLMode mode = RougeLMode::Subsequence) {
  std::vector<RougeScore> scores;
  scores.reserve(pairs.size());
  for (const auto& [cand, ref] : pairs) scores.push_back(score_pair(cand, ref, mode));
  return aggregate(scores);
}

struct LeadExtract {
  std::string text;
  std::size_t words = 0;
  // Set when nothing could be emitted (max_words == 0).
  bool empty = false;
};

// Leading article words, sentence by sentence, cut at max_words.
inline LeadExtract lead_baseline(const Record& record, std::size_t max_words) {
  if (record.article_sentences.raw_sentences.empty()) throw EmptyArticle();
  LeadExtract out;
  for (const auto& sentence : record.article_sentences.raw_sentences) {
    for (std::string_view word : split_words(sentence)) {
      if (out.words == max_words) break;
      if (!out.text.empty()) out.text.push_back(' ');
      out.text += word;
      ++out.words;
    }
    if (out.words == max_words) break;
  }
  out.empty = out.words == 0;
  return out;
}

// First sentence of the window that best matches the tweet.
inline std::string prominent_baseline(const Record& record, std::size_t p = 5, std::size_t q = 1) {
  if (record.article_sentences.raw_sentences.empty()) throw EmptyArticle();
  const auto windows = window_article(record.article_sentences, p, q);
  const auto best = prominent_section(record.tweet_text, windows).first;
  return record.article_sentences.raw_sentences[windows.first_sentence[best.window_index]];
}

}  // namespace teasekit
