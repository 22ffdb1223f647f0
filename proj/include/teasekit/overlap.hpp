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
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "teasekit/error.hpp"
#include "teasekit/textnorm.hpp"

namespace teasekit {

// |a ∩ b| for two sorted, duplicate-free term lists.
inline std::size_t intersection_size(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// Terms of a absent from b; both sorted and duplicate-free.
inline std::vector<std::string> set_difference(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Fraction of x1's distinct terms that also occur in x2.
inline double perc_match(const NormalizedText& x1, const NormalizedText& x2) {
  if (x1.unigrams.empty()) throw EmptyReference("perc_match: first text has no unigrams");
  return static_cast<double>(intersection_size(x1.unigrams, x2.unigrams)) /
         static_cast<double>(x1.unigrams.size());
}

struct WindowedArticle {
  std::vector<NormalizedText> windows;
  // Index of the first article sentence covered by each window.
  std::vector<std::size_t> first_sentence;
  std::size_t p = 5;
  std::size_t q = 1;
};

inline std::size_t window_count(std::size_t sentences, std::size_t p, std::size_t q) {
  if (sentences < p) return 1;
  return (sentences - p) / q + 1;
}

// Window i covers sentences [i*q, i*q + p). Articles shorter than p get a
// single window over everything they have.
inline WindowedArticle window_article(const SentenceSplitArticle& article, std::size_t p,
                                      std::size_t q) {
  if (p == 0 || q == 0) throw std::invalid_argument("window_article: p and q must be >= 1");
  WindowedArticle out;
  out.p = p;
  out.q = q;
  const std::size_t n = article.size();
  if (n < p) {
    out.windows.push_back(concatenate(article.sentences, 0, n));
    out.first_sentence.push_back(0);
    return out;
  }
  const std::size_t count = window_count(n, p, q);
  out.windows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.windows.push_back(concatenate(article.sentences, i * q, i * q + p));
    out.first_sentence.push_back(i * q);
  }
  return out;
}

struct ProminentSection {
  std::size_t window_index = 0;
  double score = 0.0;
  NormalizedText text;
};

struct OverlapProfile {
  std::vector<double> scores;
};

// Scores every window against the shortcut text and returns the best one.
// Ties go to the earliest window.
inline std::pair<ProminentSection, OverlapProfile> prominent_section(
    const NormalizedText& shortcut, const WindowedArticle& windowed) {
  if (shortcut.unigrams.empty()) throw EmptyReference("prominent_section: empty shortcut text");
  if (windowed.windows.empty()) throw std::invalid_argument("prominent_section: no windows");
  OverlapProfile profile;
  profile.scores.reserve(windowed.windows.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < windowed.windows.size(); ++i) {
    profile.scores.push_back(perc_match(shortcut, windowed.windows[i]));
    if (profile.scores[i] > profile.scores[best]) best = i;
  }
  ProminentSection section{best, profile.scores[best], windowed.windows[best]};
  return {std::move(section), std::move(profile)};
}

enum class Abstractivity { TooLow, Abstractive, TooHigh };

struct OverlapBounds {
  double low = 0.2;
  double high = 0.8;
};

// Both bounds are themselves abstractive: only strictly lower or strictly
// higher scores are rejected.
inline Abstractivity abstractivity_class(double score, double low, double high) {
  if (!(low >= 0.0 && low < high && high <= 1.0))
    throw std::invalid_argument("abstractivity_class: need 0 <= low < high <= 1");
  if (score < low) return Abstractivity::TooLow;
  if (score > high) return Abstractivity::TooHigh;
  return Abstractivity::Abstractive;
}

inline Abstractivity abstractivity_class(double score, OverlapBounds bounds = {}) {
  return abstractivity_class(score, bounds.low, bounds.high);
}

}  // namespace teasekit
