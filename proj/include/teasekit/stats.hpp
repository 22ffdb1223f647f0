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
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "teasekit/error.hpp"
#include "teasekit/io.hpp"
#include "teasekit/overlap.hpp"
#include "teasekit/record.hpp"

namespace teasekit {

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // population
};

inline Moments moments(std::span<const double> xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return m;
}

// Density histogram over [0, 1]: sum(density * width) == 1.
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::vector<double> densities;
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;

  std::size_t bins() const noexcept { return counts.size(); }
  double width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
};

// Bin i is [i/bins, (i+1)/bins); the last bin also takes 1.0.
inline Histogram histogram(std::span<const double> scores, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram: bins must be >= 1");
  if (scores.empty()) throw EmptyCorpus("histogram: no scores");
  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = static_cast<double>(i) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("histogram: score outside [0, 1]");
    auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), s);
    std::size_t bin = static_cast<std::size_t>(it - h.bin_edges.begin()) - 1;
    ++h.counts[std::min(bin, bins - 1)];
  }
  h.n = scores.size();
  h.densities.resize(bins);
  for (std::size_t i = 0; i < bins; ++i)
    h.densities[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(h.n) * h.width(i));
  const Moments m = moments(scores);
  h.mean = m.mean;
  h.std = m.std;
  return h;
}

enum class OverlapPair { TweetVsArticle, HeadlineVsArticle };

inline std::string_view pair_name(OverlapPair pair) {
  return pair == OverlapPair::TweetVsArticle ? "tweet_vs_article" : "headline_vs_article";
}

// Best-window perc_match of the tweet (or headline) against the article.
// Records whose shortcut text has no unigrams are skipped.
inline std::vector<double> overlap_scores(std::span<const Record> records, OverlapPair pair,
                                          std::size_t p = 5, std::size_t q = 1) {
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const auto& r : records) {
    const NormalizedText& shortcut =
        pair == OverlapPair::TweetVsArticle ? r.tweet_text : r.headline_text;
    if (shortcut.unigrams.empty()) continue;
    const auto windows = window_article(r.article_sentences, p, q);
    scores.push_back(prominent_section(shortcut, windows).first.score);
  }
  return scores;
}

inline Histogram overlap_distribution(std::span<const Record> records, OverlapPair pair,
                                      std::size_t bins = 20, std::size_t p = 5, std::size_t q = 1) {
  const auto scores = overlap_scores(records, pair, p, q);
  if (scores.empty()) throw EmptyCorpus(std::string("no record qualifies for ") +
                                        std::string(pair_name(pair)));
  return histogram(scores, bins);
}

enum class LengthField { Tweet, Headline, Highlight };

struct LengthStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
};

// Raw whitespace word counts. Empty when no record carries the field.
inline std::optional<LengthStats> length_stats(std::span<const Record> records, LengthField field) {
  std::vector<double> lengths;
  for (const auto& r : records) {
    switch (field) {
      case LengthField::Tweet: lengths.push_back(static_cast<double>(word_count(r.tweet_clean))); break;
      case LengthField::Headline: lengths.push_back(static_cast<double>(word_count(r.headline))); break;
      case LengthField::Highlight:
        if (r.highlight) lengths.push_back(static_cast<double>(word_count(*r.highlight)));
        break;
    }
  }
  if (lengths.empty()) return std::nullopt;
  const Moments m = moments(lengths);
  return LengthStats{lengths.size(), m.mean, m.std};
}

inline void write_histograms_tsv(std::ostream& out,
                                 const std::vector<std::pair<std::string, Histogram>>& hists) {
  out << "pair\tbin_left\tbin_right\tdensity\n";
  for (const auto& [label, h] : hists)
    for (std::size_t i = 0; i < h.bins(); ++i)
      out << label << '\t' << format_double(h.bin_edges[i]) << '\t'
          << format_double(h.bin_edges[i + 1]) << '\t' << format_double(h.densities[i]) << '\n';
}

}  // namespace teasekit
