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
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "teasekit/error.hpp"
#include "teasekit/io.hpp"
#include "teasekit/overlap.hpp"
#include "teasekit/parallel.hpp"
#include "teasekit/record.hpp"
#include "teasekit/relevance.hpp"

namespace teasekit {

// Where a record left the recognition procedure. Stages appear in the order
// the checks run; Degenerate marks records that cannot be evaluated.
enum class Stage {
  ExtractiveVsHeadline,
  ExtractiveVsArticle,
  AbstractivityLow,
  AbstractivityHigh,
  NotTeasing,
  Accepted,
  Degenerate,
};

inline constexpr std::array<Stage, 7> kAllStages = {
    Stage::ExtractiveVsHeadline, Stage::ExtractiveVsArticle, Stage::AbstractivityLow,
    Stage::AbstractivityHigh,    Stage::NotTeasing,          Stage::Accepted,
    Stage::Degenerate};

inline std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::ExtractiveVsHeadline: return "extractive_vs_headline";
    case Stage::ExtractiveVsArticle: return "extractive_vs_article";
    case Stage::AbstractivityLow: return "abstractivity_low";
    case Stage::AbstractivityHigh: return "abstractivity_high";
    case Stage::NotTeasing: return "not_teasing";
    case Stage::Accepted: return "accepted";
    case Stage::Degenerate: return "degenerate";
  }
  return "unknown";
}

inline std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages)
    if (stage_name(s) == name) return s;
  return std::nullopt;
}

// Which side of the prominent section the non-overlap words come from.
// TweetMinusSection: tweet unigrams missing from the section.
// SectionMinusTweet: section unigrams missing from the tweet.
enum class NonoverlapMode { TweetMinusSection, SectionMinusTweet };

struct RecognizerParams {
  std::size_t p = 5;
  std::size_t q = 1;
  double low = 0.2;
  double high = 0.8;
  double dr_threshold = 0.005;
  NonoverlapMode nonoverlap_mode = NonoverlapMode::TweetMinusSection;
};

struct RecognitionVerdict {
  std::string id;
  bool is_teaser = false;
  Stage stage = Stage::Degenerate;
  std::optional<DomainId> domain;
  std::optional<double> max_overlap;
  std::optional<std::size_t> prominent_index;
  std::vector<std::string> nonoverlap_words;
  std::vector<double> nonoverlap_dr;
  std::optional<double> min_dr;

  // True once the record got past both abstractivity bounds.
  bool passed_abstractivity() const {
    return stage == Stage::NotTeasing || stage == Stage::Accepted;
  }

  friend bool operator==(const RecognitionVerdict&, const RecognitionVerdict&) = default;
};

// Lowercase ASCII with every whitespace run collapsed to one space.
inline std::string collapse_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::string_view word : split_words(text)) {
    if (!out.empty()) out.push_back(' ');
    out += detail::ascii_lower(word);
  }
  return out;
}

namespace detail {
inline bool contains_either(const std::string& a, const std::string& b) {
  return a.find(b) != std::string::npos || b.find(a) != std::string::npos;
}
}  // namespace detail

// One text is an extract of the other when either contains the other.
inline bool is_extract(std::string_view a, std::string_view b) {
  return detail::contains_either(collapse_lower(a), collapse_lower(b));
}

inline std::vector<std::string> nonoverlap(const NormalizedText& shortcut,
                                           const NormalizedText& prominent) {
  return set_difference(shortcut.unigrams, prominent.unigrams);
}

// Accepted iff some non-overlap word has dr strictly below the threshold.
inline void apply_dr_threshold(RecognitionVerdict& v, double threshold) {
  if (!v.passed_abstractivity()) return;
  v.is_teaser = v.min_dr.has_value() && *v.min_dr < threshold;
  v.stage = v.is_teaser ? Stage::Accepted : Stage::NotTeasing;
}

// Extractivity against the headline, then against each article sentence,
// then abstractivity of the best window, then teasingness of the words the
// tweet does not share with that window. Stops at the first failed check.
inline RecognitionVerdict is_teaser(const Record& record, const RelevanceMatrix& matrix,
                                    const RecognizerParams& params) {
  if (!(params.low < params.high)) throw std::invalid_argument("is_teaser: need low < high");
  RecognitionVerdict v;
  v.id = record.id;
  v.domain = record.domain;
  if (record.tweet_text.unigrams.empty() || !record.domain || *record.domain >= matrix.domains()) {
    v.stage = Stage::Degenerate;
    return v;
  }

  const std::string tweet = collapse_lower(record.tweet_clean);
  if (detail::contains_either(tweet, collapse_lower(record.headline))) {
    v.stage = Stage::ExtractiveVsHeadline;
    return v;
  }
  for (const auto& sentence : record.article_sentences.raw_sentences) {
    if (detail::contains_either(tweet, collapse_lower(sentence))) {
      v.stage = Stage::ExtractiveVsArticle;
      return v;
    }
  }

  const WindowedArticle windows = window_article(record.article_sentences, params.p, params.q);
  const auto [section, profile] = prominent_section(record.tweet_text, windows);
  v.max_overlap = section.score;
  switch (abstractivity_class(section.score, params.low, params.high)) {
    case Abstractivity::TooLow:
      v.stage = Stage::AbstractivityLow;
      return v;
    case Abstractivity::TooHigh:
      v.stage = Stage::AbstractivityHigh;
      return v;
    case Abstractivity::Abstractive:
      break;
  }

  v.prominent_index = section.window_index;
  v.nonoverlap_words = params.nonoverlap_mode == NonoverlapMode::TweetMinusSection
                           ? nonoverlap(record.tweet_text, section.text)
                           : nonoverlap(section.text, record.tweet_text);
  v.nonoverlap_dr.reserve(v.nonoverlap_words.size());
  for (const auto& w : v.nonoverlap_words) {
    const double dr = matrix.lookup(*record.domain, w);
    v.nonoverlap_dr.push_back(dr);
    if (!v.min_dr || dr < *v.min_dr) v.min_dr = dr;
  }
  v.stage = Stage::NotTeasing;
  apply_dr_threshold(v, params.dr_threshold);
  return v;
}

inline std::vector<RecognitionVerdict> recognize_all(const std::vector<Record>& records,
                                                     const RelevanceMatrix& matrix,
                                                     const RecognizerParams& params,
                                                     std::size_t threads = 0) {
  std::vector<RecognitionVerdict> out(records.size());
  parallel_for(records.size(), threads,
               [&](std::size_t i) { out[i] = is_teaser(records[i], matrix, params); });
  return out;
}

struct PruneReport {
  std::size_t total = 0;
  std::map<Stage, std::size_t> counts;

  std::size_t count(Stage s) const {
    auto it = counts.find(s);
    return it == counts.end() ? 0 : it->second;
  }
  double fraction(Stage s) const {
    return total == 0 ? 0.0 : static_cast<double>(count(s)) / static_cast<double>(total);
  }
  double kept_fraction() const { return fraction(Stage::Accepted); }

  void merge(const PruneReport& other) {
    total += other.total;
    for (const auto& [s, n] : other.counts) counts[s] += n;
  }
};

inline PruneReport prune_report(std::span<const RecognitionVerdict> verdicts) {
  PruneReport r;
  for (Stage s : kAllStages) r.counts[s] = 0;
  for (const auto& v : verdicts) {
    ++r.counts[v.stage];
    ++r.total;
  }
  return r;
}

inline void write_prune_report_tsv(std::ostream& out, const PruneReport& report) {
  struct Row {
    std::string_view analysis;
    std::string_view detail;
    Stage stage;
  };
  static constexpr Row rows[] = {
      {"extractivity", "wrt_headline", Stage::ExtractiveVsHeadline},
      {"extractivity", "wrt_article", Stage::ExtractiveVsArticle},
      {"abstractivity", "too_low", Stage::AbstractivityLow},
      {"abstractivity", "too_high", Stage::AbstractivityHigh},
      {"teasingness", "no_low_dr_word", Stage::NotTeasing},
      {"degenerate", "unscorable", Stage::Degenerate},
      {"kept", "teaser", Stage::Accepted},
  };
  out << "analysis\tdetail\tcount\tfraction\n";
  for (const Row& row : rows)
    out << row.analysis << '\t' << row.detail << '\t' << report.count(row.stage) << '\t'
        << format_double(report.fraction(row.stage)) << '\n';
  out << "total\tall\t" << report.total << '\t' << (report.total == 0 ? "0" : "1") << '\n';
}

inline nlohmann::json to_json(const RecognitionVerdict& v) {
  nlohmann::json j;
  j["id"] = v.id;
  j["is_teaser"] = v.is_teaser;
  j["stage"] = std::string(stage_name(v.stage));
  j["domain"] = v.domain ? nlohmann::json(*v.domain) : nlohmann::json(nullptr);
  j["max_overlap"] = v.max_overlap ? nlohmann::json(*v.max_overlap) : nlohmann::json(nullptr);
  j["prominent_index"] =
      v.prominent_index ? nlohmann::json(*v.prominent_index) : nlohmann::json(nullptr);
  j["nonoverlap_words"] = v.nonoverlap_words;
  j["nonoverlap_dr"] = v.nonoverlap_dr;
  j["min_dr"] = v.min_dr ? nlohmann::json(*v.min_dr) : nlohmann::json(nullptr);
  return j;
}

inline RecognitionVerdict verdict_from_json(const nlohmann::json& j) {
  RecognitionVerdict v;
  v.id = j.at("id").get<std::string>();
  v.is_teaser = j.at("is_teaser").get<bool>();
  auto stage = parse_stage(j.at("stage").get<std::string>());
  if (!stage) throw InputError("unknown verdict stage: " + j.at("stage").dump());
  v.stage = *stage;
  const auto opt = [&](const char* key) -> const nlohmann::json* {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
  };
  if (auto* x = opt("domain")) v.domain = x->get<DomainId>();
  if (auto* x = opt("max_overlap")) v.max_overlap = x->get<double>();
  if (auto* x = opt("prominent_index")) v.prominent_index = x->get<std::size_t>();
  if (auto* x = opt("nonoverlap_words")) v.nonoverlap_words = x->get<std::vector<std::string>>();
  if (auto* x = opt("nonoverlap_dr")) v.nonoverlap_dr = x->get<std::vector<double>>();
  if (auto* x = opt("min_dr")) v.min_dr = x->get<double>();
  return v;
}

}  // namespace teasekit
