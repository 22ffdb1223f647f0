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

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "teasekit/error.hpp"
#include "teasekit/eval.hpp"
#include "teasekit/io.hpp"
#include "teasekit/recognizer.hpp"
#include "teasekit/textnorm.hpp"

namespace teasekit {

enum class ThresholdMode { Auto, Fixed };
enum class EmbeddingKind { Tfidf, Precomputed };

// Every tunable of the pipeline.
struct PipelineConfig {
  // normalization
  std::string stopwords = "builtin";
  std::string stemmer = "porter";
  bool mask_numbers = true;
  bool strip_urls = true;
  bool strip_mentions = true;
  bool strip_hashtags = true;

  // ingestion
  std::string input;
  bool require_indicative_url = true;
  std::vector<std::string> account_allowlist;

  // overlap and recognition
  std::size_t p = 5;
  std::size_t q = 1;
  double low = 0.2;
  double high = 0.8;
  std::string nonoverlap_mode = "tweet_minus_section";

  // domains
  std::size_t k = 8;
  std::string embedding = "tfidf";
  std::string embedding_path;
  std::size_t embedding_dim = 512;
  std::size_t kmeans_max_iter = 100;
  double kmeans_tol = 1e-6;
  std::size_t kmeans_restarts = 4;
  std::string domain_model_path;
  std::size_t keyword_top_n = 100;

  // relevance
  double default_oov_dr = 0.0;

  // threshold
  std::string threshold_mode = "auto";
  double dr_threshold = 0.005;
  double pareto_coverage = 0.8;
  double threshold_grid_min = 1e-4;
  double threshold_grid_max = 5e-2;
  std::size_t threshold_grid_points = 25;

  // stats
  std::size_t bins = 20;

  // split
  std::size_t train_size = 250000;
  std::size_t validation_size = 2000;
  std::size_t test_size = 2000;
  bool domain_balance = true;
  double dedup_jaccard = 0.8;

  // evaluation
  std::string rouge_l_mode = "subsequence";
  bool rouge_keep_stopwords = false;

  // execution
  std::uint64_t seed = 1;
  std::size_t threads = 0;

  NormConfig norm_config() const;
  RecognizerParams recognizer_params() const;
  ThresholdMode threshold_kind() const { return threshold_mode == "fixed" ? ThresholdMode::Fixed : ThresholdMode::Auto; }
  EmbeddingKind embedding_kind() const { return embedding == "precomputed" ? EmbeddingKind::Precomputed : EmbeddingKind::Tfidf; }
  RougeLMode rouge_mode() const { return rouge_l_mode == "substring" ? RougeLMode::Substring : RougeLMode::Subsequence; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

// Strips a trailing '#' comment that is not inside quotes.
inline std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

struct ConfigField {
  std::function<void(PipelineConfig&, const std::string&)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

inline double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

template <typename Int>
Int parse_count(const std::string& key, const std::string& v) {
  Int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

inline std::vector<std::string> parse_list(const std::string& v) {
  std::string body = v;
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = unquote(trim(item));
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string join_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += '"' + items[i] + '"';
  }
  return out + "]";
}

inline std::string choice(const std::string& key, const std::string& v,
                          std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed)
    if (v == a) return v;
  std::string msg = key + ": '" + v + "' is not one of";
  for (auto a : allowed) msg += " " + std::string(a);
  throw ConfigError(msg);
}

#define TEASEKIT_STR(name) \
  {#name, {[](PipelineConfig& c, const std::string& v) { c.name = v; }, \
           [](const PipelineConfig& c) { return '"' + c.name + '"'; }}}
#define TEASEKIT_CHOICE(name, ...) \
  {#name, {[](PipelineConfig& c, const std::string& v) { c.name = choice(#name, v, {__VA_ARGS__}); }, \
           [](const PipelineConfig& c) { return '"' + c.name + '"'; }}}
#define TEASEKIT_BOOL(name) \
  {#name, {[](PipelineConfig& c, const std::string& v) { c.name = parse_bool(#name, v); }, \
           [](const PipelineConfig& c) { return std::string(c.name ? "true" : "false"); }}}
#define TEASEKIT_REAL(name) \
  {#name, {[](PipelineConfig& c, const std::string& v) { c.name = parse_real(#name, v); }, \
           [](const PipelineConfig& c) { return format_double(c.name); }}}
#define TEASEKIT_COUNT(name) \
  {#name, {[](PipelineConfig& c, const std::string& v) { c.name = parse_count<decltype(c.name)>(#name, v); }, \
           [](const PipelineConfig& c) { return std::to_string(c.name); }}}

inline const std::map<std::string, ConfigField>& config_fields() {
  static const std::map<std::string, ConfigField> fields = {
      TEASEKIT_STR(stopwords),
      TEASEKIT_CHOICE(stemmer, "porter", "none"),
      TEASEKIT_BOOL(mask_numbers),
      TEASEKIT_BOOL(strip_urls),
      TEASEKIT_BOOL(strip_mentions),
      TEASEKIT_BOOL(strip_hashtags),
      TEASEKIT_STR(input),
      TEASEKIT_BOOL(require_indicative_url),
      {"account_allowlist",
       {[](PipelineConfig& c, const std::string& v) { c.account_allowlist = parse_list(v); },
        [](const PipelineConfig& c) { return join_list(c.account_allowlist); }}},
      TEASEKIT_COUNT(p),
      TEASEKIT_COUNT(q),
      TEASEKIT_REAL(low),
      TEASEKIT_REAL(high),
      TEASEKIT_CHOICE(nonoverlap_mode, "tweet_minus_section", "section_minus_tweet"),
      TEASEKIT_COUNT(k),
      TEASEKIT_CHOICE(embedding, "tfidf", "precomputed"),
      TEASEKIT_STR(embedding_path),
      TEASEKIT_COUNT(embedding_dim),
      TEASEKIT_COUNT(kmeans_max_iter),
      TEASEKIT_REAL(kmeans_tol),
      TEASEKIT_COUNT(kmeans_restarts),
      TEASEKIT_STR(domain_model_path),
      TEASEKIT_COUNT(keyword_top_n),
      TEASEKIT_REAL(default_oov_dr),
      TEASEKIT_CHOICE(threshold_mode, "auto", "fixed"),
      TEASEKIT_REAL(dr_threshold),
      TEASEKIT_REAL(pareto_coverage),
      TEASEKIT_REAL(threshold_grid_min),
      TEASEKIT_REAL(threshold_grid_max),
      TEASEKIT_COUNT(threshold_grid_points),
      TEASEKIT_COUNT(bins),
      TEASEKIT_COUNT(train_size),
      TEASEKIT_COUNT(validation_size),
      TEASEKIT_COUNT(test_size),
      TEASEKIT_BOOL(domain_balance),
      TEASEKIT_REAL(dedup_jaccard),
      TEASEKIT_CHOICE(rouge_l_mode, "subsequence", "substring"),
      TEASEKIT_BOOL(rouge_keep_stopwords),
      TEASEKIT_COUNT(seed),
      TEASEKIT_COUNT(threads),
  };
  return fields;
}

#undef TEASEKIT_STR
#undef TEASEKIT_CHOICE
#undef TEASEKIT_BOOL
#undef TEASEKIT_REAL
#undef TEASEKIT_COUNT

}  // namespace detail

inline void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value) {
  const auto& fields = detail::config_fields();
  auto it = fields.find(key);
  if (it == fields.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.set(config, value);
}

inline void validate(const PipelineConfig& c) {
  if (c.p == 0 || c.q == 0) throw ConfigError("p and q must be >= 1");
  if (!(c.low >= 0.0 && c.low < c.high && c.high <= 1.0))
    throw ConfigError("need 0 <= low < high <= 1");
  if (c.k == 0) throw ConfigError("k must be >= 1");
  if (!(c.pareto_coverage > 0.0 && c.pareto_coverage < 1.0))
    throw ConfigError("pareto_coverage must be in (0, 1)");
  if (!(c.threshold_grid_min > 0.0 && c.threshold_grid_max > c.threshold_grid_min) ||
      c.threshold_grid_points == 0)
    throw ConfigError("threshold grid needs 0 < min < max and points >= 1");
  if (!(c.dr_threshold >= 0.0)) throw ConfigError("dr_threshold must be >= 0");
  if (c.bins == 0) throw ConfigError("bins must be >= 1");
  if (!(c.dedup_jaccard >= 0.0 && c.dedup_jaccard <= 1.0))
    throw ConfigError("dedup_jaccard must be in [0, 1]");
  if (c.embedding == "precomputed" && c.embedding_path.empty() && c.domain_model_path.empty())
    throw ConfigError("embedding = precomputed needs embedding_path");
  if (c.embedding_dim == 0) throw ConfigError("embedding_dim must be >= 1");
  if (!(c.default_oov_dr >= 0.0)) throw ConfigError("default_oov_dr must be >= 0");
}

// `key = value` lines; '#' starts a comment; [section] headers are accepted
// and ignored since every key is global.
inline PipelineConfig parse_config(std::string_view text, PipelineConfig config = {}) {
  std::stringstream ss{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::unquote(detail::trim(line.substr(eq + 1)));
    try {
      set_config_value(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(config);
  return config;
}

inline PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// Canonical text form: every key, sorted, one per line. Parsing it back
// yields the same config.
inline std::string to_config_text(const PipelineConfig& config) {
  std::string out;
  for (const auto& [key, field] : detail::config_fields()) out += key + " = " + field.get(config) + "\n";
  return out;
}

inline std::string config_hash(const PipelineConfig& config) {
  return hex64(fnv1a64(to_config_text(config)));
}

inline NormConfig PipelineConfig::norm_config() const {
  NormConfig n;
  if (stopwords != "builtin") n.stopwords = load_stopwords(stopwords);
  n.stemmer = stemmer == "none" ? StemmerKind::None : StemmerKind::Porter;
  n.mask_numbers = mask_numbers;
  n.strip_urls = strip_urls;
  n.strip_mentions = strip_mentions;
  n.strip_hashtag_marker = strip_hashtags;
  return n;
}

inline RecognizerParams PipelineConfig::recognizer_params() const {
  RecognizerParams r;
  r.p = p;
  r.q = q;
  r.low = low;
  r.high = high;
  r.dr_threshold = dr_threshold;
  r.nonoverlap_mode = nonoverlap_mode == "section_minus_tweet" ? NonoverlapMode::SectionMinusTweet
                                                               : NonoverlapMode::TweetMinusSection;
  return r;
}

}  // namespace teasekit
