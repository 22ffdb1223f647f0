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
#include <fstream>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "teasekit/error.hpp"
#include "teasekit/porter_stemmer.hpp"
#include "teasekit/stopwords.hpp"

namespace teasekit {

using StopwordSet = std::unordered_set<std::string>;

enum class StemmerKind { Porter, None };

inline std::shared_ptr<const StopwordSet> builtin_stopwords() {
  static const auto words = [] {
    auto set = std::make_shared<StopwordSet>();
    for (std::string_view w : kEnglishStopwords) set->emplace(w);
    return std::shared_ptr<const StopwordSet>(std::move(set));
  }();
  return words;
}

// One word per line, UTF-8. Blank lines and lines starting with '#' are
// ignored; entries are lowercased.
inline std::shared_ptr<const StopwordSet> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stopword list: " + path);
  auto words = std::make_shared<StopwordSet>();
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string word = line.substr(start);
    for (char& c : word)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    words->insert(std::move(word));
  }
  return words;
}

inline std::vector<std::string> default_abbreviations() {
  return {"mr.",  "mrs.", "ms.",  "dr.",   "prof.", "sr.",  "jr.",   "st.",  "vs.",
          "etc.", "e.g.", "i.e.", "u.s.",  "u.k.",  "inc.", "ltd.",  "co.",  "corp.",
          "gen.", "gov.", "sen.", "rep.",  "rev.",  "jan.", "feb.",  "aug.", "sept.",
          "oct.", "nov.", "dec.", "mt.",   "ft.",   "a.m.", "p.m."};
}

struct NormConfig {
  std::shared_ptr<const StopwordSet> stopwords = builtin_stopwords();
  bool remove_stopwords = true;
  StemmerKind stemmer = StemmerKind::Porter;
  bool mask_numbers = true;
  bool strip_urls = true;
  bool strip_mentions = true;
  bool strip_hashtag_marker = true;
  // Lowercased tokens ending in '.' that never end a sentence.
  std::vector<std::string> abbreviations = default_abbreviations();

  bool is_stopword(const std::string& token) const {
    return remove_stopwords && stopwords && stopwords->count(token) != 0;
  }
};

// Token sequence plus its distinct-term set. `unigrams` is kept sorted so
// set operations are linear merges.
struct NormalizedText {
  std::vector<std::string> tokens;
  std::vector<std::string> unigrams;
  std::size_t source_len_words = 0;

  static NormalizedText from_tokens(std::vector<std::string> tokens,
                                    std::size_t source_len_words = 0) {
    NormalizedText out;
    out.unigrams = tokens;
    std::sort(out.unigrams.begin(), out.unigrams.end());
    out.unigrams.erase(std::unique(out.unigrams.begin(), out.unigrams.end()), out.unigrams.end());
    out.tokens = std::move(tokens);
    out.source_len_words = source_len_words;
    return out;
  }

  bool empty() const noexcept { return tokens.empty(); }
  bool contains(const std::string& term) const {
    return std::binary_search(unigrams.begin(), unigrams.end(), term);
  }

  friend bool operator==(const NormalizedText&, const NormalizedText&) = default;
};

struct SentenceSplitArticle {
  std::vector<NormalizedText> sentences;
  std::vector<std::string> raw_sentences;

  std::size_t size() const noexcept { return sentences.size(); }
};

namespace detail {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// Byte length of a Unicode whitespace character starting at text[i], or 0.
inline std::size_t space_length(std::string_view text, std::size_t i) {
  const auto byte = [&](std::size_t k) -> unsigned char {
    return i + k < text.size() ? static_cast<unsigned char>(text[i + k]) : 0;
  };
  const unsigned char c = byte(0);
  if (c < 0x80) return is_ascii_space(static_cast<char>(c)) ? 1 : 0;
  if (c == 0xC2 && (byte(1) == 0x85 || byte(1) == 0xA0)) return 2;
  if (c == 0xE1 && byte(1) == 0x9A && byte(2) == 0x80) return 3;
  if (c == 0xE2 && byte(1) == 0x80) {
    const unsigned char d = byte(2);
    if ((d >= 0x80 && d <= 0x8A) || d == 0xA8 || d == 0xA9 || d == 0xAF) return 3;
  }
  if (c == 0xE2 && byte(1) == 0x81 && byte(2) == 0x9F) return 3;
  if (c == 0xE3 && byte(1) == 0x80 && byte(2) == 0x80) return 3;
  return 0;
}

inline constexpr std::string_view kUnicodePunct[] = {
    "“", "”", "‘", "’", "«", "»",
    "…", "—", "–", "¿", "¡"};

inline std::size_t leading_punct_length(std::string_view s, std::string_view keep) {
  if (s.empty()) return 0;
  const char c = s.front();
  if (static_cast<unsigned char>(c) < 0x80) {
    const bool punct = (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
                       (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
    return punct && keep.find(c) == std::string_view::npos ? 1 : 0;
  }
  for (std::string_view p : kUnicodePunct)
    if (s.starts_with(p)) return p.size();
  return 0;
}

inline std::size_t trailing_punct_length(std::string_view s, std::string_view keep) {
  if (s.empty()) return 0;
  const char c = s.back();
  if (static_cast<unsigned char>(c) < 0x80) {
    const bool punct = (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
                       (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
    return punct && keep.find(c) == std::string_view::npos ? 1 : 0;
  }
  for (std::string_view p : kUnicodePunct)
    if (s.ends_with(p)) return p.size();
  return 0;
}

inline std::string_view strip_punct(std::string_view s, std::string_view keep) {
  while (std::size_t n = leading_punct_length(s, keep)) s.remove_prefix(n);
  while (std::size_t n = trailing_punct_length(s, keep)) s.remove_suffix(n);
  return s;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_url(std::string_view lower) {
  return lower.starts_with("http://") || lower.starts_with("https://") ||
         lower.starts_with("www.") || lower.starts_with("pic.twitter.com/");
}

inline bool all_lower_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

// A token made only of digits, '%' and group/decimal separators is a number
// and becomes a single mask token; otherwise each digit run becomes '%'.
inline std::string mask_digits(std::string_view token) {
  const bool numeric =
      std::all_of(token.begin(), token.end(),
                  [](char c) { return is_digit(c) || c == '%' || c == '.' || c == ','; }) &&
      std::any_of(token.begin(), token.end(), [](char c) { return is_digit(c) || c == '%'; });
  if (numeric) return "%";
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < token.size();) {
    if (is_digit(token[i])) {
      out.push_back('%');
      while (i < token.size() && is_digit(token[i])) ++i;
    } else {
      out.push_back(token[i++]);
    }
  }
  return out;
}

inline bool strip_possessive(std::string& token) {
  for (std::string_view suffix : {std::string_view("'s"), std::string_view("’s")}) {
    if (token.size() > suffix.size() && std::string_view(token).ends_with(suffix)) {
      token.resize(token.size() - suffix.size());
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Splits on Unicode whitespace.
inline std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size()) {
      const std::size_t n = detail::space_length(text, i);
      if (n == 0) break;
      i += n;
    }
    const std::size_t start = i;
    while (i < text.size() && detail::space_length(text, i) == 0) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

inline std::size_t word_count(std::string_view text) { return split_words(text).size(); }

// Maps one whitespace-delimited word to its normalized token, or "" when the
// word is dropped (URL, mention, stopword, pure punctuation).
inline std::string normalize_word(std::string_view word, const NormConfig& config) {
  std::string_view core = detail::strip_punct(word, "@#%");
  std::string token = detail::ascii_lower(core);
  if (config.strip_urls && detail::is_url(token)) return {};
  if (config.strip_mentions && token.starts_with('@')) return {};
  std::string keep = "%";
  if (!config.strip_hashtag_marker) keep += '#';
  if (!config.strip_mentions) keep += '@';
  token = std::string(detail::strip_punct(token, keep));
  while (detail::strip_possessive(token)) token = std::string(detail::strip_punct(token, keep));
  if (token.empty()) return {};
  if (config.mask_numbers &&
      std::any_of(token.begin(), token.end(), [](char c) { return detail::is_digit(c) || c == '%'; }))
    token = detail::mask_digits(token);
  if (config.is_stopword(token)) return {};
  if (config.stemmer == StemmerKind::Porter && detail::all_lower_alpha(token)) {
    token = stem_to_fixed_point(token);
    if (config.is_stopword(token)) return {};
  }
  return token;
}

inline NormalizedText normalize(std::string_view text, const NormConfig& config) {
  const auto words = split_words(text);
  std::vector<std::string> tokens;
  tokens.reserve(words.size());
  for (std::string_view word : words) {
    std::string token = normalize_word(word, config);
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return NormalizedText::from_tokens(std::move(tokens), words.size());
}

// Surface form of a tweet for substring checks: URLs and mentions removed,
// hashtag markers dropped, whitespace collapsed. Case is preserved.
inline std::string clean_tweet(std::string_view text, const NormConfig& config) {
  std::string out;
  for (std::string_view word : split_words(text)) {
    const std::string lower = detail::ascii_lower(detail::strip_punct(word, "@#%"));
    if (config.strip_urls && detail::is_url(lower)) continue;
    if (config.strip_mentions && lower.starts_with('@')) continue;
    std::string kept(word);
    if (config.strip_hashtag_marker) {
      std::size_t lead = 0;
      while (std::size_t n = detail::leading_punct_length(std::string_view(kept).substr(lead), "#"))
        lead += n;
      if (lead + 1 < kept.size() && kept[lead] == '#') kept.erase(lead, 1);
    }
    if (!out.empty()) out.push_back(' ');
    out += kept;
  }
  return out;
}

inline NormalizedText concatenate(const std::vector<NormalizedText>& parts, std::size_t begin,
                                  std::size_t end) {
  std::vector<std::string> tokens;
  std::size_t words = 0;
  for (std::size_t i = begin; i < end; ++i) {
    tokens.insert(tokens.end(), parts[i].tokens.begin(), parts[i].tokens.end());
    words += parts[i].source_len_words;
  }
  return NormalizedText::from_tokens(std::move(tokens), words);
}

// Sentence boundary: '.', '!' or '?' (plus any closing quotes/brackets)
// followed by whitespace or end of text, unless the word carrying the period
// is a listed abbreviation. A blank line is also a boundary.
inline std::vector<std::string> split_sentence_text(std::string_view text,
                                                    const NormConfig& config) {
  std::vector<std::string> out;
  const auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && detail::space_length(text, begin) > 0)
      begin += detail::space_length(text, begin);
    while (end > begin && detail::is_ascii_space(text[end - 1])) --end;
    if (end > begin) out.emplace_back(text.substr(begin, end - begin));
  };
  const auto is_closer = [&](std::size_t i) -> std::size_t {
    const char c = text[i];
    if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
    for (std::string_view q : {std::string_view("”"), std::string_view("’")})
      if (text.substr(i).starts_with(q)) return q.size();
    return 0;
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      std::size_t j = i;
      int newlines = 0;
      while (j < text.size() && detail::is_ascii_space(text[j])) {
        if (text[j] == '\n') ++newlines;
        ++j;
      }
      if (newlines >= 2) {
        emit(start, i);
        start = j;
      }
      i = j;
      continue;
    }
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
      while (j < text.size()) {
        const std::size_t n = is_closer(j);
        if (n == 0) break;
        j += n;
      }
      const bool at_break = j == text.size() || detail::space_length(text, j) > 0;
      if (at_break) {
        bool abbreviation = false;
        const bool single_period = c == '.' && (i + 1 >= text.size() || text[i + 1] != '.');
        if (single_period) {
          std::size_t word_start = i;
          while (word_start > start && detail::space_length(text, word_start - 1) == 0)
            --word_start;
          std::string word = detail::ascii_lower(text.substr(word_start, i + 1 - word_start));
          while (std::size_t n = detail::leading_punct_length(word, ".")) word.erase(0, n);
          abbreviation = std::find(config.abbreviations.begin(), config.abbreviations.end(),
                                   word) != config.abbreviations.end();
        }
        if (!abbreviation) {
          emit(start, j);
          start = j;
        }
      }
      i = j;
      continue;
    }
    ++i;
  }
  emit(start, text.size());
  return out;
}

inline SentenceSplitArticle split_sentences(std::string_view article, const NormConfig& config) {
  SentenceSplitArticle out;
  out.raw_sentences = split_sentence_text(article, config);
  out.sentences.reserve(out.raw_sentences.size());
  for (const auto& sentence : out.raw_sentences) out.sentences.push_back(normalize(sentence, config));
  return out;
}

}  // namespace teasekit
