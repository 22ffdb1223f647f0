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
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "teasekit/error.hpp"
#include "teasekit/parallel.hpp"
#include "teasekit/random.hpp"
#include "teasekit/record.hpp"
#include "teasekit/textnorm.hpp"

namespace teasekit {

struct IngestOptions {
  // When a record carries `url`, it must be an http(s) link.
  bool require_indicative_url = true;
  // Non-empty: only these accounts are kept.
  std::vector<std::string> account_allowlist;
  std::size_t threads = 0;
};

struct SkippedLine {
  std::size_t line = 0;
  std::string reason;
};

struct IngestResult {
  std::vector<Record> records;
  std::size_t lines = 0;
  std::vector<SkippedLine> skipped;
};

namespace detail {

inline std::optional<std::string> string_field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number()) return it->dump();
  throw std::invalid_argument(std::string("field '") + key + "' must be a string");
}

inline std::string required_text(const nlohmann::json& j, const char* key) {
  auto v = string_field(j, key);
  if (!v || v->find_first_not_of(" \t\r\n") == std::string::npos)
    throw std::invalid_argument(std::string("missing or empty '") + key + "'");
  return *v;
}

}  // namespace detail

// Reads one corpus record per line. Lines that fail validation are counted
// and skipped; only an unreadable stream aborts.
inline IngestResult ingest(std::istream& in, const NormConfig& norm, const IngestOptions& options = {}) {
  struct Raw {
    std::string id, article, headline, tweet;
    std::vector<std::string> keywords;
    std::optional<std::string> highlight, account, timestamp, url;
  };
  IngestResult result;
  std::vector<Raw> raws;
  std::unordered_set<std::string> seen;
  const std::set<std::string> allow(options.account_allowlist.begin(), options.account_allowlist.end());
  std::string line;
  while (std::getline(in, line)) {
    ++result.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      if (line.find_first_not_of(" \t") == std::string::npos) throw std::invalid_argument("blank line");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error&) {
        throw std::invalid_argument("malformed JSON");
      }
      if (!j.is_object()) throw std::invalid_argument("not a JSON object");
      Raw r;
      r.id = detail::required_text(j, "id");
      r.tweet = detail::required_text(j, "tweet_text");
      r.headline = detail::required_text(j, "headline");
      r.article = detail::required_text(j, "article_text");
      r.highlight = detail::string_field(j, "highlight");
      r.account = detail::string_field(j, "account");
      r.timestamp = detail::string_field(j, "timestamp");
      r.url = detail::string_field(j, "url");
      if (auto it = j.find("keywords"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw std::invalid_argument("'keywords' must be a list");
        for (const auto& kw : *it) {
          if (!kw.is_string()) throw std::invalid_argument("'keywords' entries must be strings");
          r.keywords.push_back(kw.get<std::string>());
        }
      }
      if (options.require_indicative_url && r.url) {
        const std::string lower = detail::ascii_lower(*r.url);
        if (!lower.starts_with("http://") && !lower.starts_with("https://"))
          throw std::invalid_argument("not an indicative tweet: url is not an http(s) link");
      }
      if (!allow.empty() && (!r.account || allow.count(*r.account) == 0))
        throw std::invalid_argument("account not in allowlist");
      if (!seen.insert(r.id).second) throw std::invalid_argument("duplicate id '" + r.id + "'");
      raws.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      result.skipped.push_back({result.lines, e.what()});
    }
  }
  if (in.bad()) throw InputError("read error while ingesting");
  result.records.resize(raws.size());
  parallel_for(raws.size(), options.threads, [&](std::size_t i) {
    Raw& raw = raws[i];
    Record rec = make_record(raw.id, raw.article, raw.headline, raw.tweet, norm);
    rec.keywords = std::move(raw.keywords);
    rec.highlight = std::move(raw.highlight);
    rec.account = std::move(raw.account);
    rec.timestamp = std::move(raw.timestamp);
    rec.url = std::move(raw.url);
    result.records[i] = std::move(rec);
  });
  return result;
}

inline IngestResult ingest(const std::string& path, const NormConfig& norm,
                           const IngestOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read corpus file: " + path);
  return ingest(in, norm, options);
}

// Normalized record as stored in records.ndjson.
inline nlohmann::json to_json(const Record& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["domain"] = r.domain ? nlohmann::json(*r.domain) : nlohmann::json(nullptr);
  j["tweet_text"] = r.tweet;
  j["tweet_clean"] = r.tweet_clean;
  j["tweet_tokens"] = r.tweet_text.tokens;
  j["headline"] = r.headline;
  j["headline_tokens"] = r.headline_text.tokens;
  j["article_text"] = r.article;
  j["article_sentences"] = r.article_sentences.raw_sentences;
  nlohmann::json sentence_tokens = nlohmann::json::array();
  for (const auto& s : r.article_sentences.sentences) sentence_tokens.push_back(s.tokens);
  j["sentence_tokens"] = std::move(sentence_tokens);
  j["keywords"] = r.keywords;
  const auto opt = [](const std::optional<std::string>& s) {
    return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
  };
  j["highlight"] = opt(r.highlight);
  j["account"] = opt(r.account);
  j["timestamp"] = opt(r.timestamp);
  j["url"] = opt(r.url);
  return j;
}

inline Record record_from_json(const nlohmann::json& j) {
  Record r;
  r.id = j.at("id").get<std::string>();
  if (!j.at("domain").is_null()) r.domain = j.at("domain").get<DomainId>();
  r.tweet = j.at("tweet_text").get<std::string>();
  r.tweet_clean = j.at("tweet_clean").get<std::string>();
  r.tweet_text = NormalizedText::from_tokens(j.at("tweet_tokens").get<std::vector<std::string>>(),
                                             word_count(r.tweet_clean));
  r.headline = j.at("headline").get<std::string>();
  r.headline_text = NormalizedText::from_tokens(
      j.at("headline_tokens").get<std::vector<std::string>>(), word_count(r.headline));
  r.article = j.at("article_text").get<std::string>();
  r.article_sentences.raw_sentences = j.at("article_sentences").get<std::vector<std::string>>();
  const auto& tokens = j.at("sentence_tokens");
  if (tokens.size() != r.article_sentences.raw_sentences.size())
    throw InputError("record '" + r.id + "': sentence and token lists differ in length");
  for (std::size_t i = 0; i < tokens.size(); ++i)
    r.article_sentences.sentences.push_back(NormalizedText::from_tokens(
        tokens[i].get<std::vector<std::string>>(), word_count(r.article_sentences.raw_sentences[i])));
  r.article_text = concatenate(r.article_sentences.sentences, 0, r.article_sentences.size());
  r.keywords = j.value("keywords", std::vector<std::string>{});
  const auto opt = [&](const char* key) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<std::string>();
  };
  r.highlight = opt("highlight");
  r.account = opt("account");
  r.timestamp = opt("timestamp");
  r.url = opt("url");
  return r;
}

inline void write_records_ndjson(std::ostream& out, const std::vector<Record>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline std::vector<Record> read_records_ndjson(std::istream& in) {
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("records line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

struct SplitSpec {
  std::size_t train = 250000;
  std::size_t validation = 2000;
  std::size_t test = 2000;
  bool domain_balance = true;
  double dedup_jaccard = 0.8;
  std::uint64_t seed = 1;
};

struct DedupRemoval {
  std::string id;
  std::string split;
  std::string duplicate_of;
  double jaccard = 0.0;
};

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
  std::vector<DedupRemoval> removed;
};

inline double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++inter; ++i; ++j; }
  }
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

namespace detail {

// For each probe set, the first indexed set (lowest index) with
// Jaccard >= threshold, found with prefix filtering: two sets reaching the
// threshold must share a term within the rarest |x| - ceil(t|x|) + 1 terms
// of each, under one global rarity order.
class JaccardIndex {
 public:
  JaccardIndex(const std::vector<const std::vector<std::string>*>& indexed,
               const std::vector<const std::vector<std::string>*>& probes, double threshold)
      : indexed_(indexed), threshold_(threshold) {
    std::unordered_map<std::string, std::size_t> df;
    for (const auto* set : indexed) for (const auto& t : *set) ++df[t];
    for (const auto* set : probes) for (const auto& t : *set) ++df[t];
    std::vector<std::pair<std::size_t, std::string>> order;
    order.reserve(df.size());
    for (auto& [t, n] : df) order.emplace_back(n, t);
    std::sort(order.begin(), order.end());
    for (std::size_t r = 0; r < order.size(); ++r) rank_[order[r].second] = r;
    for (std::size_t i = 0; i < indexed.size(); ++i)
      for (std::size_t r : prefix(*indexed[i])) postings_[r].push_back(i);
  }

  std::optional<std::pair<std::size_t, double>> find(const std::vector<std::string>& probe) const {
    if (threshold_ <= 0.0) {
      if (indexed_.empty()) return std::nullopt;
      return std::make_pair(std::size_t{0}, jaccard(probe, *indexed_[0]));
    }
    std::set<std::size_t> candidates;
    for (std::size_t r : prefix(probe)) {
      auto it = postings_.find(r);
      if (it != postings_.end()) candidates.insert(it->second.begin(), it->second.end());
    }
    for (std::size_t c : candidates) {
      const double jac = jaccard(probe, *indexed_[c]);
      if (jac >= threshold_ - 1e-12) return std::make_pair(c, jac);
    }
    return std::nullopt;
  }

 private:
  std::vector<std::size_t> prefix(const std::vector<std::string>& set) const {
    std::vector<std::size_t> ranks;
    ranks.reserve(set.size());
    for (const auto& t : set) ranks.push_back(rank_.at(t));
    std::sort(ranks.begin(), ranks.end());
    const double need = std::ceil(threshold_ * static_cast<double>(set.size()) - 1e-9);
    const std::size_t keep =
        std::min(set.size(), set.size() - static_cast<std::size_t>(std::max(need, 0.0)) + 1);
    ranks.resize(keep);
    return ranks;
  }

  std::vector<const std::vector<std::string>*> indexed_;
  double threshold_;
  std::unordered_map<std::string, std::size_t> rank_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> postings_;
};

}  // namespace detail

// Seeded, optionally domain-stratified split into train / validation /
// test. Validation and test records whose article unigrams reach the
// Jaccard threshold against any training article are dropped and logged.
inline SplitResult split(const std::vector<Record>& records, const SplitSpec& spec,
                         std::optional<std::size_t> domain_count = std::nullopt) {
  Rng rng(spec.seed);
  std::vector<std::size_t> train_idx, val_idx, test_idx;
  if (spec.domain_balance) {
    std::size_t domains = domain_count.value_or(0);
    if (!domain_count)
      for (const auto& r : records)
        if (r.domain) domains = std::max(domains, *r.domain + 1);
    if (domains == 0) throw InsufficientRecords("domain-balanced split needs domain assignments");
    std::vector<std::vector<std::size_t>> by_domain(domains);
    for (std::size_t i = 0; i < records.size(); ++i)
      if (records[i].domain && *records[i].domain < domains) by_domain[*records[i].domain].push_back(i);
    const auto quota = [&](std::size_t total, std::size_t d) {
      return total / domains + (d < total % domains ? 1 : 0);
    };
    for (std::size_t d = 0; d < domains; ++d) {
      auto& pool = by_domain[d];
      const std::size_t ntr = quota(spec.train, d), nva = quota(spec.validation, d),
                        nte = quota(spec.test, d);
      if (pool.size() < ntr + nva + nte)
        throw InsufficientRecords("domain " + std::to_string(d) + " has " +
                                  std::to_string(pool.size()) + " records, needs " +
                                  std::to_string(ntr + nva + nte));
      rng.shuffle(pool);
      train_idx.insert(train_idx.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(ntr));
      val_idx.insert(val_idx.end(), pool.begin() + static_cast<std::ptrdiff_t>(ntr),
                     pool.begin() + static_cast<std::ptrdiff_t>(ntr + nva));
      test_idx.insert(test_idx.end(), pool.begin() + static_cast<std::ptrdiff_t>(ntr + nva),
                      pool.begin() + static_cast<std::ptrdiff_t>(ntr + nva + nte));
    }
  } else {
    std::vector<std::size_t> pool(records.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    if (pool.size() < spec.train + spec.validation + spec.test)
      throw InsufficientRecords("corpus has " + std::to_string(pool.size()) + " records, needs " +
                                std::to_string(spec.train + spec.validation + spec.test));
    rng.shuffle(pool);
    train_idx.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(spec.train));
    val_idx.assign(pool.begin() + static_cast<std::ptrdiff_t>(spec.train),
                   pool.begin() + static_cast<std::ptrdiff_t>(spec.train + spec.validation));
    test_idx.assign(pool.begin() + static_cast<std::ptrdiff_t>(spec.train + spec.validation),
                    pool.begin() + static_cast<std::ptrdiff_t>(spec.train + spec.validation + spec.test));
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  std::vector<const std::vector<std::string>*> train_sets, probe_sets;
  for (std::size_t i : train_idx) train_sets.push_back(&records[i].article_text.unigrams);
  for (std::size_t i : val_idx) probe_sets.push_back(&records[i].article_text.unigrams);
  for (std::size_t i : test_idx) probe_sets.push_back(&records[i].article_text.unigrams);
  const detail::JaccardIndex index(train_sets, probe_sets, spec.dedup_jaccard);

  SplitResult out;
  for (std::size_t i : train_idx) out.train.push_back(records[i].id);
  const auto filter = [&](const std::vector<std::size_t>& idx, const char* name,
                          std::vector<std::string>& kept) {
    for (std::size_t i : idx) {
      if (auto hit = index.find(records[i].article_text.unigrams)) {
        out.removed.push_back({records[i].id, name, records[train_idx[hit->first]].id, hit->second});
      } else {
        kept.push_back(records[i].id);
      }
    }
  };
  filter(val_idx, "validation", out.validation);
  filter(test_idx, "test", out.test);
  return out;
}

inline nlohmann::json to_json(const SplitResult& s) {
  nlohmann::json j;
  j["train"] = s.train;
  j["validation"] = s.validation;
  j["test"] = s.test;
  nlohmann::json removed = nlohmann::json::array();
  for (const auto& r : s.removed)
    removed.push_back({{"id", r.id}, {"split", r.split}, {"duplicate_of", r.duplicate_of}, {"jaccard", r.jaccard}});
  j["removed"] = std::move(removed);
  return j;
}

}  // namespace teasekit
