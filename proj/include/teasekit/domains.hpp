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
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "teasekit/error.hpp"
#include "teasekit/parallel.hpp"
#include "teasekit/random.hpp"
#include "teasekit/record.hpp"
#include "teasekit/textnorm.hpp"

namespace teasekit {

struct DocEmbedding {
  std::vector<double> vector;

  std::size_t dim() const noexcept { return vector.size(); }
  friend bool operator==(const DocEmbedding&, const DocEmbedding&) = default;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  // Throws ProviderFailure when the document cannot be embedded.
  virtual DocEmbedding embed(std::string_view record_id, const NormalizedText& article) const = 0;
};

// Bag-of-words TF-IDF over the `max_features` most frequent corpus terms
// (ties broken by term order), L2-normalized. Weights are raw term count
// times the smoothed idf ln((1 + N) / (1 + df)) + 1. Dimensions follow the
// lexicographic order of the retained vocabulary.
class TfidfEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit TfidfEmbeddingProvider(std::size_t max_features = 512) : max_features_(max_features) {}

  void fit(std::span<const NormalizedText* const> documents) {
    std::unordered_map<std::string, std::uint64_t> total;
    std::unordered_map<std::string, std::uint64_t> df;
    for (const NormalizedText* doc : documents) {
      for (const auto& token : doc->tokens) ++total[token];
      for (const auto& term : doc->unigrams) ++df[term];
    }
    std::vector<std::pair<std::string, std::uint64_t>> ranked(total.begin(), total.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (ranked.size() > max_features_) ranked.resize(max_features_);
    vocabulary_.clear();
    for (const auto& entry : ranked) vocabulary_.push_back(entry.first);
    std::sort(vocabulary_.begin(), vocabulary_.end());
    index_.clear();
    idf_.assign(vocabulary_.size(), 0.0);
    const double n = static_cast<double>(documents.size());
    for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
      index_[vocabulary_[i]] = i;
      idf_[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[vocabulary_[i]]))) + 1.0;
    }
    fitted_ = true;
  }

  std::string name() const override { return "tfidf"; }
  std::size_t dim() const override { return vocabulary_.size(); }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<double>& idf() const noexcept { return idf_; }

  DocEmbedding embed(std::string_view record_id, const NormalizedText& article) const override {
    if (!fitted_) throw ProviderFailure("tfidf provider used before fit()");
    DocEmbedding out{std::vector<double>(vocabulary_.size(), 0.0)};
    bool any = false;
    for (const auto& token : article.tokens) {
      auto it = index_.find(token);
      if (it == index_.end()) continue;
      out.vector[it->second] += idf_[it->second];
      any = true;
    }
    if (!any)
      throw ProviderFailure("record '" + std::string(record_id) + "' has no in-vocabulary terms");
    double norm = 0.0;
    for (double v : out.vector) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : out.vector) v /= norm;
    return out;
  }

 private:
  std::size_t max_features_;
  bool fitted_ = false;
  std::vector<std::string> vocabulary_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Vectors computed elsewhere (e.g. a Doc2vec run), read from NDJSON lines
// of the form {"record_id": "...", "vector": [...]}.
class PrecomputedEmbeddingProvider final : public EmbeddingProvider {
 public:
  static PrecomputedEmbeddingProvider load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read embeddings: " + path);
    PrecomputedEmbeddingProvider provider;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto where = path + ":" + std::to_string(line_no);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError(where + ": " + e.what());
      }
      if (!j.is_object() || !j.contains("record_id") || !j.contains("vector") ||
          !j["vector"].is_array())
        throw InputError(where + ": expected {record_id, vector}");
      std::string id = j["record_id"].is_string() ? j["record_id"].get<std::string>()
                                                  : j["record_id"].dump();
      DocEmbedding e;
      for (const auto& v : j["vector"]) {
        if (!v.is_number()) throw InputError(where + ": non-numeric vector component");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw InputError(where + ": non-finite vector component");
        e.vector.push_back(x);
      }
      if (provider.dim_ == 0) provider.dim_ = e.dim();
      if (e.dim() == 0 || e.dim() != provider.dim_)
        throw InputError(where + ": vector dimension mismatch");
      provider.vectors_[std::move(id)] = std::move(e);
    }
    return provider;
  }

  void add(std::string record_id, DocEmbedding e) {
    if (dim_ == 0) dim_ = e.dim();
    if (e.dim() != dim_) throw ProviderFailure("vector dimension mismatch");
    vectors_[std::move(record_id)] = std::move(e);
  }

  std::string name() const override { return "precomputed"; }
  std::size_t dim() const override { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  DocEmbedding embed(std::string_view record_id, const NormalizedText&) const override {
    auto it = vectors_.find(std::string(record_id));
    if (it == vectors_.end())
      throw ProviderFailure("no precomputed vector for record '" + std::string(record_id) + "'");
    return it->second;
  }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, DocEmbedding> vectors_;
};

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

struct KMeansOptions {
  std::size_t k = 8;
  std::uint64_t seed = 1;
  std::size_t max_iter = 100;
  double tol = 1e-6;
  // Independent seedings; the lowest-SSE run is kept.
  std::size_t restarts = 4;
  std::size_t threads = 0;
};

struct KMeansResult {
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> assignments;
  double sse = 0.0;
  // SSE after every iteration's centroid update.
  std::vector<double> sse_history;
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline void check_points(std::span<const DocEmbedding> points, std::size_t k) {
  if (k == 0) throw InvalidK("k must be >= 1");
  if (k > points.size())
    throw InvalidK("k = " + std::to_string(k) + " exceeds point count " +
                   std::to_string(points.size()));
  const std::size_t dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) throw std::invalid_argument("kmeans: mixed embedding dimensions");
    for (double x : p.vector)
      if (!std::isfinite(x)) throw std::invalid_argument("kmeans: non-finite component");
  }
}

}  // namespace detail

// D^2-weighted seeding (k-means++): the first centre is drawn uniformly,
// each further centre with probability proportional to its squared distance
// from the nearest centre chosen so far.
inline std::vector<std::vector<double>> seed_centroids(std::span<const DocEmbedding> points,
                                                       std::size_t k, std::uint64_t seed) {
  detail::check_points(points, k);
  Rng rng(seed);
  std::vector<std::vector<double>> centroids;
  std::vector<bool> chosen(points.size(), false);
  std::size_t first = static_cast<std::size_t>(rng.below(points.size()));
  centroids.push_back(points[first].vector);
  chosen[first] = true;
  std::vector<double> nearest(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    nearest[i] = squared_distance(points[i].vector, centroids[0]);
  while (centroids.size() < k) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = points.size();
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (nearest[i] <= 0.0) continue;
        acc += nearest[i];
        pick = i;
        if (acc > target) break;
      }
    }
    if (pick == points.size()) {
      // Every point coincides with a centre: take the first unused one.
      pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
    }
    chosen[pick] = true;
    centroids.push_back(points[pick].vector);
    for (std::size_t i = 0; i < points.size(); ++i)
      nearest[i] = std::min(nearest[i], squared_distance(points[i].vector, centroids.back()));
  }
  return centroids;
}

// Lloyd iterations from the given centres. An empty cluster takes over the
// point farthest from its current centre.
inline KMeansResult kmeans_from(std::span<const DocEmbedding> points,
                                std::vector<std::vector<double>> centroids,
                                const KMeansOptions& options) {
  detail::check_points(points, centroids.size());
  const std::size_t n = points.size();
  const std::size_t k = centroids.size();
  const std::size_t dim = points.front().dim();
  KMeansResult result;
  result.assignments.assign(n, 0);
  std::vector<double> dist(n, 0.0);

  for (std::size_t iter = 0; iter < std::max<std::size_t>(options.max_iter, 1); ++iter) {
    parallel_for(n, options.threads, [&](std::size_t i) {
      std::size_t best = 0;
      double best_d = squared_distance(points[i].vector, centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points[i].vector, centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      result.assignments[i] = best;
      dist[i] = best_d;
    });

    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t a : result.assignments) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[result.assignments[i]] <= 1) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      if (far == n) break;
      --sizes[result.assignments[far]];
      result.assignments[far] = c;
      sizes[c] = 1;
      dist[far] = 0.0;
      centroids[c] = points[far].vector;
    }

    std::vector<std::vector<double>> updated(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      auto& sum = updated[result.assignments[i]];
      for (std::size_t d = 0; d < dim; ++d) sum[d] += points[i].vector[d];
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) {
        updated[c] = centroids[c];
        continue;
      }
      for (double& v : updated[c]) v /= static_cast<double>(sizes[c]);
      shift = std::max(shift, std::sqrt(squared_distance(updated[c], centroids[c])));
    }
    centroids = std::move(updated);

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sse += squared_distance(points[i].vector, centroids[result.assignments[i]]);
    result.sse_history.push_back(sse);
    result.iterations = iter + 1;
    if (shift < options.tol) {
      result.converged = true;
      break;
    }
  }
  result.centroids = std::move(centroids);
  result.sse = result.sse_history.back();
  return result;
}

inline KMeansResult kmeans(std::span<const DocEmbedding> points, const KMeansOptions& options) {
  if (points.empty()) throw InvalidK("kmeans: no points");
  detail::check_points(points, options.k);
  std::optional<KMeansResult> best;
  const std::size_t runs = std::max<std::size_t>(options.restarts, 1);
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t seed = r == 0 ? options.seed : detail::splitmix64(options.seed + r);
    KMeansResult run = kmeans_from(points, seed_centroids(points, options.k, seed), options);
    if (!best || run.sse < best->sse) best = std::move(run);
  }
  return std::move(*best);
}

struct ElbowOptions {
  // A knee needs its drop to dwarf the next one by this factor...
  double min_drop_ratio = 3.0;
  // ...and to remove at least this fraction of the previous SSE.
  double min_relative_drop = 0.5;
};

struct ElbowReport {
  std::map<std::size_t, double> sse_by_k;
  std::map<std::size_t, double> drop_ratio;
  std::size_t suggested_k = 1;
};

// Suggests the k with the largest (sse[k-1] - sse[k]) / (sse[k] - sse[k+1])
// over consecutive entries of k_values. When no knee clears the thresholds
// in `elbow`, the smallest k is suggested.
inline ElbowReport suggest_k(const std::map<std::size_t, double>& sse_by_k,
                             const ElbowOptions& elbow = {}) {
  ElbowReport report;
  report.sse_by_k = sse_by_k;
  if (sse_by_k.empty()) throw InvalidK("elbow: empty k range");
  report.suggested_k = sse_by_k.begin()->first;
  std::vector<std::pair<std::size_t, double>> seq(sse_by_k.begin(), sse_by_k.end());
  const double scale = std::max(seq.front().second, std::numeric_limits<double>::min());
  double best_ratio = -1.0;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    const double drop = seq[i - 1].second - seq[i].second;
    const double next = seq[i].second - seq[i + 1].second;
    double ratio;
    if (next <= 1e-12 * scale)
      ratio = drop > 1e-12 * scale ? std::numeric_limits<double>::infinity() : 0.0;
    else
      ratio = drop / next;
    report.drop_ratio[seq[i].first] = ratio;
    const double relative = seq[i - 1].second > 0.0 ? drop / seq[i - 1].second : 0.0;
    if (ratio >= elbow.min_drop_ratio && relative >= elbow.min_relative_drop && ratio > best_ratio) {
      best_ratio = ratio;
      report.suggested_k = seq[i].first;
    }
  }
  return report;
}

inline ElbowReport elbow_scan(std::span<const DocEmbedding> points,
                              const std::vector<std::size_t>& k_values,
                              const KMeansOptions& base, const ElbowOptions& elbow = {}) {
  if (k_values.empty()) throw InvalidK("elbow: empty k range");
  if (!std::is_sorted(k_values.begin(), k_values.end()) ||
      std::adjacent_find(k_values.begin(), k_values.end()) != k_values.end())
    throw InvalidK("elbow: k range must be strictly increasing");
  std::map<std::size_t, double> sse;
  for (std::size_t k : k_values) {
    KMeansOptions options = base;
    options.k = k;
    sse[k] = kmeans(points, options).sse;
  }
  return suggest_k(sse, elbow);
}

struct DomainModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::string provider;
  std::uint64_t seed = 0;
  double sse = 0.0;
  std::vector<std::vector<double>> centroids;
  std::map<std::string, DomainId> assignments;
  // Records the provider could not embed; excluded from every statistic.
  std::vector<std::string> unclustered;
  std::vector<std::map<std::string, std::uint64_t>> term_counts;
  std::vector<std::uint64_t> total_terms;
  std::vector<std::size_t> domain_sizes;
  std::vector<double> avg_article_words;

  std::optional<DomainId> domain_of(const std::string& record_id) const {
    auto it = assignments.find(record_id);
    if (it == assignments.end()) return std::nullopt;
    return it->second;
  }
};

// Recomputes per-domain term counts and sizes from the records'
// assignments. Only article tokens are counted.
inline void accumulate_domain_statistics(DomainModel& model, const std::vector<Record>& records) {
  model.term_counts.assign(model.k, {});
  model.total_terms.assign(model.k, 0);
  model.domain_sizes.assign(model.k, 0);
  std::vector<double> words(model.k, 0.0);
  for (const auto& r : records) {
    auto d = model.domain_of(r.id);
    if (!d) continue;
    auto& counts = model.term_counts[*d];
    for (const auto& token : r.article_text.tokens) ++counts[token];
    model.total_terms[*d] += r.article_text.tokens.size();
    ++model.domain_sizes[*d];
    words[*d] += static_cast<double>(word_count(r.article));
  }
  model.avg_article_words.assign(model.k, 0.0);
  for (std::size_t d = 0; d < model.k; ++d)
    if (model.domain_sizes[d] > 0)
      model.avg_article_words[d] = words[d] / static_cast<double>(model.domain_sizes[d]);
}

// Embeds every record's article, clusters the embeddings and builds the
// model. Records the provider rejects land in `unclustered`.
inline DomainModel cluster_records(const std::vector<Record>& records,
                                   const EmbeddingProvider& provider,
                                   const KMeansOptions& options) {
  std::vector<std::optional<DocEmbedding>> embedded(records.size());
  parallel_for(records.size(), options.threads, [&](std::size_t i) {
    try {
      embedded[i] = provider.embed(records[i].id, records[i].article_text);
    } catch (const ProviderFailure&) {
    }
  });
  DomainModel model;
  std::vector<DocEmbedding> points;
  std::vector<std::size_t> owners;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (embedded[i]) {
      points.push_back(std::move(*embedded[i]));
      owners.push_back(i);
    } else {
      model.unclustered.push_back(records[i].id);
    }
  }
  if (points.empty()) throw InvalidK("no record could be embedded");
  KMeansResult km = kmeans(points, options);
  model.k = options.k;
  model.dim = points.front().dim();
  model.provider = provider.name();
  model.seed = options.seed;
  model.sse = km.sse;
  model.centroids = std::move(km.centroids);
  for (std::size_t p = 0; p < owners.size(); ++p)
    model.assignments[records[owners[p]].id] = km.assignments[p];
  accumulate_domain_statistics(model, records);
  return model;
}

inline void assign_domains(std::vector<Record>& records, const DomainModel& model) {
  for (auto& r : records) r.domain = model.domain_of(r.id);
}

using KeywordCounts = std::vector<std::pair<std::string, std::size_t>>;

// Per domain, the top_n keywords by frequency (ties by keyword order) among
// the records assigned to it.
inline std::vector<KeywordCounts> keyword_report(
    const DomainModel& model, const std::map<std::string, std::vector<std::string>>& keywords,
    std::size_t top_n) {
  std::vector<std::map<std::string, std::size_t>> counts(model.k);
  for (const auto& [id, list] : keywords) {
    auto d = model.domain_of(id);
    if (!d) continue;
    for (const auto& kw : list) ++counts[*d][kw];
  }
  std::vector<KeywordCounts> out(model.k);
  for (std::size_t d = 0; d < model.k; ++d) {
    out[d].assign(counts[d].begin(), counts[d].end());
    std::stable_sort(out[d].begin(), out[d].end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (out[d].size() > top_n) out[d].resize(top_n);
  }
  return out;
}

struct ClusterDiagnostics {
  std::map<std::size_t, double> sse_by_k;
  std::optional<std::size_t> suggested_k;
  std::vector<KeywordCounts> top_keywords;
  std::vector<double> avg_article_words;
};

inline nlohmann::json to_json(const DomainModel& model) {
  nlohmann::json j;
  j["k"] = model.k;
  j["dim"] = model.dim;
  j["provider"] = model.provider;
  j["seed"] = model.seed;
  j["sse"] = model.sse;
  j["centroids"] = model.centroids;
  j["assignments"] = model.assignments;
  j["unclustered"] = model.unclustered;
  j["term_counts"] = model.term_counts;
  j["total_terms"] = model.total_terms;
  j["domain_sizes"] = model.domain_sizes;
  j["avg_article_words"] = model.avg_article_words;
  return j;
}

inline DomainModel domain_model_from_json(const nlohmann::json& j) {
  DomainModel m;
  try {
    m.k = j.at("k").get<std::size_t>();
    m.dim = j.at("dim").get<std::size_t>();
    m.provider = j.value("provider", std::string{});
    m.seed = j.value("seed", std::uint64_t{0});
    m.sse = j.value("sse", 0.0);
    m.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
    m.assignments = j.at("assignments").get<std::map<std::string, DomainId>>();
    m.unclustered = j.value("unclustered", std::vector<std::string>{});
    m.term_counts = j.at("term_counts").get<std::vector<std::map<std::string, std::uint64_t>>>();
    m.total_terms = j.at("total_terms").get<std::vector<std::uint64_t>>();
    m.domain_sizes = j.value("domain_sizes", std::vector<std::size_t>(m.k, 0));
    m.avg_article_words = j.value("avg_article_words", std::vector<double>(m.k, 0.0));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed domain model: ") + e.what());
  }
  if (m.term_counts.size() != m.k || m.total_terms.size() != m.k)
    throw InputError("malformed domain model: per-domain arrays do not match k");
  for (const auto& [id, d] : m.assignments)
    if (d >= m.k) throw InputError("malformed domain model: domain id out of range for " + id);
  return m;
}

}  // namespace teasekit
