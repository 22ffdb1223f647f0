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

#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "teasekit/domains.hpp"
#include "teasekit/error.hpp"

namespace teasekit {

namespace detail {

inline void check_domain(DomainId domain, const DomainModel& model) {
  if (domain >= model.k)
    throw std::out_of_range("domain " + std::to_string(domain) + " out of range (k = " +
                            std::to_string(model.k) + ")");
}

inline std::uint64_t term_count(const std::string& term, DomainId domain, const DomainModel& model) {
  const auto& counts = model.term_counts[domain];
  auto it = counts.find(term);
  return it == counts.end() ? 0 : it->second;
}

}  // namespace detail

// Occurrences of `term` among the domain's article tokens over the domain's
// total token count.
inline double tf_domain(const std::string& term, DomainId domain, const DomainModel& model) {
  detail::check_domain(domain, model);
  if (model.total_terms[domain] == 0) throw EmptyDomain(domain);
  return static_cast<double>(detail::term_count(term, domain, model)) /
         static_cast<double>(model.total_terms[domain]);
}

// ln(|domains| / |domains containing term|).
inline double idf_domain(const std::string& term, const DomainModel& model) {
  std::size_t containing = 0;
  for (DomainId d = 0; d < model.k; ++d)
    if (detail::term_count(term, d, model) > 0) ++containing;
  if (containing == 0) throw UnknownTerm(term);
  return std::log(static_cast<double>(model.k) / static_cast<double>(containing));
}

inline double domain_relevance(const std::string& term, DomainId domain, const DomainModel& model) {
  const double tf = tf_domain(term, domain, model);
  return tf * idf_domain(term, model);
}

// dr value for every (domain, term) pair of the corpus vocabulary.
class RelevanceMatrix {
 public:
  RelevanceMatrix() = default;
  RelevanceMatrix(std::size_t domains, double default_oov)
      : domains_(domains), default_oov_(default_oov) {}

  std::size_t domains() const noexcept { return domains_; }
  double default_oov() const noexcept { return default_oov_; }
  std::size_t vocabulary_size() const noexcept { return rows_.size(); }

  bool contains(const std::string& term) const { return rows_.count(term) != 0; }

  // dr(term, domain); terms outside the vocabulary get default_oov.
  double lookup(DomainId domain, const std::string& term) const {
    if (domain >= domains_) throw std::out_of_range("domain out of range for relevance matrix");
    auto it = rows_.find(term);
    return it == rows_.end() ? default_oov_ : it->second[domain];
  }

  const std::vector<double>& row(const std::string& term) const { return rows_.at(term); }

  void set_row(std::string term, std::vector<double> values) {
    if (values.size() != domains_) throw std::invalid_argument("row width does not match domains");
    for (double v : values)
      if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("dr must be finite and >= 0");
    rows_[std::move(term)] = std::move(values);
  }

  std::vector<std::string> vocabulary() const {
    std::vector<std::string> terms;
    terms.reserve(rows_.size());
    for (const auto& [term, _] : rows_) terms.push_back(term);
    std::sort(terms.begin(), terms.end());
    return terms;
  }

 private:
  std::size_t domains_ = 0;
  double default_oov_ = 0.0;
  std::unordered_map<std::string, std::vector<double>> rows_;
};

inline RelevanceMatrix build_matrix(const DomainModel& model, double default_oov = 0.0) {
  for (DomainId d = 0; d < model.k; ++d)
    if (model.total_terms[d] == 0) throw EmptyDomain(d);
  std::map<std::string, std::vector<std::uint64_t>> counts;
  for (DomainId d = 0; d < model.k; ++d) {
    for (const auto& [term, n] : model.term_counts[d]) {
      if (n == 0) continue;
      auto& row = counts[term];
      if (row.empty()) row.assign(model.k, 0);
      row[d] = n;
    }
  }
  RelevanceMatrix matrix(model.k, default_oov);
  for (auto& [term, row] : counts) {
    std::size_t containing = 0;
    for (auto n : row)
      if (n > 0) ++containing;
    const double idf =
        std::log(static_cast<double>(model.k) / static_cast<double>(containing));
    std::vector<double> dr(model.k, 0.0);
    for (DomainId d = 0; d < model.k; ++d)
      dr[d] = static_cast<double>(row[d]) / static_cast<double>(model.total_terms[d]) * idf;
    matrix.set_row(term, std::move(dr));
  }
  return matrix;
}

// One {"domain", "term", "dr"} object per line, terms in lexicographic
// order, every domain listed for every term.
inline void write_matrix_ndjson(std::ostream& out, const RelevanceMatrix& matrix) {
  for (const auto& term : matrix.vocabulary()) {
    const auto& row = matrix.row(term);
    for (DomainId d = 0; d < matrix.domains(); ++d) {
      nlohmann::json j;
      j["domain"] = d;
      j["term"] = term;
      j["dr"] = row[d];
      out << j.dump() << '\n';
    }
  }
}

inline RelevanceMatrix read_matrix_ndjson(std::istream& in, double default_oov = 0.0) {
  std::map<std::string, std::map<DomainId, double>> cells;
  std::size_t domains = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto d = j.at("domain").get<DomainId>();
      cells[j.at("term").get<std::string>()][d] = j.at("dr").get<double>();
      domains = std::max(domains, d + 1);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("dr matrix line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  RelevanceMatrix matrix(domains, default_oov);
  for (auto& [term, row] : cells) {
    std::vector<double> values(domains, 0.0);
    for (const auto& [d, v] : row) values[d] = v;
    try {
      matrix.set_row(term, std::move(values));
    } catch (const std::invalid_argument& e) {
      throw InputError("dr matrix term '" + term + "': " + e.what());
    }
  }
  return matrix;
}

}  // namespace teasekit
