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
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "teasekit/domains.hpp"
#include "teasekit/error.hpp"
#include "teasekit/io.hpp"
#include "teasekit/relevance.hpp"

namespace teasekit {

// True when cumulative/total reaches target, allowing for the rounding of
// a target such as 0.8 that has no exact binary form.
inline bool meets_coverage(std::uint64_t cumulative, std::uint64_t total, double target) {
  return static_cast<double>(cumulative) / static_cast<double>(total) >= target - 1e-12;
}

// Per domain, the shortest frequency-ranked prefix of the vocabulary whose
// occurrences cover `coverage_target` of the domain's tokens.
struct ParetoSet {
  double coverage_target = 0.8;
  std::vector<std::vector<std::string>> terms;
  std::vector<double> achieved_coverage;
  std::vector<std::size_t> set_sizes;

  bool contains(DomainId domain, const std::string& term) const {
    return members_.at(domain).count(term) != 0;
  }

  void index() {
    members_.clear();
    for (const auto& list : terms) members_.emplace_back(list.begin(), list.end());
  }

 private:
  std::vector<std::unordered_set<std::string>> members_;
};

inline ParetoSet pareto_sets(const DomainModel& model, double coverage) {
  if (!(coverage > 0.0 && coverage < 1.0)) throw std::invalid_argument("coverage must be in (0, 1)");
  ParetoSet out;
  out.coverage_target = coverage;
  for (DomainId d = 0; d < model.k; ++d) {
    if (model.total_terms[d] == 0) throw EmptyDomain(d);
    std::vector<std::pair<std::string, std::uint64_t>> ranked(model.term_counts[d].begin(),
                                                              model.term_counts[d].end());
    // term_counts is ordered by term, so a stable sort keeps ties lexicographic.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> prefix;
    std::uint64_t cumulative = 0;
    for (const auto& [term, n] : ranked) {
      if (n == 0) continue;
      prefix.push_back(term);
      cumulative += n;
      if (meets_coverage(cumulative, model.total_terms[d], coverage)) break;
    }
    out.achieved_coverage.push_back(static_cast<double>(cumulative) /
                                    static_cast<double>(model.total_terms[d]));
    out.set_sizes.push_back(prefix.size());
    out.terms.push_back(std::move(prefix));
  }
  out.index();
  return out;
}

// A record that survived the extractivity and abstractivity checks, with
// its non-overlap words.
struct ThresholdInput {
  std::string id;
  DomainId domain = 0;
  std::vector<std::string> nonoverlap;
};

struct ThresholdCurve {
  std::vector<double> candidates;
  // [domain][candidate]
  std::vector<std::vector<double>> overlap_ratio;
  std::vector<std::vector<std::size_t>> n_qualifying;
  std::optional<double> selected;

  std::size_t domains() const noexcept { return overlap_ratio.size(); }
  // No record qualified: the ratio is reported as 0.
  bool flagged(DomainId d, std::size_t c) const { return n_qualifying[d][c] == 0; }
};

inline std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0 && hi > lo) || points == 0) throw std::invalid_argument("bad threshold grid");
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

// For each (domain, candidate t): among the domain's records having at least
// one non-overlap word with dr < t, the fraction whose non-overlap words all
// belong to the domain's Pareto set.
inline ThresholdCurve overlap_ratio_curve(const std::vector<double>& candidates,
                                          const std::vector<ThresholdInput>& records,
                                          const RelevanceMatrix& matrix, const ParetoSet& pareto) {
  if (!std::is_sorted(candidates.begin(), candidates.end()))
    throw std::invalid_argument("threshold candidates must be ascending");
  const std::size_t domains = matrix.domains();
  // (min dr over T', T' within the Pareto set) per record, grouped by domain.
  std::vector<std::vector<std::pair<double, bool>>> per_domain(domains);
  for (const auto& r : records) {
    if (r.nonoverlap.empty()) continue;
    if (r.domain >= domains) throw std::out_of_range("record domain outside the matrix");
    double min_dr = std::numeric_limits<double>::infinity();
    bool subset = true;
    for (const auto& w : r.nonoverlap) {
      min_dr = std::min(min_dr, matrix.lookup(r.domain, w));
      if (subset && !pareto.contains(r.domain, w)) subset = false;
    }
    per_domain[r.domain].emplace_back(min_dr, subset);
  }
  ThresholdCurve curve;
  curve.candidates = candidates;
  curve.overlap_ratio.assign(domains, std::vector<double>(candidates.size(), 0.0));
  curve.n_qualifying.assign(domains, std::vector<std::size_t>(candidates.size(), 0));
  for (DomainId d = 0; d < domains; ++d) {
    auto& items = per_domain[d];
    std::sort(items.begin(), items.end());
    std::size_t qualifying = 0;
    std::size_t overlapping = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      while (qualifying < items.size() && items[qualifying].first < candidates[c]) {
        if (items[qualifying].second) ++overlapping;
        ++qualifying;
      }
      curve.n_qualifying[d][c] = qualifying;
      curve.overlap_ratio[d][c] =
          qualifying == 0 ? 0.0 : static_cast<double>(overlapping) / static_cast<double>(qualifying);
    }
  }
  return curve;
}

// The largest candidate below which (inclusive) every domain shows zero
// overlap. If the very first candidate already overlaps somewhere, falls
// back to the candidate with the smallest worst-domain ratio, preferring
// the smaller candidate on ties.
inline double select_threshold(const ThresholdCurve& curve) {
  if (curve.candidates.empty()) throw std::invalid_argument("empty threshold curve");
  const auto worst = [&](std::size_t c) {
    double m = 0.0;
    for (const auto& row : curve.overlap_ratio) m = std::max(m, row[c]);
    return m;
  };
  std::optional<std::size_t> boundary;
  for (std::size_t c = 0; c < curve.candidates.size(); ++c) {
    if (worst(c) != 0.0) break;
    boundary = c;
  }
  if (boundary) return curve.candidates[*boundary];
  std::size_t best = 0;
  for (std::size_t c = 1; c < curve.candidates.size(); ++c)
    if (worst(c) < worst(best)) best = c;
  return curve.candidates[best];
}

inline void write_curve_tsv(std::ostream& out, const ThresholdCurve& curve) {
  out << "candidate\tdomain\tratio\tn_qualifying\n";
  for (std::size_t c = 0; c < curve.candidates.size(); ++c)
    for (DomainId d = 0; d < curve.domains(); ++d)
      out << format_double(curve.candidates[c]) << '\t' << d << '\t'
          << format_double(curve.overlap_ratio[d][c]) << '\t' << curve.n_qualifying[d][c] << '\n';
}

}  // namespace teasekit
