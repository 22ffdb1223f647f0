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

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "teasekit/config.hpp"
#include "teasekit/corpus.hpp"
#include "teasekit/domains.hpp"
#include "teasekit/error.hpp"
#include "teasekit/io.hpp"
#include "teasekit/recognizer.hpp"
#include "teasekit/relevance.hpp"
#include "teasekit/stats.hpp"
#include "teasekit/threshold.hpp"

namespace teasekit {

inline constexpr std::string_view kVersion = "0.1.0";

namespace artifact {
inline constexpr const char* kRecords = "records.ndjson";
inline constexpr const char* kDomainModel = "domain_model.json";
inline constexpr const char* kMatrix = "dr_matrix.ndjson";
inline constexpr const char* kCurve = "threshold_curve.tsv";
inline constexpr const char* kVerdicts = "verdicts.ndjson";
inline constexpr const char* kPruneReport = "prune_report.tsv";
inline constexpr const char* kHistograms = "histograms.tsv";
inline constexpr const char* kSplits = "splits.json";
inline constexpr const char* kManifest = "manifest.json";
}  // namespace artifact

inline constexpr std::array<std::string_view, 7> kStageNames = {
    "normalize", "cluster", "relevance", "threshold", "recognize", "stats", "split"};

// ---- stage bodies, shared by `run` and the single-stage subcommands ----

inline IngestOptions ingest_options(const PipelineConfig& config) {
  IngestOptions o;
  o.require_indicative_url = config.require_indicative_url;
  o.account_allowlist = config.account_allowlist;
  o.threads = config.threads;
  return o;
}

inline KMeansOptions kmeans_options(const PipelineConfig& config) {
  KMeansOptions o;
  o.k = config.k;
  o.seed = config.seed;
  o.max_iter = config.kmeans_max_iter;
  o.tol = config.kmeans_tol;
  o.restarts = config.kmeans_restarts;
  o.threads = config.threads;
  return o;
}

// Clusters the records with the configured embedding, or loads the model
// named by domain_model_path.
inline DomainModel build_domain_model(const std::vector<Record>& records,
                                      const PipelineConfig& config) {
  if (!config.domain_model_path.empty()) {
    DomainModel model = domain_model_from_json([&] {
      try {
        return nlohmann::json::parse(read_file(config.domain_model_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed domain model " + config.domain_model_path + ": " + e.what());
      }
    }());
    return model;
  }
  if (config.embedding_kind() == EmbeddingKind::Precomputed) {
    const auto provider = PrecomputedEmbeddingProvider::load(config.embedding_path);
    return cluster_records(records, provider, kmeans_options(config));
  }
  TfidfEmbeddingProvider provider(config.embedding_dim);
  std::vector<const NormalizedText*> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(&r.article_text);
  provider.fit(docs);
  return cluster_records(records, provider, kmeans_options(config));
}

inline nlohmann::json domain_model_document(const DomainModel& model,
                                            const std::vector<Record>& records,
                                            std::size_t top_n) {
  std::map<std::string, std::vector<std::string>> keywords;
  for (const auto& r : records)
    if (!r.keywords.empty()) keywords[r.id] = r.keywords;
  nlohmann::json j = to_json(model);
  nlohmann::json top = nlohmann::json::array();
  for (const auto& domain : keyword_report(model, keywords, top_n)) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [kw, n] : domain) list.push_back({kw, n});
    top.push_back(std::move(list));
  }
  j["top_keywords"] = std::move(top);
  return j;
}

inline std::vector<ThresholdInput> threshold_inputs(const std::vector<RecognitionVerdict>& verdicts) {
  std::vector<ThresholdInput> out;
  for (const auto& v : verdicts)
    if (v.passed_abstractivity() && v.domain) out.push_back({v.id, *v.domain, v.nonoverlap_words});
  return out;
}

inline ThresholdCurve threshold_curve(const std::vector<RecognitionVerdict>& verdicts,
                                      const RelevanceMatrix& matrix, const DomainModel& model,
                                      const PipelineConfig& config) {
  const auto grid = geometric_grid(config.threshold_grid_min, config.threshold_grid_max,
                                   config.threshold_grid_points);
  ThresholdCurve curve = overlap_ratio_curve(grid, threshold_inputs(verdicts), matrix,
                                             pareto_sets(model, config.pareto_coverage));
  curve.selected = select_threshold(curve);
  return curve;
}

inline ThresholdCurve read_curve_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty threshold curve");
  std::map<double, std::map<DomainId, std::pair<double, std::size_t>>> cells;
  std::size_t domains = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double candidate = 0, ratio = 0;
    DomainId d = 0;
    std::size_t n = 0;
    if (!(ss >> candidate >> d >> ratio >> n))
      throw InputError("threshold curve line " + std::to_string(line_no) + ": malformed");
    cells[candidate][d] = {ratio, n};
    domains = std::max(domains, d + 1);
  }
  ThresholdCurve curve;
  curve.overlap_ratio.assign(domains, {});
  curve.n_qualifying.assign(domains, {});
  for (const auto& [candidate, row] : cells) {
    curve.candidates.push_back(candidate);
    for (DomainId d = 0; d < domains; ++d) {
      auto it = row.find(d);
      if (it == row.end()) throw InputError("threshold curve misses a domain");
      curve.overlap_ratio[d].push_back(it->second.first);
      curve.n_qualifying[d].push_back(it->second.second);
    }
  }
  if (!curve.candidates.empty()) curve.selected = select_threshold(curve);
  return curve;
}

// Recognition with a final threshold. Verdicts computed under any threshold
// can be re-decided, since only the last check depends on it.
inline std::vector<RecognitionVerdict> recognize(const std::vector<Record>& records,
                                                 const RelevanceMatrix& matrix,
                                                 const PipelineConfig& config, double threshold) {
  RecognizerParams params = config.recognizer_params();
  params.dr_threshold = threshold;
  return recognize_all(records, matrix, params, config.threads);
}

struct StatsResult {
  std::vector<std::pair<std::string, Histogram>> histograms;
  nlohmann::json summary;
};

// Overlap histograms and length statistics over the accepted teasers.
inline StatsResult compute_stats(const std::vector<Record>& records,
                                 const std::vector<RecognitionVerdict>& verdicts,
                                 const PipelineConfig& config) {
  std::vector<Record> teasers;
  for (std::size_t i = 0; i < records.size() && i < verdicts.size(); ++i)
    if (verdicts[i].is_teaser) teasers.push_back(records[i]);
  StatsResult out;
  out.summary["n_teasers"] = teasers.size();
  for (OverlapPair pair : {OverlapPair::TweetVsArticle, OverlapPair::HeadlineVsArticle}) {
    const std::string name(pair_name(pair));
    const auto scores = overlap_scores(teasers, pair, config.p, config.q);
    if (scores.empty()) {
      out.summary[name] = nullptr;
      continue;
    }
    Histogram h = histogram(scores, config.bins);
    out.summary[name] = {{"n", h.n}, {"mean", h.mean}, {"std", h.std}};
    out.histograms.emplace_back(name, std::move(h));
  }
  for (auto [field, name] : {std::pair{LengthField::Tweet, "tweet_length"},
                             std::pair{LengthField::Headline, "headline_length"},
                             std::pair{LengthField::Highlight, "highlight_length"}}) {
    if (auto ls = length_stats(teasers, field))
      out.summary[name] = {{"n", ls->n}, {"mean", ls->mean}, {"std", ls->std}};
    else
      out.summary[name] = nullptr;
  }
  return out;
}

inline SplitSpec split_spec(const PipelineConfig& config) {
  SplitSpec s;
  s.train = config.train_size;
  s.validation = config.validation_size;
  s.test = config.test_size;
  s.domain_balance = config.domain_balance;
  s.dedup_jaccard = config.dedup_jaccard;
  s.seed = config.seed;
  return s;
}

// Splits the accepted teasers.
inline SplitResult split_teasers(const std::vector<Record>& records,
                                 const std::vector<RecognitionVerdict>& verdicts,
                                 const PipelineConfig& config, std::size_t domains) {
  std::vector<Record> teasers;
  for (std::size_t i = 0; i < records.size() && i < verdicts.size(); ++i)
    if (verdicts[i].is_teaser) teasers.push_back(records[i]);
  return split(teasers, split_spec(config), domains);
}

// ---- serialization helpers ----

inline std::string records_text(const std::vector<Record>& records) {
  std::ostringstream ss;
  write_records_ndjson(ss, records);
  return ss.str();
}

inline std::string matrix_text(const RelevanceMatrix& matrix) {
  std::ostringstream ss;
  write_matrix_ndjson(ss, matrix);
  return ss.str();
}

inline std::string verdicts_text(const std::vector<RecognitionVerdict>& verdicts) {
  std::string out;
  for (const auto& v : verdicts) out += to_json(v).dump() + "\n";
  return out;
}

inline std::vector<RecognitionVerdict> read_verdicts_ndjson(std::istream& in) {
  std::vector<RecognitionVerdict> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(verdict_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("verdicts line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ---- full run ----

struct ArtifactInfo {
  std::string name;
  std::size_t bytes = 0;
  std::string fnv1a64;
};

struct StageOutcome {
  std::string name;
  std::string status = "not_run";
  std::vector<ArtifactInfo> artifacts;
  std::string error;
};

struct RunResult {
  bool complete = false;
  std::vector<StageOutcome> stages;
  std::optional<double> threshold;
  nlohmann::json manifest;
};

namespace detail {

class RunContext {
 public:
  RunContext(const PipelineConfig& config, std::filesystem::path out_dir)
      : config_(config), out_dir_(std::move(out_dir)) {
    for (auto name : kStageNames) result_.stages.push_back(StageOutcome{std::string(name), "not_run", {}, {}});
  }

  ArtifactInfo write(const char* name, const std::string& content) {
    write_file(out_dir_ / name, content);
    return {name, content.size(), hex64(fnv1a64(content))};
  }

  void remove(const char* name) {
    std::error_code ec;
    std::filesystem::remove(out_dir_ / name, ec);
  }

  // Runs one stage; any failure is recorded, the manifest is written with
  // the incomplete marker, and the error rethrown (wrapped as StageFailure
  // unless it is a configuration or file-level I/O error).
  void stage(std::size_t index, const std::function<void(StageOutcome&)>& body) {
    StageOutcome& outcome = result_.stages[index];
    try {
      outcome.status = "ok";
      body(outcome);
    } catch (const ConfigError& e) {
      fail(outcome, e.what());
      throw;
    } catch (const InputError& e) {
      fail(outcome, e.what());
      throw;
    } catch (const std::exception& e) {
      fail(outcome, e.what());
      throw StageFailure(outcome.name, e.what());
    }
  }

  void finish(bool complete, nlohmann::json extra) {
    result_.complete = complete;
    nlohmann::json m;
    m["tool"] = "teasekit";
    m["version"] = std::string(kVersion);
    m["json_library"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                        std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                        std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    m["status"] = complete ? "complete" : "incomplete";
    m["config_hash"] = config_hash(config_);
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [key, field] : config_fields()) {
      const std::string text = field.get(config_);
      cfg[key] = nlohmann::json::parse(text, nullptr, false);
      if (cfg[key].is_discarded()) cfg[key] = text;
    }
    m["config"] = std::move(cfg);
    m["seed"] = config_.seed;
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : result_.stages) {
      nlohmann::json js{{"name", s.name}, {"status", s.status}};
      nlohmann::json arts = nlohmann::json::array();
      for (const auto& a : s.artifacts)
        arts.push_back({{"path", a.name}, {"bytes", a.bytes}, {"fnv1a64", a.fnv1a64}});
      js["artifacts"] = std::move(arts);
      if (!s.error.empty()) js["error"] = s.error;
      stages.push_back(std::move(js));
    }
    m["stages"] = std::move(stages);
    for (auto& [key, value] : extra.items()) m[key] = value;
    result_.manifest = m;
    write_file(out_dir_ / artifact::kManifest, m.dump(2) + "\n");
  }

  RunResult& result() { return result_; }

 private:
  void fail(StageOutcome& outcome, const std::string& what) {
    outcome.status = "failed";
    outcome.error = what;
  }

  const PipelineConfig& config_;
  std::filesystem::path out_dir_;
  RunResult result_;
};

}  // namespace detail

// normalize -> cluster (or load) -> relevance -> threshold (or fixed) ->
// recognize -> stats -> split, writing every artifact into out_dir and
// manifest.json last. A failed stage leaves a manifest with status
// "incomplete" naming it.
inline RunResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& out_dir) {
  validate(config);
  detail::RunContext ctx(config, out_dir);
  nlohmann::json extra;
  const NormConfig norm = config.norm_config();

  std::vector<Record> records;
  DomainModel model;
  RelevanceMatrix matrix;
  std::vector<RecognitionVerdict> verdicts;
  double threshold = config.dr_threshold;

  try {
    ctx.stage(0, [&](StageOutcome& s) {
      if (config.input.empty()) throw ConfigError("no input corpus configured");
      IngestResult ing = ingest(config.input, norm, ingest_options(config));
      nlohmann::json skipped = nlohmann::json::array();
      for (const auto& sk : ing.skipped) skipped.push_back({{"line", sk.line}, {"reason", sk.reason}});
      extra["ingest"] = {{"lines", ing.lines}, {"records", ing.records.size()},
                         {"skipped", ing.skipped.size()}, {"skip_log", std::move(skipped)}};
      records = std::move(ing.records);
      if (records.empty()) throw EmptyCorpus("no valid record in " + config.input);
      s.artifacts.push_back(ctx.write(artifact::kRecords, records_text(records)));
    });
    ctx.stage(1, [&](StageOutcome& s) {
      model = build_domain_model(records, config);
      if (!config.domain_model_path.empty()) s.status = "loaded";
      assign_domains(records, model);
      s.artifacts.push_back(ctx.write(
          artifact::kDomainModel,
          domain_model_document(model, records, config.keyword_top_n).dump() + "\n"));
    });
    ctx.stage(2, [&](StageOutcome& s) {
      matrix = build_matrix(model, config.default_oov_dr);
      s.artifacts.push_back(ctx.write(artifact::kMatrix, matrix_text(matrix)));
    });
    ctx.stage(3, [&](StageOutcome& s) {
      verdicts = recognize(records, matrix, config, threshold);
      if (config.threshold_kind() == ThresholdMode::Fixed) {
        s.status = "fixed";
        ctx.remove(artifact::kCurve);
        extra["threshold"] = {{"mode", "fixed"}, {"value", threshold}};
        return;
      }
      const ThresholdCurve curve = threshold_curve(verdicts, matrix, model, config);
      threshold = *curve.selected;
      std::ostringstream ss;
      write_curve_tsv(ss, curve);
      s.artifacts.push_back(ctx.write(artifact::kCurve, ss.str()));
      extra["threshold"] = {{"mode", "auto"}, {"value", threshold}};
    });
    ctx.stage(4, [&](StageOutcome& s) {
      for (auto& v : verdicts) apply_dr_threshold(v, threshold);
      s.artifacts.push_back(ctx.write(artifact::kVerdicts, verdicts_text(verdicts)));
      const PruneReport report = prune_report(verdicts);
      std::ostringstream ss;
      write_prune_report_tsv(ss, report);
      s.artifacts.push_back(ctx.write(artifact::kPruneReport, ss.str()));
      nlohmann::json counts;
      for (Stage st : kAllStages) counts[std::string(stage_name(st))] = report.count(st);
      extra["prune"] = {{"total", report.total}, {"counts", std::move(counts)}};
    });
    ctx.stage(5, [&](StageOutcome& s) {
      StatsResult stats = compute_stats(records, verdicts, config);
      std::ostringstream ss;
      write_histograms_tsv(ss, stats.histograms);
      s.artifacts.push_back(ctx.write(artifact::kHistograms, ss.str()));
      extra["summary"] = std::move(stats.summary);
    });
    ctx.stage(6, [&](StageOutcome& s) {
      const SplitResult sp = split_teasers(records, verdicts, config, model.k);
      s.artifacts.push_back(ctx.write(artifact::kSplits, to_json(sp).dump(2) + "\n"));
      extra["split"] = {{"train", sp.train.size()}, {"validation", sp.validation.size()},
                        {"test", sp.test.size()}, {"removed", sp.removed.size()}};
    });
  } catch (const std::exception& e) {
    for (const auto& st : ctx.result().stages)
      if (st.status == "failed") extra["failed_stage"] = st.name;
    ctx.finish(false, std::move(extra));
    throw;
  }
  ctx.result().threshold = threshold;
  ctx.finish(true, std::move(extra));
  return ctx.result();
}

}  // namespace teasekit
