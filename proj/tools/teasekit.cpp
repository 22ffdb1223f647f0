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

// teasekit command-line interface.
//
//   teasekit [--config FILE] [--seed N] [--out-dir DIR] <subcommand> ...
//
// Exit codes: 0 success, 2 configuration error, 3 stage failure, 4 input or
// output error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "teasekit/teasekit.hpp"

namespace fs = std::filesystem;
using namespace teasekit;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;
constexpr int kExitIo = 4;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
};

PipelineConfig load(const Globals& g) {
  PipelineConfig c = g.config_path.empty() ? PipelineConfig{} : load_config(g.config_path);
  if (g.seed) c.seed = *g.seed;
  validate(c);
  return c;
}

fs::path at(const Globals& g, const char* name) { return fs::path(g.out_dir) / name; }

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  return in;
}

std::vector<Record> load_records(const Globals& g) {
  auto in = open_in(at(g, artifact::kRecords));
  return read_records_ndjson(in);
}

DomainModel load_model(const Globals& g) {
  try {
    return domain_model_from_json(nlohmann::json::parse(read_file(at(g, artifact::kDomainModel))));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed domain model: ") + e.what());
  }
}

RelevanceMatrix load_matrix(const Globals& g, const PipelineConfig& c) {
  auto in = open_in(at(g, artifact::kMatrix));
  return read_matrix_ndjson(in, c.default_oov_dr);
}

std::vector<Record> load_records_with_domains(const Globals& g) {
  auto records = load_records(g);
  assign_domains(records, load_model(g));
  return records;
}

std::vector<RecognitionVerdict> load_verdicts(const Globals& g) {
  auto in = open_in(at(g, artifact::kVerdicts));
  return read_verdicts_ndjson(in);
}

// Runs a stage body, turning library errors of a non-I/O kind into a stage
// failure naming the subcommand.
template <typename F>
void as_stage(const char* name, F&& body) {
  try {
    body();
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError&) {
    throw;
  } catch (const StageFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw StageFailure(name, e.what());
  }
}

void cmd_ingest(const Globals& g, const std::string& input) {
  PipelineConfig c = load(g);
  if (!input.empty()) c.input = input;
  if (c.input.empty()) throw ConfigError("ingest: no input corpus (use --input or config 'input')");
  const IngestResult r = ingest(c.input, c.norm_config(), ingest_options(c));
  for (const auto& s : r.skipped) std::cerr << c.input << ":" << s.line << ": " << s.reason << '\n';
  write_file(at(g, artifact::kRecords), records_text(r.records));
  std::cout << nlohmann::json{{"lines", r.lines}, {"records", r.records.size()},
                              {"skipped", r.skipped.size()}}.dump()
            << '\n';
}

void cmd_cluster(const Globals& g, const std::vector<std::size_t>& elbow_ks) {
  const PipelineConfig c = load(g);
  auto records = load_records(g);
  as_stage("cluster", [&] {
    if (!elbow_ks.empty()) {
      TfidfEmbeddingProvider provider(c.embedding_dim);
      std::vector<const NormalizedText*> docs;
      for (const auto& r : records) docs.push_back(&r.article_text);
      provider.fit(docs);
      std::vector<DocEmbedding> points;
      for (const auto& r : records) {
        try {
          points.push_back(provider.embed(r.id, r.article_text));
        } catch (const ProviderFailure&) {
        }
      }
      const ElbowReport report = elbow_scan(points, elbow_ks, kmeans_options(c), ElbowOptions{});
      nlohmann::json j;
      for (const auto& [k, sse] : report.sse_by_k) j["sse_by_k"][std::to_string(k)] = sse;
      j["suggested_k"] = report.suggested_k;
      std::cout << j.dump() << '\n';
    }
    const DomainModel model = build_domain_model(records, c);
    assign_domains(records, model);
    write_file(at(g, artifact::kDomainModel),
               domain_model_document(model, records, c.keyword_top_n).dump() + "\n");
    std::cerr << "clustered " << model.assignments.size() << " records into " << model.k
              << " domains, " << model.unclustered.size() << " unclustered\n";
  });
}

void cmd_relevance(const Globals& g) {
  const PipelineConfig c = load(g);
  const DomainModel model = load_model(g);
  as_stage("relevance", [&] {
    write_file(at(g, artifact::kMatrix), matrix_text(build_matrix(model, c.default_oov_dr)));
  });
}

void cmd_threshold(const Globals& g, const std::string& write_config) {
  PipelineConfig c = load(g);
  const auto records = load_records_with_domains(g);
  const DomainModel model = load_model(g);
  const RelevanceMatrix matrix = load_matrix(g, c);
  as_stage("threshold", [&] {
    const auto verdicts = recognize(records, matrix, c, c.dr_threshold);
    const ThresholdCurve curve = threshold_curve(verdicts, matrix, model, c);
    std::ostringstream ss;
    write_curve_tsv(ss, curve);
    write_file(at(g, artifact::kCurve), ss.str());
    std::cout << format_double(*curve.selected) << '\n';
    if (!write_config.empty()) {
      c.threshold_mode = "fixed";
      c.dr_threshold = *curve.selected;
      write_file(write_config, to_config_text(c));
    }
  });
}

void cmd_recognize(const Globals& g, std::optional<double> dr_threshold) {
  const PipelineConfig c = load(g);
  const auto records = load_records_with_domains(g);
  const RelevanceMatrix matrix = load_matrix(g, c);
  double threshold = c.dr_threshold;
  if (dr_threshold) {
    threshold = *dr_threshold;
  } else if (c.threshold_kind() == ThresholdMode::Auto && fs::exists(at(g, artifact::kCurve))) {
    auto in = open_in(at(g, artifact::kCurve));
    const ThresholdCurve curve = read_curve_tsv(in);
    if (curve.selected) threshold = *curve.selected;
  }
  as_stage("recognize", [&] {
    const auto verdicts = recognize(records, matrix, c, threshold);
    write_file(at(g, artifact::kVerdicts), verdicts_text(verdicts));
    std::ostringstream ss;
    write_prune_report_tsv(ss, prune_report(verdicts));
    write_file(at(g, artifact::kPruneReport), ss.str());
    std::cout << ss.str();
  });
}

void cmd_stats(const Globals& g) {
  const PipelineConfig c = load(g);
  const auto records = load_records(g);
  const auto verdicts = load_verdicts(g);
  if (records.size() != verdicts.size())
    throw InputError("records and verdicts differ in length; rerun recognize");
  as_stage("stats", [&] {
    StatsResult stats = compute_stats(records, verdicts, c);
    std::ostringstream ss;
    write_histograms_tsv(ss, stats.histograms);
    write_file(at(g, artifact::kHistograms), ss.str());
    std::cout << stats.summary.dump(2) << '\n';
  });
}

void cmd_split(const Globals& g) {
  const PipelineConfig c = load(g);
  const auto records = load_records_with_domains(g);
  const DomainModel model = load_model(g);
  const auto verdicts = load_verdicts(g);
  if (records.size() != verdicts.size())
    throw InputError("records and verdicts differ in length; rerun recognize");
  as_stage("split", [&] {
    const SplitResult sp = split_teasers(records, verdicts, c, model.k);
    write_file(at(g, artifact::kSplits), to_json(sp).dump(2) + "\n");
    std::cout << nlohmann::json{{"train", sp.train.size()}, {"validation", sp.validation.size()},
                                {"test", sp.test.size()}, {"removed", sp.removed.size()}}.dump()
              << '\n';
  });
}

std::vector<std::pair<std::string, std::string>> read_texts(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto& id = j.at("id");
      out.emplace_back(id.is_string() ? id.get<std::string>() : id.dump(), j.at("text").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void cmd_rouge(const Globals& g, const std::string& candidates, const std::string& references,
               const std::string& pairs_out) {
  const PipelineConfig c = load(g);
  NormConfig norm = c.norm_config();
  norm.remove_stopwords = !c.rouge_keep_stopwords;
  std::map<std::string, std::string> refs;
  for (auto& [id, text] : read_texts(references)) refs[id] = std::move(text);
  std::ostringstream tsv;
  tsv << "id\trouge1_p\trouge1_r\trouge1_f1\trouge2_p\trouge2_r\trouge2_f1\trougeL_p\trougeL_r\trougeL_f1\n";
  std::vector<RougeScore> scores;
  std::size_t skipped = 0;
  for (const auto& [id, text] : read_texts(candidates)) {
    auto it = refs.find(id);
    if (it == refs.end()) throw InputError("no reference for candidate '" + id + "'");
    const auto cand = normalize(text, norm).tokens;
    const auto ref = normalize(it->second, norm).tokens;
    if (ref.empty()) {
      std::cerr << "skipping '" << id << "': reference has no terms\n";
      ++skipped;
      continue;
    }
    const RougeScore s = score_pair(cand, ref, c.rouge_mode());
    tsv << id;
    for (const PRF* m : {&s.rouge1, &s.rouge2, &s.rougeL})
      tsv << '\t' << format_double(m->precision) << '\t' << format_double(m->recall) << '\t'
          << format_double(m->f1);
    tsv << '\n';
    scores.push_back(s);
  }
  write_file(pairs_out.empty() ? at(g, "rouge_pairs.tsv") : fs::path(pairs_out), tsv.str());
  as_stage("rouge", [&] {
    const RougeScore agg = aggregate(scores);
    const auto prf = [](const PRF& m) {
      return nlohmann::json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    };
    std::cout << nlohmann::json{{"pairs", scores.size()},
                                {"skipped", skipped},
                                {"rouge1", prf(agg.rouge1)},
                                {"rouge2", prf(agg.rouge2)},
                                {"rougeL", prf(agg.rougeL)}}
                     .dump(2)
              << '\n';
  });
}

void cmd_run(const Globals& g, const std::string& input) {
  PipelineConfig c = load(g);
  if (!input.empty()) c.input = input;
  const RunResult r = run_pipeline(c, g.out_dir);
  std::cout << "threshold " << format_double(*r.threshold) << '\n';
  for (const auto& s : r.stages) std::cout << s.name << '\t' << s.status << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teaser corpus mining and evaluation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "Configuration file (key = value)");
  app.add_option("--seed", g.seed, "Random seed; overrides the config");
  app.add_option("--out-dir", g.out_dir, "Artifact directory")->capture_default_str();

  std::string input, write_config, candidates, references, pairs_out;
  std::vector<std::size_t> elbow_ks;
  std::optional<double> dr_threshold;

  auto* ingest_cmd = app.add_subcommand("ingest", "Validate and normalize a corpus");
  ingest_cmd->add_option("--input", input, "Corpus NDJSON");
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster articles into domains");
  cluster_cmd->add_option("--elbow", elbow_ks, "Also report SSE for these k values")->delimiter(',');
  app.add_subcommand("relevance", "Build the domain relevance matrix");
  auto* threshold_cmd = app.add_subcommand("threshold", "Select the dr threshold");
  threshold_cmd->add_option("--write-config", write_config,
                            "Write a config with the selected threshold fixed");
  auto* recognize_cmd = app.add_subcommand("recognize", "Label tweets as teasers");
  recognize_cmd->add_option("--dr-threshold", dr_threshold, "Override the dr threshold");
  app.add_subcommand("stats", "Overlap histograms and length statistics");
  app.add_subcommand("split", "Train/validation/test split of the teasers");
  auto* rouge_cmd = app.add_subcommand("rouge", "Score candidates against references");
  rouge_cmd->add_option("--candidates", candidates, "NDJSON {id, text}")->required();
  rouge_cmd->add_option("--references", references, "NDJSON {id, text}")->required();
  rouge_cmd->add_option("--pairs-out", pairs_out, "Per-pair TSV (default OUT_DIR/rouge_pairs.tsv)");
  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline");
  run_cmd->add_option("--input", input, "Corpus NDJSON; overrides the config");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (ingest_cmd->parsed()) cmd_ingest(g, input);
    else if (cluster_cmd->parsed()) cmd_cluster(g, elbow_ks);
    else if (app.got_subcommand("relevance")) cmd_relevance(g);
    else if (threshold_cmd->parsed()) cmd_threshold(g, write_config);
    else if (recognize_cmd->parsed()) cmd_recognize(g, dr_threshold);
    else if (app.got_subcommand("stats")) cmd_stats(g);
    else if (app.got_subcommand("split")) cmd_split(g);
    else if (rouge_cmd->parsed()) cmd_rouge(g, candidates, references, pairs_out);
    else if (run_cmd->parsed()) cmd_run(g, input);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const StageFailure& e) {
    std::cerr << "stage failed: " << e.what() << '\n';
    return kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return 0;
}
