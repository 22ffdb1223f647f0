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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "teaser_fixtures.hpp"
#include "teasekit/recognizer.hpp"

namespace teasekit {
namespace {

using testing::model_of_counts;
using testing::teaser_case;
using testing::text_of;

TEST(IsExtract, Containment) {
  EXPECT_TRUE(is_extract("Natural remedy for diabetes", "natural   remedy"));
  EXPECT_TRUE(is_extract("A b", "x a b y"));
  EXPECT_FALSE(is_extract("a c", "a b c"));
  EXPECT_TRUE(is_extract("", "anything"));
}

TEST(Nonoverlap, SetDifference) {
  const auto tweet = text_of({"a", "b", "b", "c"});
  const auto section = text_of({"b", "d"});
  EXPECT_EQ(nonoverlap(tweet, section), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(nonoverlap(section, tweet), (std::vector<std::string>{"d"}));
  EXPECT_TRUE(nonoverlap(section, section).empty());
}

TEST(StageNames, RoundTrip) {
  for (Stage s : kAllStages) EXPECT_EQ(parse_stage(stage_name(s)), s);
  EXPECT_FALSE(parse_stage("nope").has_value());
}

struct Fixture {
  testing::PruneFixture f = testing::prune_fixture();
  RelevanceMatrix matrix = build_matrix(model_of_counts(f.counts));
  RecognizerParams params() const {
    RecognizerParams p;
    p.dr_threshold = f.threshold;
    return p;
  }
};

TEST(IsTeaser, PlannedStages) {
  Fixture fx;
  for (const auto& c : fx.f.cases) {
    const auto v = is_teaser(c.record, fx.matrix, fx.params());
    EXPECT_EQ(v.stage, c.intended) << c.record.id;
    EXPECT_EQ(v.is_teaser, c.intended == Stage::Accepted);
  }
}

TEST(IsTeaser, VerdictDetails) {
  Fixture fx;
  const auto& accepted = fx.f.cases.back();
  const auto v = is_teaser(accepted.record, fx.matrix, fx.params());
  ASSERT_EQ(v.stage, Stage::Accepted);
  EXPECT_DOUBLE_EQ(*v.max_overlap, 0.5);
  EXPECT_EQ(v.prominent_index, 0u);
  EXPECT_EQ(v.nonoverlap_words.size(), 2u);
  EXPECT_EQ(v.nonoverlap_dr.size(), 2u);
  EXPECT_NEAR(*v.min_dr, std::log(2.0) / 12020.0, 1e-15);

  const auto headline = is_teaser(fx.f.cases.front().record, fx.matrix, fx.params());
  EXPECT_FALSE(headline.max_overlap.has_value());
  const auto low = is_teaser(fx.f.cases[42].record, fx.matrix, fx.params());
  ASSERT_EQ(low.stage, Stage::AbstractivityLow);
  EXPECT_EQ(*low.max_overlap, 0.0);
  EXPECT_TRUE(low.nonoverlap_words.empty());
}

TEST(IsTeaser, DegenerateRecords) {
  Fixture fx;
  auto c = fx.f.cases.back();
  c.record.domain = std::nullopt;
  EXPECT_EQ(is_teaser(c.record, fx.matrix, fx.params()).stage, Stage::Degenerate);
  c.record.domain = 2;
  EXPECT_EQ(is_teaser(c.record, fx.matrix, fx.params()).stage, Stage::Degenerate);
  c.record.domain = 0;
  c.record.tweet_text = {};
  EXPECT_EQ(is_teaser(c.record, fx.matrix, fx.params()).stage, Stage::Degenerate);
  auto p = fx.params();
  p.low = p.high;
  EXPECT_THROW(is_teaser(c.record, fx.matrix, p), std::invalid_argument);
}

TEST(IsTeaser, ThresholdIsStrict) {
  Fixture fx;
  const auto& c = fx.f.cases.back();
  auto p = fx.params();
  p.dr_threshold = *is_teaser(c.record, fx.matrix, p).min_dr;
  EXPECT_EQ(is_teaser(c.record, fx.matrix, p).stage, Stage::NotTeasing);
  p.dr_threshold = std::nextafter(p.dr_threshold, 1.0);
  EXPECT_EQ(is_teaser(c.record, fx.matrix, p).stage, Stage::Accepted);
}

TEST(IsTeaser, SectionMinusTweetMode) {
  Fixture fx;
  auto p = fx.params();
  p.nonoverlap_mode = NonoverlapMode::SectionMinusTweet;
  const auto v = is_teaser(fx.f.cases.back().record, fx.matrix, p);
  EXPECT_EQ(v.nonoverlap_words.size(), 18u);
  EXPECT_EQ(v.stage, Stage::NotTeasing);
}

TEST(IsTeaser, MatchesNaiveOracleOnRandomRecords) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t domains = 1 + rng() % 3;
    std::vector<std::map<std::string, std::uint64_t>> counts(domains);
    for (auto& c : counts) {
      for (std::size_t w = 0; w < 30; ++w)
        if (rng() % 3 != 0) c[testing::made_up_word(w)] = 1 + rng() % 40;
      if (c.empty()) c[testing::made_up_word(0)] = 1;
    }
    const auto matrix = build_matrix(model_of_counts(counts));
    const auto c = testing::random_teaser_case(rng, domains, "r" + std::to_string(trial));
    RecognizerParams p;
    p.p = 1 + rng() % 5;
    p.q = 1 + rng() % p.p;
    p.low = 0.1 * static_cast<double>(rng() % 5);
    p.high = p.low + 0.1 + 0.1 * static_cast<double>(rng() % 5);
    p.dr_threshold = std::pow(10.0, -3.0 + 2.5 * std::uniform_real_distribution<double>()(rng));
    const bool tms = rng() % 4 != 0;
    p.nonoverlap_mode = tms ? NonoverlapMode::TweetMinusSection : NonoverlapMode::SectionMinusTweet;
    const auto v = is_teaser(c.record, matrix, p);
    const auto expected = oracle::naive_is_teaser(c.naive, domains, testing::count_lookup(counts), p.p,
                                                  p.q, p.low, p.high, p.dr_threshold, tms);
    ASSERT_EQ(testing::naive_stage(v.stage), expected) << "trial " << trial;
  }
}

TEST(IsTeaser, AcceptanceMonotoneInThreshold) {
  std::mt19937_64 rng(21);
  std::vector<std::map<std::string, std::uint64_t>> counts(3);
  for (auto& c : counts)
    for (std::size_t w = 0; w < 30; ++w)
      if (rng() % 2) c[testing::made_up_word(w)] = 1 + rng() % 40;
  const auto matrix = build_matrix(model_of_counts(counts));
  std::vector<Record> records;
  for (int i = 0; i < 300; ++i) records.push_back(testing::random_teaser_case(rng, 3, "m").record);
  std::size_t previous = 0;
  for (double t : {0.0, 1e-4, 1e-3, 5e-3, 1e-2, 5e-2, 1.0}) {
    RecognizerParams p;
    p.dr_threshold = t;
    const auto report = prune_report(recognize_all(records, matrix, p));
    EXPECT_GE(report.count(Stage::Accepted), previous);
    previous = report.count(Stage::Accepted);
  }
}

TEST(RecognizeAll, MatchesSequential) {
  Fixture fx;
  std::vector<Record> records;
  for (const auto& c : fx.f.cases) records.push_back(c.record);
  const auto parallel = recognize_all(records, fx.matrix, fx.params(), 4);
  for (std::size_t i = 0; i < records.size(); ++i)
    EXPECT_EQ(parallel[i], is_teaser(records[i], fx.matrix, fx.params()));
}

TEST(PruneReport, CountsAndTsv) {
  Fixture fx;
  std::vector<Record> records;
  for (const auto& c : fx.f.cases) records.push_back(c.record);
  const auto report = prune_report(recognize_all(records, fx.matrix, fx.params()));
  EXPECT_EQ(report.total, 100u);
  EXPECT_EQ(report.count(Stage::ExtractiveVsHeadline), 37u);
  EXPECT_EQ(report.count(Stage::Accepted), 23u);
  EXPECT_DOUBLE_EQ(report.kept_fraction(), 0.23);
  std::ostringstream ss;
  write_prune_report_tsv(ss, report);
  EXPECT_EQ(ss.str(),
            "analysis\tdetail\tcount\tfraction\n"
            "extractivity\twrt_headline\t37\t0.37\n"
            "extractivity\twrt_article\t5\t0.05\n"
            "abstractivity\ttoo_low\t11\t0.11\n"
            "abstractivity\ttoo_high\t11\t0.11\n"
            "teasingness\tno_low_dr_word\t13\t0.13\n"
            "degenerate\tunscorable\t0\t0\n"
            "kept\tteaser\t23\t0.23\n"
            "total\tall\t100\t1\n");
  PruneReport merged = report;
  merged.merge(report);
  EXPECT_EQ(merged.total, 200u);
  EXPECT_EQ(merged.count(Stage::AbstractivityLow), 22u);
}

TEST(VerdictJson, RoundTrip) {
  Fixture fx;
  for (std::size_t i : {0u, 45u, 99u}) {
    const auto v = is_teaser(fx.f.cases[i].record, fx.matrix, fx.params());
    EXPECT_EQ(verdict_from_json(nlohmann::json::parse(to_json(v).dump())), v);
  }
  EXPECT_THROW(verdict_from_json(nlohmann::json{{"id", "x"}, {"is_teaser", false}, {"stage", "odd"}}),
               InputError);
}

}  // namespace
}  // namespace teasekit
