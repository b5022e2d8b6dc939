// Copyright 2026 The ADSeqGAN Authors.
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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/metrics/metrics.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace adseqgan::metrics {
namespace {

// One split on oxygen count: any oxygen -> class 0, none -> class 1.
auxdisc::RandomForestModel oxygen_classifier() {
  auxdisc::RandomForestModel m;
  m.class_names = {"oxy", "other"};
  m.features = {static_cast<int>(descriptors::kOxygenCount)};
  m.rules.assign(2, {});
  auxdisc::DecisionTree t;
  t.nodes.push_back({static_cast<int>(descriptors::kOxygenCount), 0.5, 1, 2, {}});
  t.nodes.push_back({-1, 0.0, -1, -1, {0.0, 1.0}});
  t.nodes.push_back({-1, 0.0, -1, -1, {1.0, 0.0}});
  m.trees.push_back(t);
  return m;
}

std::vector<Sample> samples_of(const std::vector<std::string>& texts) {
  std::vector<Sample> out;
  for (const auto& t : texts) out.push_back({t, static_cast<int>(t.size())});
  return out;
}

TEST(Evaluate, YieldProduct) {
  const auto samples = samples_of({"CCO", "OCC", "CCCO", "CCCO", "CCN", "CCN", "CCCN", "NCCC", "C1CC", "C(("});
  const auto r = evaluate(samples, 0, {}, oxygen_classifier());
  EXPECT_EQ(r.validity, 0.8);
  EXPECT_EQ(r.uniqueness, 0.5);
  EXPECT_EQ(r.class_ratio, 0.5);
  EXPECT_DOUBLE_EQ(r.yield, 0.2);
  EXPECT_EQ(r.yield, r.uniqueness * r.validity * r.class_ratio);
  EXPECT_EQ(r.novelty, 1.0);
  EXPECT_EQ(r.class_ratios[1], 0.5);
}

TEST(Evaluate, DegenerateCases) {
  const auto bad = evaluate(samples_of({"C1CC", "((", "X"}), 0, {}, oxygen_classifier());
  EXPECT_EQ(bad.validity, 0.0);
  EXPECT_EQ(bad.yield, 0.0);
  const auto same = evaluate(samples_of(std::vector<std::string>(8, "CCO")), 0, {}, oxygen_classifier());
  EXPECT_EQ(same.uniqueness, 1.0 / 8.0);
  EXPECT_EQ(same.mean_tanimoto, 0.0);
  EXPECT_EQ(same.tanimoto_subsample, 0u);
  EXPECT_THROW(evaluate({}, 0, {}, oxygen_classifier()), Error);
  EXPECT_THROW(evaluate(samples_of({"C"}), 2, {}, oxygen_classifier()), Error);
}

TEST(Evaluate, NoveltyNestingAndMonotonicity) {
  std::vector<std::string> texts;
  for (const auto& s : testing::curated_molecules()) texts.push_back(s);
  texts.push_back("C1CC");
  std::set<std::string> training = {chem::canonical_smiles(texts[0]), chem::canonical_smiles(texts[1])};
  const auto r = evaluate(samples_of(texts), 0, training, oxygen_classifier());
  EXPECT_LE(r.novelty, 1.0);
  EXPECT_LE(r.uniqueness, 1.0);
  EXPECT_GE(r.validity, 0.0);
  EXPECT_LE(r.validity, 1.0);
  EXPECT_LE(r.yield, std::min(r.validity, r.uniqueness));
  auto more = texts;
  more.push_back(texts[0]);
  more.push_back("CCCCCCCCCCCCCCCCCCCC");
  training.insert(chem::canonical_smiles("CCCCCCCCCCCCCCCCCCCC"));
  const auto r2 = evaluate(samples_of(more), 0, training, oxygen_classifier());
  EXPECT_LE(r2.novelty, r.novelty);
  EXPECT_GT(r.mean_tanimoto, 0.0);
  EXPECT_LT(r.mean_tanimoto, 1.0);
}

TEST(Evaluate, TanimotoSubsampleIsSeeded) {
  std::vector<std::string> texts;
  for (int n = 1; n <= 30; ++n) texts.push_back(std::string(static_cast<std::size_t>(n), 'C') + "O");
  const EvaluateOptions opt{.tanimoto_max = 10, .seed = 4};
  const auto a = evaluate(samples_of(texts), 0, {}, oxygen_classifier(), opt);
  const auto b = evaluate(samples_of(texts), 0, {}, oxygen_classifier(), opt);
  EXPECT_EQ(a.tanimoto_subsample, 10u);
  EXPECT_EQ(a.mean_tanimoto, b.mean_tanimoto);
}

TEST(Responsiveness, Cases) {
  EXPECT_EQ(responsiveness(0.3, 0.3), 0.0);
  EXPECT_NEAR(responsiveness(0.56, 0.0056), 2.0, 1e-12);
  EXPECT_EQ(responsiveness(0.0, 0.2), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(responsiveness(0.0, 0.0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(responsiveness(0.2, 0.0), std::numeric_limits<double>::infinity());
  EXPECT_EQ(format_metric(responsiveness(0.0, 1.0)), "-inf");
  EXPECT_EQ(format_metric(responsiveness(1.0, 0.0)), "+inf");
}

TEST(Serialization, KeyValueAndJson) {
  const auto r = evaluate(samples_of({"CCO", "CCN"}), 0, {}, oxygen_classifier());
  const auto kv = to_key_value(r, {"oxy", "other"});
  EXPECT_NE(kv.find("yield 0.5\n"), std::string::npos);
  EXPECT_NE(kv.find("class_ratio.other 0.5\n"), std::string::npos);
  const auto j = nlohmann::json::parse(to_json(r, {"oxy", "other"}));
  EXPECT_EQ(j["validity"].get<double>(), 1.0);
  EXPECT_EQ(j["class_ratios"]["oxy"].get<double>(), 0.5);
}

}  // namespace
}  // namespace adseqgan::metrics
