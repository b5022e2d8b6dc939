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

#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/data/data.hpp"
#include "oracles.hpp"

namespace adseqgan::data {
namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::IoError;
}

TEST(Load, BasicRowsAndLabels) {
  const auto ds = parse_dataset("NA,CCO\nPro,CCN\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.labels, (std::vector<int>{0, 1}));
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"NA", "Pro"}));
  EXPECT_EQ(ds.rows[1].line, 2u);
  const auto with_header = parse_dataset("Label,SMILES\nb,C\na,O\nb,N\n");
  EXPECT_EQ(with_header.labels, (std::vector<int>{0, 1, 0}));
  const auto fixed = parse_dataset("b,C\na,O\n", {"a", "b"});
  EXPECT_EQ(fixed.labels, (std::vector<int>{1, 0}));
}

TEST(Load, Errors) {
  EXPECT_EQ(error_of([] { parse_dataset(""); }), Errc::EmptyDataset);
  EXPECT_EQ(error_of([] { parse_dataset("label,smiles\n"); }), Errc::EmptyDataset);
  try {
    parse_dataset("a,C\nb,C,extra\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedRow);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(error_of([] { load_dataset("/nonexistent/data.csv"); }), Errc::FileNotFound);
  EXPECT_EQ(error_of([] { parse_dataset("c,C\n", {"a", "b"}); }), Errc::UnknownClass);
}

TEST(Preprocess, Cases) {
  auto salt = preprocess(0, "CCO.Cl");
  EXPECT_FALSE(salt.accepted());
  EXPECT_EQ(salt.reason, Rejection::LengthOutOfRange);
  EXPECT_EQ(salt.detail, "3 tokens");

  EXPECT_EQ(preprocess(0, "CC[Si](C)(C)CCCCCCCC").reason, Rejection::DisallowedElement);
  EXPECT_EQ(preprocess(0, "C1CC").reason, Rejection::ParseFailure);

  const std::string twelve = "CCCCCC(=O)OC";  // 12 tokens
  const auto ok = preprocess(1, twelve);
  ASSERT_TRUE(ok.accepted());
  EXPECT_EQ(ok.record->label, 1);
  EXPECT_EQ(ok.record->smiles, chem::canonical_smiles(twelve));
  EXPECT_EQ(ok.record->tokens.size(), 12u);

  // Sodium salt: the counter-ion goes before the element check.
  const auto sodium = preprocess(0, "[Na+].CCCCCCCCC(=O)[O-]");
  ASSERT_TRUE(sodium.accepted());
  EXPECT_EQ(sodium.record->smiles, chem::canonical_smiles("CCCCCCCCC(=O)[O-]"));

  std::string long_chain(81, 'C');
  EXPECT_EQ(preprocess(0, long_chain).reason, Rejection::LengthOutOfRange);
  EXPECT_TRUE(preprocess(0, std::string(80, 'C')).accepted());
  EXPECT_TRUE(preprocess(0, std::string(10, 'C')).accepted());
  EXPECT_FALSE(preprocess(0, std::string(9, 'C')).accepted());
}

TEST(Preprocess, IdempotentAndRoundTrips) {
  for (const auto& s : testing::curated_molecules()) {
    const auto r = preprocess(0, s, {.min_tokens = 1, .max_tokens = 200});
    if (!r.accepted()) continue;
    const auto again = preprocess(0, r.record->smiles, {.min_tokens = 1, .max_tokens = 200});
    ASSERT_TRUE(again.accepted()) << s;
    EXPECT_EQ(again.record->smiles, r.record->smiles);
    std::string joined;
    for (const auto& t : r.record->tokens) joined += t;
    EXPECT_EQ(joined, r.record->smiles);
  }
}

TEST(Vocab, ReservedFirstThenLexicographic) {
  std::vector<CleanRecord> records = {{0, "COC", {"C", "O", "C"}}, {1, "OCO", {"O", "C", "O"}}};
  const auto v = Vocabulary::build(records, 2);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"<pad>", "<eos>", "<c0>", "<c1>", "C", "O"}));
  EXPECT_EQ(Vocabulary::build(records, 2), v);
  EXPECT_EQ(v.start(1), 3);
  EXPECT_EQ(v.emittable_mask(), (std::vector<std::uint8_t>{0, 1, 0, 0, 1, 1}));
  EXPECT_EQ(Vocabulary::from_tokens(v.tokens()), v);
  EXPECT_EQ(v.decode(std::vector<int>{4, 5, 4, 1, 5}), "COC");
  EXPECT_EQ(Vocabulary::content_length(std::vector<int>{4, 5, 1}), 2);
  EXPECT_EQ(error_of([&] { v.start(2); }), Errc::UnknownClass);
  EXPECT_EQ(error_of([] { Vocabulary::build({}, 2); }), Errc::EmptyDataset);
  EXPECT_EQ(error_of([&] { v.index("N"); }), Errc::IndexOutOfVocab);
}

TEST(Vocab, EncodedRecordsRoundTrip) {
  const auto raw = parse_dataset(synthetic_corpus({.per_class = {40, 40}, .seed = 3}));
  const auto pre = preprocess_all(raw);
  const auto vocab = Vocabulary::build(pre.records, 2);
  const auto enc = encode_records(pre.records, vocab);
  for (std::size_t i = 0; i < enc.size(); ++i) {
    EXPECT_EQ(enc[i].tokens.back(), vocab.eos());
    const auto text = vocab.decode(enc[i].tokens);
    EXPECT_TRUE(testing::isomorphic(chem::parse_smiles(text), chem::parse_smiles(pre.records[i].smiles)));
  }
}

TEST(Sampler, IdentityFactorAndDeterminism) {
  const std::vector<int> labels = {0, 1, 0, 0, 1};
  OversampleSampler one(labels, 2, 1, 1, 9);
  EXPECT_EQ(one.pool(), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  OversampleSampler three(labels, 2, 1, 3, 9);
  EXPECT_EQ(three.pool(), (std::vector<std::size_t>{0, 1, 1, 1, 2, 3, 4, 4, 4}));
  OversampleSampler a(labels, 2, 1, 3, 5), b(labels, 2, 1, 3, 5);
  EXPECT_EQ(a.batch(100), b.batch(100));
  EXPECT_EQ(error_of([&] { OversampleSampler(labels, 2, 2, 3, 1); }), Errc::UnknownClass);
}

TEST(Sampler, MinorityFractionMatchesClosedForm) {
  std::vector<int> labels(1000, 0);
  for (int i = 0; i < 100; ++i) labels[static_cast<std::size_t>(i * 10)] = 1;
  OversampleSampler s(labels, 2, 1, 3, 2024);
  int minority = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) minority += labels[s.next()];
  const double expected = 3 * 0.1 / (0.9 + 3 * 0.1);
  EXPECT_NEAR(static_cast<double>(minority) / draws, expected, 0.01);
}

TEST(LengthStats, PerClass) {
  std::vector<CleanRecord> records = {
      {0, "", std::vector<std::string>(10, "C")},
      {0, "", std::vector<std::string>(14, "C")},
      {1, "", std::vector<std::string>(20, "C")},
  };
  const auto s = length_stats(records, 3);
  EXPECT_EQ(s[0].mean, 12.0);
  EXPECT_EQ(s[0].stddev, 2.0);
  EXPECT_EQ(s[1].mean, 20.0);
  EXPECT_EQ(s[1].stddev, 1.0);
  EXPECT_EQ(s[2].stddev, 1.0);
}

TEST(Synthetic, DeterministicValidAndClassDistinct) {
  const SyntheticCorpusOptions opts{.per_class = {200, 200}, .seed = 7};
  const auto text = synthetic_corpus(opts);
  EXPECT_EQ(text, synthetic_corpus(opts));
  const auto raw = parse_dataset(text);
  EXPECT_EQ(raw.size(), 400u);
  EXPECT_EQ(raw.class_names, (std::vector<std::string>{"O_rich", "NS_rich"}));
  const auto pre = preprocess_all(raw);
  std::map<std::string, int> reasons;
  for (const auto& r : pre.rejected) {
    ++reasons[std::string(rejection_name(r.reason))];
    EXPECT_EQ(r.reason, Rejection::LengthOutOfRange) << r.detail;
  }
  EXPECT_GT(pre.records.size(), 300u);
  // Every raw row parses.
  for (const auto& r : raw.rows) EXPECT_NO_THROW(chem::parse_smiles(r.smiles)) << r.smiles;
  double o[2] = {0, 0}, ns[2] = {0, 0};
  for (const auto& r : pre.records) {
    for (char c : r.smiles) {
      if (c == 'O' || c == 'o') o[r.label] += 1;
      if (c == 'N' || c == 'n' || c == 'S' || c == 's') ns[r.label] += 1;
    }
  }
  EXPECT_GT(o[0], 3 * o[1]);
  EXPECT_GT(ns[1], 3 * ns[0]);
}

}  // namespace
}  // namespace adseqgan::data
