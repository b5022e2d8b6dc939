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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "adseqgan/adversarial/reward.hpp"
#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/fingerprint.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/rng.hpp"
#include "adseqgan/data/data.hpp"
#include "adseqgan/descriptors/descriptors.hpp"
#include "adseqgan/neural/critic.hpp"
#include "adseqgan/neural/generator.hpp"

namespace {

using namespace adseqgan;

struct Setup {
  data::PreprocessedDataset clean;
  data::Vocabulary vocab;
  auxdisc::RandomForestModel forest;
  neural::GeneratorParams generator;
  neural::CriticParams critic;

  Setup() {
    data::SyntheticCorpusOptions options;
    options.per_class = {60, 60};
    clean = data::preprocess_all(data::parse_dataset(data::synthetic_corpus(options)));
    vocab = data::Vocabulary::build(clean.records, 2);
    auxdisc::LabeledDataset labeled;
    labeled.class_names = clean.class_names;
    for (const auto& r : clean.records) {
      labeled.rows.push_back(descriptors::compute_descriptors(chem::parse_smiles(r.smiles)));
      labeled.labels.push_back(r.label);
    }
    forest = auxdisc::train_random_forest(labeled, auxdisc::select_features(labeled, 8, 3, 1), 30, 2);
    neural::GeneratorShape g;
    g.vocab = vocab.size();
    g.d_emb = 32;
    g.d_hid = 128;
    g.eos_token = vocab.eos();
    g.start_tokens = vocab.start_tokens();
    g.emittable = vocab.emittable_mask();
    generator = neural::init_generator(g, 1);
    critic = neural::init_critic({.vocab = vocab.size(), .d_emb = 32, .windows = {1, 2, 3, 4, 5, 6, 7, 8},
                                  .filters = 16},
                                 2, 0.01);
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_SampleSequence(benchmark::State& state) {
  const auto& s = setup();
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(neural::sample_sequence(s.generator, 0, 81, rng));
}
BENCHMARK(BM_SampleSequence);

void BM_CriticScore(benchmark::State& state) {
  const auto& s = setup();
  const auto seq = data::encode_records(s.clean.records, s.vocab).front().tokens;
  for (auto _ : state) benchmark::DoNotOptimize(neural::critic_score(s.critic, seq, 81));
}
BENCHMARK(BM_CriticScore);

void BM_ComputeRewards(benchmark::State& state) {
  const auto& s = setup();
  adversarial::RewardSources sources;
  sources.critic = &s.critic;
  sources.pad_to = 81;
  sources.auxiliaries = {{&s.forest, auxdisc::RewardMode::Product, auxdisc::kDefaultThreshold}};
  sources.vocab = &s.vocab;
  adversarial::RewardConfig config;
  config.rollouts = static_cast<int>(state.range(0));
  std::vector<std::vector<int>> seqs;
  std::vector<int> labels;
  Rng rng(3);
  for (int i = 0; i < 8; ++i) {
    labels.push_back(i % 2);
    seqs.push_back(neural::sample_sequence(s.generator, labels.back(), 30, rng));
  }
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(adversarial::compute_rewards(s.generator, seqs, labels, sources, config, 30, ++seed));
  }
}
BENCHMARK(BM_ComputeRewards)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
  const auto g = chem::parse_smiles("CC(=O)Nc1ccc(O)cc1C1CCN(CC1)c1ccc2ccccc2n1");
  for (auto _ : state) benchmark::DoNotOptimize(chem::canonicalize(g));
}
BENCHMARK(BM_Canonicalize);

void BM_Fingerprint(benchmark::State& state) {
  const auto g = chem::parse_smiles("CC(=O)Nc1ccc(O)cc1C1CCN(CC1)c1ccc2ccccc2n1");
  for (auto _ : state) benchmark::DoNotOptimize(chem::fingerprint(g));
}
BENCHMARK(BM_Fingerprint);

}  // namespace

BENCHMARK_MAIN();
