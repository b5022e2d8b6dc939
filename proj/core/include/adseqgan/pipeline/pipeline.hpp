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

#pragma once

#include <cstddef>
#include <exception>
#include <set>
#include <string>
#include <vector>

#include "adseqgan/adversarial/training.hpp"
#include "adseqgan/data/data.hpp"
#include "adseqgan/metrics/metrics.hpp"
#include "adseqgan/pipeline/config.hpp"

namespace adseqgan::pipeline {

inline constexpr std::size_t kDefaultSampleCount = 6400;

/// Dataset after loading, preprocessing and encoding, plus the run hash.
struct Prepared {
  data::PreprocessedDataset clean;
  data::Vocabulary vocab;
  std::vector<data::EncodedRecord> records;
  std::vector<data::LengthStats> lengths;
  std::set<std::string> canonical;
  std::string hash;

  int class_index(const std::string& name) const;
};

Prepared prepare(const Config& config);

/// Path of an artifact inside the configured output directory.
std::string artifact(const Config& config, const std::string& name);

struct ClassifierResult {
  double cv_auc = 0.0;
  std::vector<int> features;
  std::string model_path;
};

/// Descriptors, feature selection, random forest, cross-validated AUC.
ClassifierResult train_classifier(const Config& config);

struct PretrainResult {
  std::vector<double> nll;
  std::vector<double> critic_loss;
  std::string checkpoint_path;
};

/// Likelihood pretraining of the generator and critic warm-up.
PretrainResult pretrain(const Config& config);

struct TrainResult {
  std::vector<adversarial::EpochMetrics> trace;
  std::string final_checkpoint;
};

TrainResult train(const Config& config, const adversarial::EpochCallback& on_epoch = {});

struct GenerateResult {
  std::string path;
  std::size_t count = 0;
  std::size_t valid = 0;
};

/// Writes one "SMILES<TAB>valid|invalid" line per sample. Empty paths select
/// the final checkpoint and samples_<class>.txt in the output directory.
GenerateResult generate(const Config& config, const std::string& class_name, std::size_t count,
                        const std::string& checkpoint_path = {}, const std::string& out_path = {});

struct EvaluateResult {
  metrics::GenerationReport report;
  std::string key_value;
  std::string report_path;
};

/// Scores a sample file against the training set and the frozen classifier.
EvaluateResult evaluate(const Config& config, const std::string& samples_path, const std::string& class_name);

/// Writes the seeded synthetic two-class corpus.
void make_corpus(const std::string& path, const data::SyntheticCorpusOptions& options);

/// Process exit code for an exception; documented in docs/cli.md.
int exit_code(const std::exception& error);

}  // namespace adseqgan::pipeline
