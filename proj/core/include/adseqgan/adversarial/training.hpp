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

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "adseqgan/adversarial/reward.hpp"
#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/data/data.hpp"
#include "adseqgan/metrics/metrics.hpp"
#include "adseqgan/neural/checkpoint.hpp"
#include "adseqgan/neural/critic.hpp"
#include "adseqgan/neural/generator.hpp"
#include "adseqgan/neural/tensor.hpp"

namespace adseqgan::adversarial {

inline constexpr int kDefaultMleEpochs = 250;
inline constexpr int kDefaultAdversarialEpochs = 50;
inline constexpr int kDefaultCriticPretrainSteps = 10;

struct MleConfig {
  int epochs = kDefaultMleEpochs;
  int batch = 64;
  neural::AdamConfig adam{1e-3};
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
};

/// Teacher-forced next-token likelihood training over class-prefixed sequences.
/// An epoch is one pass over the shuffled pool (indices into records, repeats
/// allowed); an empty pool means every record once. Returns the per-token mean
/// NLL of each epoch.
std::vector<double> pretrain_generator_mle(neural::GeneratorParams& generator, neural::AdamState& opt,
                                           const std::vector<data::EncodedRecord>& records,
                                           const std::vector<std::size_t>& pool, const MleConfig& config);

struct CriticConfig {
  neural::AdamConfig adam{1e-4};
  double clip = 0.01;
  int pad_to = 81;
};

/// Per step: loss = mean critic(fake) - mean critic(real), one Adam step, then
/// weight clipping to [-clip, clip]. Returns the loss of each step.
std::vector<double> train_critic(neural::CriticParams& critic, neural::AdamState& opt,
                                 const std::vector<std::vector<int>>& real, const std::vector<std::vector<int>>& fake,
                                 int steps, const CriticConfig& config);

/// Adds the gradient of -J into grads, J = (1/B) sum_b (1/T_b) sum_t q[b][t] log p(y_t).
/// Returns J.
double policy_gradient(const neural::GeneratorParams& generator, const std::vector<std::vector<int>>& sequences,
                       const std::vector<int>& labels, const std::vector<std::vector<double>>& q,
                       neural::GeneratorParams& grads);

struct PolicyGradientConfig {
  neural::AdamConfig adam{1e-4};
  double clip_norm = 5.0;
};

/// One ascent step on J. A zero gradient leaves parameters and optimizer state
/// untouched. Returns J.
double policy_gradient_update(neural::GeneratorParams& generator, neural::AdamState& opt,
                              const std::vector<std::vector<int>>& sequences, const std::vector<int>& labels,
                              const std::vector<std::vector<double>>& q, const PolicyGradientConfig& config);

struct AdversarialConfig {
  RewardConfig reward;
  int epochs = kDefaultAdversarialEpochs;
  int g_steps = 1;
  int d_steps = 1;
  int batch = 64;
  int generator_batches = 0;  // per generator pass; 0 means a full pass over the pool
  int critic_batches = 0;     // per critic pass; 0 means a full pass over the pool
  int max_len = 81;           // sampled actions including eos
  PolicyGradientConfig policy;
  CriticConfig critic;
  int eval_samples = 200;     // per class prompt
  int target_class = 0;       // class whose responsiveness is reported
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output_dir;     // checkpoints and metric trace; empty writes nothing
  std::string config_hash;
  std::map<std::string, std::string> checkpoint_meta;
};

struct TrainingState {
  neural::GeneratorParams generator;
  neural::AdamState generator_opt;
  neural::CriticParams critic;
  neural::AdamState critic_opt;
};

struct TrainingData {
  const data::Vocabulary* vocab = nullptr;
  std::vector<std::string> class_names;
  const std::vector<data::EncodedRecord>* records = nullptr;
  std::vector<std::size_t> pool;  // sampling pool, oversampling applied
  const std::set<std::string>* training_canonical = nullptr;
  std::vector<AuxiliarySource> auxiliaries;  // reward sources, frozen
  const auxdisc::RandomForestModel* classifier = nullptr;  // for yield
};

struct EpochMetrics {
  int epoch = 0;
  std::vector<metrics::GenerationReport> reports;  // one per class prompt
  std::vector<double> responsiveness;              // per class
  double target_responsiveness = 0.0;
  double critic_loss = 0.0;
  double mean_q = 0.0;
  double policy_objective = 0.0;
};

/// Sample `count` sequences per prompt and report yield-related metrics.
std::vector<metrics::GenerationReport> evaluate_prompts(const neural::GeneratorParams& generator,
                                                        const TrainingData& data, int count, int max_len,
                                                        std::uint64_t seed, int workers);

/// For class c: log10 of the class-c yield under prompt c over the mean class-c
/// yield under the other prompts.
std::vector<double> prompt_responsiveness(const std::vector<metrics::GenerationReport>& reports);

std::string epoch_record(const EpochMetrics& metrics, const std::vector<std::string>& class_names);

std::string checkpoint_name(int epoch, const std::string& config_hash);

using EpochCallback = std::function<void(const EpochMetrics&)>;

/// Alternates generator policy-gradient passes and critic passes for the
/// configured epochs. Throws NonFiniteLoss after writing a diagnostic dump when
/// any loss or parameter stops being finite.
std::vector<EpochMetrics> train_adversarial(TrainingState& state, const TrainingData& data,
                                            const AdversarialConfig& config, const EpochCallback& on_epoch = {});

/// Length statistics travel in checkpoint metadata as "mean:stddev" per class.
std::string encode_length_stats(const std::vector<data::LengthStats>& stats);
std::vector<data::LengthStats> decode_length_stats(const std::string& text);

}  // namespace adseqgan::adversarial
