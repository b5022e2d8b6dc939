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
#include <span>
#include <string>
#include <vector>

#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/data/data.hpp"
#include "adseqgan/neural/critic.hpp"
#include "adseqgan/neural/generator.hpp"

namespace adseqgan {
class Rng;
}

namespace adseqgan::adversarial {

struct RewardConfig {
  std::vector<double> lambdas = {0.2, 0.8};  // adversarial weight first, then one per auxiliary
  int rollouts = 16;                         // M
  int rollout_offset = 1;                    // x: first timestep that receives a reward
  std::vector<data::LengthStats> length_stats;  // per class
  double length_floor = 0.02;
  bool standardize = true;
  bool repetition_penalty = true;
  bool length_weighting = true;

  /// Throws InvalidConfig unless lambdas are non-negative and sum to 1 within 1e-9,
  /// M >= 1, x >= 1 and the floor lies in (0, 1].
  void validate() const;
};

/// lambda_0 * critic + sum_n lambda_n * aux[n].
double blend(std::span<const double> lambdas, double critic, std::span<const double> aux);

/// Min-max scaling to [0, 1]; a constant batch maps to 0.5 everywhere.
std::vector<double> minmax_standardize(std::span<const double> values);

/// For each key, the number of times it occurs in the batch.
std::vector<int> duplicate_counts(const std::vector<std::string>& keys);

/// max(floor, exp(-|L - mean| / stddev)).
double length_weight(int length, const data::LengthStats& stats, double floor);

/// Per-sequence shaping record; shaped q(t) = unshaped q(t) / duplicates * length_weight.
struct SequenceAudit {
  std::string key;
  int label = 0;
  int length = 0;
  int duplicates = 1;
  double length_weight = 1.0;
  double raw_critic = 0.0;       // critic score of the finished sequence
  double standardized_critic = 0.0;
  std::vector<double> auxiliary; // auxiliary rewards of the finished sequence
};

struct RewardBatch {
  std::vector<std::vector<double>> q;           // shaped, per sequence per timestep
  std::vector<std::vector<double>> q_unshaped;  // blended and rollout-averaged, before shaping
  std::vector<SequenceAudit> audit;
  double critic_min = 0.0;  // over every critic score computed for the batch
  double critic_max = 0.0;
  std::size_t completions = 0;
};

/// Apply repetition penalty and length weight to rollout-averaged Q values.
RewardBatch shape_rewards(std::vector<std::vector<double>> q_unshaped, std::vector<SequenceAudit> audit,
                          const RewardConfig& config);

/// M completions of the prefix, each sampled from the live generator.
std::vector<std::vector<int>> mc_rollout(const neural::GeneratorParams& generator, int label,
                                         std::span<const int> prefix, int m, int max_len, Rng& rng);

using SequenceReward = std::function<double(const std::vector<int>&)>;

/// Q(t) for t = 1..T under a plain reward function: zero before the offset, the
/// reward itself at t = T, otherwise the mean reward of M rollouts of y_1..y_t.
std::vector<double> estimate_q(const neural::GeneratorParams& generator, int label, const std::vector<int>& sequence,
                               int m, int max_len, int offset, const SequenceReward& reward, Rng& rng);

struct AuxiliarySource {
  const auxdisc::RandomForestModel* model = nullptr;
  auxdisc::RewardMode mode = auxdisc::RewardMode::Product;
  double tau = auxdisc::kDefaultThreshold;
};

struct RewardSources {
  const neural::CriticParams* critic = nullptr;
  int pad_to = 80;
  std::vector<AuxiliarySource> auxiliaries;
  const data::Vocabulary* vocab = nullptr;
};

/// Duplicate key: requested label plus canonical SMILES, or the raw token string
/// when the text does not parse.
std::string sequence_key(int label, const std::string& decoded, std::span<const int> tokens);

/// Full reward pass for a generated batch: rollouts from the offset, critic and
/// auxiliary scoring, per-batch standardization, lambda blend, shaping.
/// Rollout streams derive from (seed, sequence index).
RewardBatch compute_rewards(const neural::GeneratorParams& generator, const std::vector<std::vector<int>>& sequences,
                            const std::vector<int>& labels, const RewardSources& sources, const RewardConfig& config,
                            int max_len, std::uint64_t seed, int workers = 1);

}  // namespace adseqgan::adversarial
