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

#include "adseqgan/adversarial/reward.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/parallel.hpp"
#include "adseqgan/common/rng.hpp"

namespace adseqgan::adversarial {

void RewardConfig::validate() const {
  if (lambdas.empty()) throw Error(Errc::InvalidConfig, "lambda list is empty");
  double sum = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw Error(Errc::InvalidConfig, "lambda weights must be non-negative");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::InvalidConfig, "lambda weights sum to " + std::to_string(sum) + ", expected 1");
  }
  if (rollouts < 1) throw Error(Errc::InvalidConfig, "rollout count must be at least 1");
  if (rollout_offset < 1) throw Error(Errc::InvalidConfig, "rollout offset must be at least 1");
  if (!(length_floor > 0.0 && length_floor <= 1.0)) throw Error(Errc::InvalidConfig, "length floor must be in (0, 1]");
}

double blend(std::span<const double> lambdas, double critic, std::span<const double> aux) {
  if (aux.size() + 1 != lambdas.size()) throw Error(Errc::ShapeMismatch, "one lambda per reward source required");
  double q = lambdas[0] * critic;
  for (std::size_t n = 0; n < aux.size(); ++n) q += lambdas[n + 1] * aux[n];
  return q;
}

std::vector<double> minmax_standardize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.5);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, max = *hi;
  if (!(max > min)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Endpoints are pinned so the batch extremes are exactly 0 and 1.
    if (values[i] == min) {
      out[i] = 0.0;
    } else if (values[i] == max) {
      out[i] = 1.0;
    } else {
      out[i] = std::clamp((values[i] - min) / (max - min), 0.0, 1.0);
    }
  }
  return out;
}

std::vector<int> duplicate_counts(const std::vector<std::string>& keys) {
  std::unordered_map<std::string, int> counts;
  for (const auto& k : keys) ++counts[k];
  std::vector<int> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(counts[k]);
  return out;
}

double length_weight(int length, const data::LengthStats& stats, double floor) {
  const double sigma = stats.stddev > 0.0 ? stats.stddev : 1.0;
  return std::max(floor, std::exp(-std::abs(static_cast<double>(length) - stats.mean) / sigma));
}

RewardBatch shape_rewards(std::vector<std::vector<double>> q_unshaped, std::vector<SequenceAudit> audit,
                          const RewardConfig& config) {
  if (q_unshaped.empty()) throw Error(Errc::EmptyBatch, "no sequences to shape");
  if (q_unshaped.size() != audit.size()) throw Error(Errc::ShapeMismatch, "audit and Q lists differ in length");
  std::vector<std::string> keys;
  for (const auto& a : audit) keys.push_back(a.key);
  const auto dups = duplicate_counts(keys);
  RewardBatch batch;
  batch.q.resize(q_unshaped.size());
  for (std::size_t b = 0; b < audit.size(); ++b) {
    auto& a = audit[b];
    a.duplicates = config.repetition_penalty ? dups[b] : 1;
    a.length_weight = 1.0;
    if (config.length_weighting && static_cast<std::size_t>(a.label) < config.length_stats.size()) {
      a.length_weight = length_weight(a.length, config.length_stats[static_cast<std::size_t>(a.label)],
                                      config.length_floor);
    }
    batch.q[b].reserve(q_unshaped[b].size());
    for (double q : q_unshaped[b]) batch.q[b].push_back(q / a.duplicates * a.length_weight);
  }
  batch.q_unshaped = std::move(q_unshaped);
  batch.audit = std::move(audit);
  return batch;
}

std::vector<std::vector<int>> mc_rollout(const neural::GeneratorParams& generator, int label,
                                         std::span<const int> prefix, int m, int max_len, Rng& rng) {
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(std::max(m, 0)));
  const auto state = neural::run_prefix(generator, label, prefix);
  for (int i = 0; i < m; ++i) out.push_back(neural::complete_sequence(generator, prefix, state, max_len, rng));
  return out;
}

std::vector<double> estimate_q(const neural::GeneratorParams& generator, int label, const std::vector<int>& sequence,
                               int m, int max_len, int offset, const SequenceReward& reward, Rng& rng) {
  const std::size_t T = sequence.size();
  std::vector<double> q(T, 0.0);
  for (std::size_t t = std::max(offset, 1); t <= T; ++t) {
    if (t == T) {
      q[t - 1] = reward(sequence);
      continue;
    }
    const auto rollouts = mc_rollout(generator, label, std::span<const int>(sequence).first(t), m, max_len, rng);
    double sum = 0.0;
    for (const auto& r : rollouts) sum += reward(r);
    q[t - 1] = sum / static_cast<double>(m);
  }
  return q;
}

std::string sequence_key(int label, const std::string& decoded, std::span<const int> tokens) {
  std::string key = std::to_string(label) + ':';
  try {
    return key + "smiles:" + chem::canonical_smiles(decoded);
  } catch (const chem::SmilesError&) {
    key += "tokens:";
    for (int t : tokens) key += std::to_string(t) + ' ';
    return key;
  }
}

namespace {

struct Completion {
  int label = 0;
  std::vector<int> tokens;
};

struct CompletionLess {
  bool operator()(const Completion& a, const Completion& b) const {
    return a.label != b.label ? a.label < b.label : a.tokens < b.tokens;
  }
};

}  // namespace

RewardBatch compute_rewards(const neural::GeneratorParams& generator, const std::vector<std::vector<int>>& sequences,
                            const std::vector<int>& labels, const RewardSources& sources, const RewardConfig& config,
                            int max_len, std::uint64_t seed, int workers) {
  config.validate();
  if (sequences.empty()) throw Error(Errc::EmptyBatch, "no sequences to reward");
  if (labels.size() != sequences.size()) throw Error(Errc::ShapeMismatch, "one label per sequence required");
  if (config.lambdas.size() != sources.auxiliaries.size() + 1) {
    throw Error(Errc::InvalidConfig, "need one lambda per auxiliary plus the adversarial weight");
  }
  if (sources.critic == nullptr || sources.vocab == nullptr) throw Error(Errc::InvalidConfig, "reward sources incomplete");
  const std::size_t B = sequences.size();
  const int M = config.rollouts;

  // Completions per sequence and timestep; t = T holds the sequence itself.
  std::vector<std::vector<std::vector<std::vector<int>>>> completions(B);
  parallel_for(B, workers, [&](std::size_t b) {
    const auto& seq = sequences[b];
    const std::size_t T = seq.size();
    auto& per_t = completions[b];
    per_t.resize(T);
    Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(b)});
    for (std::size_t t = static_cast<std::size_t>(config.rollout_offset); t < T; ++t) {
      per_t[t - 1] = mc_rollout(generator, labels[b], std::span<const int>(seq).first(t), M, max_len, rng);
    }
    if (T > 0) per_t[T - 1] = {seq};
  });

  // Score each distinct (label, tokens) once.
  std::map<Completion, std::size_t, CompletionLess> index;
  std::vector<Completion> unique;
  std::vector<std::vector<std::vector<std::size_t>>> refs(B);
  for (std::size_t b = 0; b < B; ++b) {
    refs[b].resize(completions[b].size());
    for (std::size_t t = 0; t < completions[b].size(); ++t) {
      for (auto& c : completions[b][t]) {
        Completion key{labels[b], std::move(c)};
        auto [it, inserted] = index.emplace(key, unique.size());
        if (inserted) unique.push_back(std::move(key));
        refs[b][t].push_back(it->second);
      }
    }
  }
  completions.clear();

  const std::size_t N = sources.auxiliaries.size();
  std::vector<double> critic_raw(unique.size());
  std::vector<std::vector<double>> aux(unique.size(), std::vector<double>(N, 0.0));
  const neural::CriticScorer scorer(*sources.critic, sources.pad_to);
  parallel_for(unique.size(), workers, [&](std::size_t i) {
    critic_raw[i] = scorer(unique[i].tokens);
    if (N == 0) return;
    const std::string text = sources.vocab->decode(unique[i].tokens);
    for (std::size_t n = 0; n < N; ++n) {
      const auto& a = sources.auxiliaries[n];
      aux[i][n] = auxdisc::auxiliary_reward(*a.model, text, unique[i].label, a.mode, a.tau);
    }
  });
  const std::vector<double> critic_std = config.standardize ? minmax_standardize(critic_raw) : critic_raw;

  RewardBatch partial;
  if (!critic_raw.empty()) {
    const auto [lo, hi] = std::minmax_element(critic_raw.begin(), critic_raw.end());
    partial.critic_min = *lo;
    partial.critic_max = *hi;
  }
  std::vector<std::vector<double>> q(B);
  std::vector<SequenceAudit> audit(B);
  for (std::size_t b = 0; b < B; ++b) {
    q[b].assign(sequences[b].size(), 0.0);
    for (std::size_t t = 0; t < refs[b].size(); ++t) {
      if (refs[b][t].empty()) continue;
      double sum = 0.0;
      for (std::size_t i : refs[b][t]) sum += blend(config.lambdas, critic_std[i], aux[i]);
      q[b][t] = sum / static_cast<double>(refs[b][t].size());
    }
    auto& a = audit[b];
    a.label = labels[b];
    a.length = data::Vocabulary::content_length(sequences[b], sources.vocab->eos());
    const std::string text = sources.vocab->decode(sequences[b]);
    a.key = sequence_key(labels[b], text, sequences[b]);
    if (!refs[b].empty()) {
      const std::size_t full = refs[b].back().front();
      a.raw_critic = critic_raw[full];
      a.standardized_critic = critic_std[full];
      a.auxiliary = aux[full];
    }
  }
  RewardBatch batch = shape_rewards(std::move(q), std::move(audit), config);
  batch.critic_min = partial.critic_min;
  batch.critic_max = partial.critic_max;
  batch.completions = unique.size();
  return batch;
}

}  // namespace adseqgan::adversarial
