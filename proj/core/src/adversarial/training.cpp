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

#include "adseqgan/adversarial/training.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/parallel.hpp"
#include "adseqgan/common/rng.hpp"
#include "adseqgan/common/text.hpp"
#include "json.hpp"

namespace adseqgan::adversarial {

namespace {

using neural::GeneratorParams;

void ensure_adam(neural::AdamState& opt, const neural::ConstTensorRefs& params) {
  if (opt.m.empty()) opt = neural::make_adam_state(params);
}

std::vector<std::size_t> full_pool(const std::vector<std::size_t>& pool, std::size_t records) {
  if (!pool.empty()) return pool;
  std::vector<std::size_t> out(records);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::size_t batch_count(std::size_t pool, int batch, int override_count) {
  if (override_count > 0) return static_cast<std::size_t>(override_count);
  const auto b = static_cast<std::size_t>(batch);
  return (pool + b - 1) / b;
}

/// Indices k*B .. k*B+B-1 of the shuffled pool. With wrap the pool is cycled;
/// otherwise a trailing batch is kept short.
std::vector<std::size_t> chunk(const std::vector<std::size_t>& shuffled, std::size_t k, int batch, bool wrap) {
  std::vector<std::size_t> out;
  const std::size_t B = static_cast<std::size_t>(batch);
  const std::size_t n = shuffled.size();
  for (std::size_t i = k * B; i < (k + 1) * B; ++i) {
    if (!wrap && i >= n) break;
    out.push_back(shuffled[i % n]);
  }
  return out;
}

nlohmann::ordered_json metric_value(double v) {
  if (std::isfinite(v)) return v;
  return metrics::format_metric(v);
}

}  // namespace

std::vector<double> pretrain_generator_mle(GeneratorParams& generator, neural::AdamState& opt,
                                           const std::vector<data::EncodedRecord>& records,
                                           const std::vector<std::size_t>& pool, const MleConfig& config) {
  if (records.empty()) throw Error(Errc::EmptyDataset, "no records to pretrain on");
  if (config.epochs < 1) throw Error(Errc::InvalidConfig, "MLE epochs must be at least 1");
  if (config.batch < 1) throw Error(Errc::InvalidConfig, "MLE batch must be at least 1");
  ensure_adam(opt, std::as_const(generator).tensors());
  std::vector<std::size_t> order = full_pool(pool, records.size());
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(config.epochs));
  GeneratorParams grads = generator.zeros_like();
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng = Rng::derive(config.seed, {static_cast<std::uint64_t>(epoch)});
    rng.shuffle(order.begin(), order.end());
    double log_prob = 0.0;
    double tokens = 0.0;
    const std::size_t B = static_cast<std::size_t>(config.batch);
    for (std::size_t begin = 0; begin < order.size(); begin += B) {
      const std::size_t end = std::min(order.size(), begin + B);
      std::size_t count = 0;
      for (std::size_t i = begin; i < end; ++i) count += records[order[i]].tokens.size();
      if (count == 0) continue;
      neural::zero(grads.tensors());
      const double w = 1.0 / static_cast<double>(count);
      double batch_log_prob = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto& r = records[order[i]];
        const std::vector<double> weights(r.tokens.size(), w);
        batch_log_prob += neural::log_prob_backward(generator, r.label, r.tokens, weights, grads);
      }
      if (!std::isfinite(batch_log_prob)) {
        throw Error(Errc::NonFiniteLoss, "MLE epoch " + std::to_string(epoch + 1) + ": non-finite likelihood");
      }
      neural::clip_global_norm(grads.tensors(), config.clip_norm);
      neural::adam_step(generator.tensors(), std::as_const(grads).tensors(), opt, config.adam);
      log_prob += batch_log_prob * static_cast<double>(count);
      tokens += static_cast<double>(count);
    }
    if (!neural::all_finite(std::as_const(generator).tensors())) {
      throw Error(Errc::NonFiniteLoss, "MLE epoch " + std::to_string(epoch + 1) + ": non-finite parameters");
    }
    trace.push_back(-log_prob / tokens);
  }
  return trace;
}

std::vector<double> train_critic(neural::CriticParams& critic, neural::AdamState& opt,
                                 const std::vector<std::vector<int>>& real, const std::vector<std::vector<int>>& fake,
                                 int steps, const CriticConfig& config) {
  if (real.empty() || fake.empty()) throw Error(Errc::EmptyBatch, "critic needs real and generated sequences");
  ensure_adam(opt, std::as_const(critic).tensors());
  const std::vector<double> d_real(real.size(), -1.0 / static_cast<double>(real.size()));
  const std::vector<double> d_fake(fake.size(), 1.0 / static_cast<double>(fake.size()));
  std::vector<double> losses;
  neural::CriticParams grads = critic.zeros_like();
  for (int s = 0; s < steps; ++s) {
    neural::zero(grads.tensors());
    const auto real_scores = neural::critic_backward_batch(critic, real, config.pad_to, d_real, grads);
    const auto fake_scores = neural::critic_backward_batch(critic, fake, config.pad_to, d_fake, grads);
    const double mean_real = std::accumulate(real_scores.begin(), real_scores.end(), 0.0) / real_scores.size();
    const double mean_fake = std::accumulate(fake_scores.begin(), fake_scores.end(), 0.0) / fake_scores.size();
    const double loss = mean_fake - mean_real;
    if (!std::isfinite(loss)) throw Error(Errc::NonFiniteLoss, "critic loss at step " + std::to_string(s + 1));
    neural::adam_step(critic.tensors(), std::as_const(grads).tensors(), opt, config.adam);
    neural::clip_weights(critic.tensors(), config.clip);
    losses.push_back(loss);
  }
  return losses;
}

double policy_gradient(const GeneratorParams& generator, const std::vector<std::vector<int>>& sequences,
                       const std::vector<int>& labels, const std::vector<std::vector<double>>& q,
                       GeneratorParams& grads) {
  if (sequences.empty()) throw Error(Errc::EmptyBatch, "no sequences for the policy gradient");
  if (labels.size() != sequences.size() || q.size() != sequences.size()) {
    throw Error(Errc::ShapeMismatch, "sequences, labels and Q differ in batch size");
  }
  const double B = static_cast<double>(sequences.size());
  double objective = 0.0;
  std::vector<double> weights;
  for (std::size_t b = 0; b < sequences.size(); ++b) {
    if (q[b].size() != sequences[b].size()) {
      throw Error(Errc::ShapeMismatch, "sequence " + std::to_string(b) + ": " + std::to_string(q[b].size()) +
                                           " Q values for " + std::to_string(sequences[b].size()) + " tokens");
    }
    if (sequences[b].empty()) continue;
    const double scale = 1.0 / (B * static_cast<double>(sequences[b].size()));
    weights.resize(q[b].size());
    for (std::size_t t = 0; t < q[b].size(); ++t) weights[t] = q[b][t] * scale;
    objective += neural::log_prob_backward(generator, labels[b], sequences[b], weights, grads);
  }
  return objective;
}

double policy_gradient_update(GeneratorParams& generator, neural::AdamState& opt,
                              const std::vector<std::vector<int>>& sequences, const std::vector<int>& labels,
                              const std::vector<std::vector<double>>& q, const PolicyGradientConfig& config) {
  ensure_adam(opt, std::as_const(generator).tensors());
  GeneratorParams grads = generator.zeros_like();
  const double objective = policy_gradient(generator, sequences, labels, q, grads);
  if (neural::global_norm(std::as_const(grads).tensors()) == 0.0) return objective;
  neural::clip_global_norm(grads.tensors(), config.clip_norm);
  neural::adam_step(generator.tensors(), std::as_const(grads).tensors(), opt, config.adam);
  return objective;
}

std::vector<metrics::GenerationReport> evaluate_prompts(const GeneratorParams& generator, const TrainingData& data,
                                                        int count, int max_len, std::uint64_t seed, int workers) {
  if (data.vocab == nullptr || data.training_canonical == nullptr || data.classifier == nullptr) {
    throw Error(Errc::InvalidConfig, "evaluation needs a vocabulary, training set and classifier");
  }
  std::vector<metrics::GenerationReport> reports;
  const auto n = static_cast<std::size_t>(std::max(count, 0));
  for (int c = 0; c < generator.class_count(); ++c) {
    std::vector<metrics::Sample> samples(n);
    parallel_for(n, workers, [&](std::size_t i) {
      Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(c), i});
      const auto seq = neural::sample_sequence(generator, c, max_len, rng);
      samples[i] = {data.vocab->decode(seq), data::Vocabulary::content_length(seq, data.vocab->eos())};
    });
    metrics::EvaluateOptions options;
    options.seed = seed;
    reports.push_back(metrics::evaluate(samples, c, *data.training_canonical, *data.classifier, options));
  }
  return reports;
}

std::vector<double> prompt_responsiveness(const std::vector<metrics::GenerationReport>& reports) {
  std::vector<double> out;
  const std::size_t C = reports.size();
  auto class_yield = [&](std::size_t prompt, std::size_t c) {
    const auto& r = reports[prompt];
    const double ratio = c < r.class_ratios.size() ? r.class_ratios[c] : 0.0;
    return r.uniqueness * r.validity * ratio;
  };
  for (std::size_t c = 0; c < C; ++c) {
    double other = 0.0;
    for (std::size_t p = 0; p < C; ++p) {
      if (p != c) other += class_yield(p, c);
    }
    if (C > 1) other /= static_cast<double>(C - 1);
    out.push_back(metrics::responsiveness(class_yield(c, c), other));
  }
  return out;
}

std::string epoch_record(const EpochMetrics& m, const std::vector<std::string>& class_names) {
  nlohmann::ordered_json j;
  j["epoch"] = m.epoch;
  j["critic_loss"] = metric_value(m.critic_loss);
  j["mean_q"] = metric_value(m.mean_q);
  j["policy_objective"] = metric_value(m.policy_objective);
  j["responsiveness"] = metric_value(m.target_responsiveness);
  auto& classes = j["classes"];
  classes = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < m.reports.size(); ++c) {
    const auto& r = m.reports[c];
    nlohmann::ordered_json e;
    e["prompt"] = c < class_names.size() ? class_names[c] : std::to_string(c);
    e["validity"] = r.validity;
    e["uniqueness"] = r.uniqueness;
    e["novelty"] = r.novelty;
    e["class_ratio"] = r.class_ratio;
    e["yield"] = r.yield;
    e["responsiveness"] = metric_value(c < m.responsiveness.size() ? m.responsiveness[c] : 0.0);
    e["mean_length"] = r.mean_length;
    e["std_length"] = r.std_length;
    e["mean_tanimoto"] = r.mean_tanimoto;
    classes.push_back(std::move(e));
  }
  return j.dump();
}

std::string checkpoint_name(int epoch, const std::string& config_hash) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%03d", epoch);
  return "checkpoint_epoch" + std::string(buf) + "_" + (config_hash.empty() ? "nohash" : config_hash) + ".txt";
}

std::string encode_length_stats(const std::vector<data::LengthStats>& stats) {
  std::string out;
  for (const auto& s : stats) {
    if (!out.empty()) out += ' ';
    out += format_double(s.mean) + ':' + format_double(s.stddev);
  }
  return out;
}

std::vector<data::LengthStats> decode_length_stats(const std::string& text) {
  std::vector<data::LengthStats> out;
  for (const auto& field : split(text, ' ')) {
    if (field.empty()) continue;
    const auto parts = split(field, ':');
    if (parts.size() != 2) throw Error(Errc::MalformedRow, "length statistics field '" + std::string(field) + "'");
    out.push_back({parse_double(parts[0]), parse_double(parts[1])});
  }
  return out;
}

namespace {

struct Diagnostic {
  int epoch = 0;
  std::string phase;
  std::size_t batch = 0;
  double value = 0.0;
};

[[noreturn]] void abort_non_finite(const TrainingState& state, const AdversarialConfig& config, const Diagnostic& d) {
  std::ostringstream dump;
  dump << "epoch " << d.epoch << "\nphase " << d.phase << "\nbatch " << d.batch << "\nvalue " << format_double(d.value)
       << "\ngenerator_finite " << neural::all_finite(state.generator.tensors()) << "\ngenerator_norm "
       << format_double(neural::global_norm(state.generator.tensors())) << "\ncritic_finite "
       << neural::all_finite(state.critic.tensors()) << "\ncritic_norm "
       << format_double(neural::global_norm(state.critic.tensors())) << '\n';
  std::string where;
  if (!config.output_dir.empty()) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "diagnostic_epoch%03d.txt", d.epoch);
    const auto path = (std::filesystem::path(config.output_dir) / buf).string();
    write_file(path, dump.str());
    where = "; dump written to " + path;
  }
  throw Error(Errc::NonFiniteLoss, "non-finite " + d.phase + " at epoch " + std::to_string(d.epoch) + where);
}

}  // namespace

std::vector<EpochMetrics> train_adversarial(TrainingState& state, const TrainingData& data,
                                            const AdversarialConfig& config, const EpochCallback& on_epoch) {
  config.reward.validate();
  if (data.vocab == nullptr || data.records == nullptr) throw Error(Errc::InvalidConfig, "training data incomplete");
  if (data.records->empty()) throw Error(Errc::EmptyDataset, "no training records");
  if (config.batch < 1 || config.epochs < 0 || config.g_steps < 0 || config.d_steps < 0) {
    throw Error(Errc::InvalidConfig, "batch must be positive and step counts non-negative");
  }
  const int classes = state.generator.class_count();
  if (config.reward.length_weighting && static_cast<int>(config.reward.length_stats.size()) != classes) {
    throw Error(Errc::InvalidConfig, "length weighting needs statistics for every class");
  }
  if (config.target_class < 0 || config.target_class >= classes) {
    throw Error(Errc::UnknownClass, "target class " + std::to_string(config.target_class));
  }
  ensure_adam(state.generator_opt, std::as_const(state.generator).tensors());
  ensure_adam(state.critic_opt, std::as_const(state.critic).tensors());
  const auto& records = *data.records;
  const std::vector<std::size_t> pool = full_pool(data.pool, records.size());

  std::string trace_path;
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    trace_path = (std::filesystem::path(config.output_dir) / "metrics.jsonl").string();
    write_file(trace_path, "");
  }

  RewardSources sources;
  sources.critic = &state.critic;
  sources.pad_to = config.critic.pad_to;
  sources.auxiliaries = data.auxiliaries;
  sources.vocab = data.vocab;

  auto sample_batch = [&](const std::vector<int>& labels, std::uint64_t epoch, std::uint64_t phase, std::uint64_t step,
                          std::uint64_t batch) {
    std::vector<std::vector<int>> seqs(labels.size());
    parallel_for(labels.size(), config.workers, [&](std::size_t b) {
      Rng rng = Rng::derive(config.seed, {epoch, phase, step, batch, b});
      seqs[b] = neural::sample_sequence(state.generator, labels[b], config.max_len, rng);
    });
    return seqs;
  };

  std::vector<EpochMetrics> trace;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto e = static_cast<std::uint64_t>(epoch);
    EpochMetrics m;
    m.epoch = epoch;
    if (!neural::all_finite(std::as_const(state.generator).tensors()) ||
        !neural::all_finite(std::as_const(state.critic).tensors())) {
      abort_non_finite(state, config, {epoch, "parameters", 0, std::nan("")});
    }
    double q_sum = 0.0, objective_sum = 0.0;
    std::size_t q_count = 0, updates = 0;

    for (int step = 0; step < config.g_steps; ++step) {
      const auto s = static_cast<std::uint64_t>(step);
      std::vector<std::size_t> order = pool;
      Rng order_rng = Rng::derive(config.seed, {e, 0, s});
      order_rng.shuffle(order.begin(), order.end());
      const std::size_t batches = batch_count(order.size(), config.batch, config.generator_batches);
      for (std::size_t k = 0; k < batches; ++k) {
        const auto idx = chunk(order, k, config.batch, config.generator_batches > 0);
        std::vector<int> labels;
        for (std::size_t i : idx) labels.push_back(records[i].label);
        const auto seqs = sample_batch(labels, e, 1, s, k);
        const std::uint64_t reward_seed = Rng::derive(config.seed, {e, 2, s, k}).next();
        const RewardBatch rewards =
            compute_rewards(state.generator, seqs, labels, sources, config.reward, config.max_len, reward_seed,
                            config.workers);
        for (const auto& row : rewards.q) {
          for (double q : row) {
            q_sum += q;
            ++q_count;
          }
        }
        const double objective =
            policy_gradient_update(state.generator, state.generator_opt, seqs, labels, rewards.q, config.policy);
        if (!std::isfinite(objective) || !neural::all_finite(std::as_const(state.generator).tensors())) {
          abort_non_finite(state, config, {epoch, "policy gradient", k, objective});
        }
        objective_sum += objective;
        ++updates;
      }
    }

    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    for (int step = 0; step < config.d_steps; ++step) {
      const auto s = static_cast<std::uint64_t>(step);
      std::vector<std::size_t> order = pool;
      Rng order_rng = Rng::derive(config.seed, {e, 3, s});
      order_rng.shuffle(order.begin(), order.end());
      const std::size_t batches = batch_count(order.size(), config.batch, config.critic_batches);
      for (std::size_t k = 0; k < batches; ++k) {
        const auto idx = chunk(order, k, config.batch, config.critic_batches > 0);
        std::vector<int> labels;
        std::vector<std::vector<int>> real;
        for (std::size_t i : idx) {
          labels.push_back(records[i].label);
          real.push_back(records[i].tokens);
        }
        const auto fake = sample_batch(labels, e, 4, s, k);
        double loss = 0.0;
        try {
          loss = train_critic(state.critic, state.critic_opt, real, fake, 1, config.critic).front();
        } catch (const Error& err) {
          if (err.code() != Errc::NonFiniteLoss) throw;
          abort_non_finite(state, config, {epoch, "critic loss", k, std::nan("")});
        }
        if (!neural::all_finite(std::as_const(state.critic).tensors())) {
          abort_non_finite(state, config, {epoch, "critic parameters", k, loss});
        }
        loss_sum += loss;
        ++loss_count;
      }
    }

    m.critic_loss = loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0;
    m.mean_q = q_count ? q_sum / static_cast<double>(q_count) : 0.0;
    m.policy_objective = updates ? objective_sum / static_cast<double>(updates) : 0.0;
    if (data.classifier != nullptr && data.training_canonical != nullptr && config.eval_samples > 0) {
      m.reports = evaluate_prompts(state.generator, data, config.eval_samples, config.max_len,
                                   Rng::derive(config.seed, {e, 5}).next(), config.workers);
      m.responsiveness = prompt_responsiveness(m.reports);
      m.target_responsiveness = m.responsiveness[static_cast<std::size_t>(config.target_class)];
    }

    if (!config.output_dir.empty()) {
      neural::Checkpoint ck;
      ck.config_hash = config.config_hash;
      ck.meta = config.checkpoint_meta;
      ck.meta["epoch"] = std::to_string(epoch);
      ck.meta["stage"] = "adversarial";
      ck.meta["length_stats"] = encode_length_stats(config.reward.length_stats);
      ck.vocabulary = data.vocab->tokens();
      ck.generator = state.generator;
      ck.generator_opt = state.generator_opt;
      ck.critic = state.critic;
      ck.critic_opt = state.critic_opt;
      const auto name = checkpoint_name(epoch, config.config_hash);
      neural::save_checkpoint((std::filesystem::path(config.output_dir) / name).string(), ck);
      std::ofstream out(trace_path, std::ios::app | std::ios::binary);
      out << epoch_record(m, data.class_names) << '\n';
      if (!out) throw Error(Errc::IoError, "cannot append to " + trace_path);
    }
    if (on_epoch) on_epoch(m);
    trace.push_back(std::move(m));
  }
  return trace;
}

}  // namespace adseqgan::adversarial
