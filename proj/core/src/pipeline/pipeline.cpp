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

#include "adseqgan/pipeline/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/parallel.hpp"
#include "adseqgan/common/rng.hpp"
#include "adseqgan/common/text.hpp"
#include "adseqgan/descriptors/descriptors.hpp"
#include "adseqgan/neural/checkpoint.hpp"

namespace adseqgan::pipeline {

namespace fs = std::filesystem;

namespace {

// Stream tags for Rng::derive so every stage draws from its own sequence.
enum Stream : std::uint64_t {
  kGeneratorInit = 1,
  kCriticInit,
  kOversample,
  kMle,
  kCriticWarmup,
  kAdversarial,
  kGenerate,
  kClassifier,
  kEvaluate,
};

std::uint64_t stream(const Config& config, Stream s) {
  return Rng::derive(static_cast<std::uint64_t>(config.integer("seed")), {s}).next();
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

void write_resolved(const Config& config, const std::string& hash) {
  fs::create_directories(config.text("output_dir"));
  write_file(artifact(config, "config.resolved.txt"), config.resolved() + "# hash = " + hash + '\n');
}

std::string pretrain_name(const std::string& hash) { return "pretrain_" + hash + ".txt"; }
std::string final_name(const std::string& hash) { return "final_" + hash + ".txt"; }

auxdisc::RandomForestModel load_classifier(const Config& config, const std::string& hash) {
  const std::string path = artifact(config, "classifier.model");
  if (!fs::exists(path)) throw Error(Errc::MissingArtifact, "classifier model " + path + "; run train-classifier");
  auto model = auxdisc::deserialize_model(read_file(path));
  if (model.config_hash != hash) {
    throw Error(Errc::ConfigHashMismatch,
                "classifier model " + path + " has hash " + model.config_hash + ", configuration has " + hash);
  }
  return model;
}

neural::GeneratorShape generator_shape(const Config& config, const data::Vocabulary& vocab) {
  neural::GeneratorShape s;
  s.vocab = vocab.size();
  s.d_emb = static_cast<int>(config.integer("d_emb"));
  s.d_hid = static_cast<int>(config.integer("d_hid"));
  s.eos_token = vocab.eos();
  s.start_tokens = vocab.start_tokens();
  s.emittable = vocab.emittable_mask();
  return s;
}

neural::CriticShape critic_shape(const Config& config, const data::Vocabulary& vocab) {
  neural::CriticShape s;
  s.vocab = vocab.size();
  s.d_emb = static_cast<int>(config.integer("critic_d_emb"));
  s.windows.clear();
  for (long long w : config.integers("critic_windows")) s.windows.push_back(static_cast<int>(w));
  s.filters = static_cast<int>(config.integer("critic_filters"));
  s.pad_token = vocab.pad();
  return s;
}

std::vector<std::size_t> sampling_pool(const Config& config, const Prepared& p) {
  const std::string& cls = config.text("oversample_class");
  std::vector<std::size_t> pool(p.records.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  if (cls.empty()) return pool;
  std::vector<int> labels;
  for (const auto& r : p.records) labels.push_back(r.label);
  const data::OversampleSampler sampler(labels, static_cast<int>(p.clean.class_names.size()), p.class_index(cls),
                                        static_cast<int>(config.integer("oversample_factor")),
                                        stream(config, kOversample));
  return sampler.pool();
}

int target_class(const Config& config, const Prepared& p) {
  const std::string& name = config.text("target_class");
  return name.empty() ? 0 : p.class_index(name);
}

neural::Checkpoint load_chain_checkpoint(const std::string& path, const std::string& hash, const std::string& hint) {
  if (!fs::exists(path)) throw Error(Errc::MissingArtifact, "checkpoint " + path + "; run " + hint);
  return neural::load_checkpoint(path, hash);
}

}  // namespace

int Prepared::class_index(const std::string& name) const {
  const auto& names = clean.class_names;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(Errc::UnknownClass, "class '" + name + "' (known: " + join(names, ',') + ")");
  return static_cast<int>(it - names.begin());
}

std::string artifact(const Config& config, const std::string& name) {
  return (fs::path(config.text("output_dir")) / name).string();
}

Prepared prepare(const Config& config) {
  config.validate();
  const std::string& path = config.text("data");
  if (!fs::exists(path)) throw Error(Errc::FileNotFound, "dataset " + path);
  const std::string bytes = read_file(path);
  Prepared p;
  p.hash = config.hash(bytes);
  const auto raw = data::parse_dataset(bytes, config.texts("classes"));
  data::PreprocessOptions options;
  options.min_tokens = static_cast<int>(config.integer("min_tokens"));
  options.max_tokens = static_cast<int>(config.integer("max_tokens"));
  p.clean = data::preprocess_all(raw, options);
  if (p.clean.records.empty()) throw Error(Errc::EmptyDataset, "no records survive preprocessing of " + path);
  const int classes = static_cast<int>(p.clean.class_names.size());
  p.vocab = data::Vocabulary::build(p.clean.records, classes);
  p.records = data::encode_records(p.clean.records, p.vocab);
  p.lengths = data::length_stats(p.clean.records, classes);
  for (const auto& r : p.clean.records) p.canonical.insert(r.smiles);
  const long long max_len = config.integer("max_len");
  if (max_len < options.max_tokens + 1) {
    throw Error(Errc::InvalidConfig, "max_len must leave room for max_tokens plus the end token");
  }
  return p;
}

ClassifierResult train_classifier(const Config& config) {
  const Prepared p = prepare(config);
  write_resolved(config, p.hash);
  write_file(artifact(config, "rejected.tsv"), data::rejection_report(p.clean.rejected));
  auxdisc::LabeledDataset labeled;
  labeled.class_names = p.clean.class_names;
  for (const auto& r : p.clean.records) {
    labeled.rows.push_back(descriptors::compute_descriptors(chem::parse_smiles(r.smiles)));
    labeled.labels.push_back(r.label);
  }
  const auto counts = labeled.class_counts();
  if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2) {
    throw Error(Errc::DegenerateLabels, "classifier training needs at least two populated classes");
  }
  const std::uint64_t seed = stream(config, kClassifier);
  const int folds = static_cast<int>(config.integer("cv_folds"));
  const int trees = static_cast<int>(config.integer("trees"));
  ClassifierResult result;
  result.features = auxdisc::select_features(labeled, static_cast<int>(config.integer("features")), folds, seed);
  result.cv_auc = auxdisc::cross_validated_forest_auc(labeled, result.features, trees, folds, seed);
  auto model = auxdisc::train_random_forest(labeled, result.features, trees, seed,
                                            static_cast<int>(config.integer("min_leaf")));
  model.config_hash = p.hash;
  result.model_path = artifact(config, "classifier.model");
  write_file(result.model_path, auxdisc::serialize_model(model));
  std::string report = "config_hash\t" + p.hash + "\nrecords\t" + std::to_string(labeled.size()) + "\nrejected\t" +
                       std::to_string(p.clean.rejected.size()) + "\ncv_auc\t" + format_double(result.cv_auc) +
                       "\nfeatures";
  for (int f : result.features) report += std::string("\t") + std::string(descriptors::descriptor_names()[f]);
  write_file(artifact(config, "classifier_report.txt"), report + '\n');
  return result;
}

PretrainResult pretrain(const Config& config) {
  const Prepared p = prepare(config);
  write_resolved(config, p.hash);
  const auto pool = sampling_pool(config, p);

  neural::Checkpoint ck;
  ck.config_hash = p.hash;
  ck.vocabulary = p.vocab.tokens();
  ck.generator = neural::init_generator(generator_shape(config, p.vocab), stream(config, kGeneratorInit));
  adversarial::MleConfig mle;
  mle.epochs = static_cast<int>(config.integer("mle_epochs"));
  mle.batch = static_cast<int>(config.integer("mle_batch"));
  mle.adam.lr = config.real("mle_lr");
  mle.clip_norm = config.real("grad_clip");
  mle.seed = stream(config, kMle);
  PretrainResult result;
  result.nll = adversarial::pretrain_generator_mle(ck.generator, ck.generator_opt, p.records, pool, mle);

  // Critic warm-up on one real batch against generated sequences of the same labels.
  ck.critic = neural::init_critic(critic_shape(config, p.vocab), stream(config, kCriticInit), config.real("critic_init"));
  const int steps = static_cast<int>(config.integer("critic_pretrain_steps"));
  if (steps > 0) {
    Rng rng(stream(config, kCriticWarmup));
    std::vector<std::size_t> order = pool;
    rng.shuffle(order.begin(), order.end());
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(config.integer("batch"))));
    std::vector<std::vector<int>> real, fake;
    const int max_len = static_cast<int>(config.integer("max_len"));
    for (std::size_t i : order) {
      real.push_back(p.records[i].tokens);
      fake.push_back(neural::sample_sequence(ck.generator, p.records[i].label, max_len, rng));
    }
    adversarial::CriticConfig cc;
    cc.adam.lr = config.real("critic_lr");
    cc.clip = config.real("clip");
    cc.pad_to = max_len;
    result.critic_loss = adversarial::train_critic(*ck.critic, ck.critic_opt, real, fake, steps, cc);
  }
  ck.meta["stage"] = "pretrain";
  ck.meta["classes"] = join(p.clean.class_names, ',');
  ck.meta["length_stats"] = adversarial::encode_length_stats(p.lengths);
  result.checkpoint_path = artifact(config, pretrain_name(p.hash));
  neural::save_checkpoint(result.checkpoint_path, ck);

  std::string trace = "epoch\tnll\n";
  for (std::size_t e = 0; e < result.nll.size(); ++e) {
    trace += std::to_string(e + 1) + '\t' + format_double(result.nll[e]) + '\n';
  }
  write_file(artifact(config, "nll_trace.tsv"), trace);
  return result;
}

TrainResult train(const Config& config, const adversarial::EpochCallback& on_epoch) {
  const Prepared p = prepare(config);
  write_resolved(config, p.hash);
  const auto classifier = load_classifier(config, p.hash);
  auto ck = load_chain_checkpoint(artifact(config, pretrain_name(p.hash)), p.hash, "pretrain");
  if (!ck.critic) throw Error(Errc::MissingArtifact, "pretrain checkpoint has no critic");
  if (data::Vocabulary::from_tokens(ck.vocabulary) != p.vocab) {
    throw Error(Errc::ConfigHashMismatch, "pretrain checkpoint vocabulary differs from the dataset vocabulary");
  }

  adversarial::TrainingState state{std::move(ck.generator), std::move(ck.generator_opt), std::move(*ck.critic),
                                   std::move(ck.critic_opt)};
  // The policy optimizer starts fresh; likelihood moments do not carry over.
  state.generator_opt = {};

  adversarial::TrainingData td;
  td.vocab = &p.vocab;
  td.class_names = p.clean.class_names;
  td.records = &p.records;
  td.pool = sampling_pool(config, p);
  td.training_canonical = &p.canonical;
  td.classifier = &classifier;
  const auto lambdas = config.reals("lambdas");
  if (lambdas.size() > 1) {
    td.auxiliaries = {{&classifier, auxdisc::parse_reward_mode(config.text("aux_mode")), config.real("tau")}};
  }

  adversarial::AdversarialConfig ac;
  ac.reward.lambdas = lambdas;
  ac.reward.rollouts = static_cast<int>(config.integer("rollouts"));
  ac.reward.rollout_offset = static_cast<int>(config.integer("rollout_offset"));
  ac.reward.length_stats = p.lengths;
  ac.reward.length_floor = config.real("length_floor");
  ac.reward.standardize = config.boolean("standardize");
  ac.reward.repetition_penalty = config.boolean("repetition_penalty");
  ac.reward.length_weighting = config.boolean("length_weighting");
  ac.epochs = static_cast<int>(config.integer("epochs"));
  ac.g_steps = static_cast<int>(config.integer("g_steps"));
  ac.d_steps = static_cast<int>(config.integer("d_steps"));
  ac.batch = static_cast<int>(config.integer("batch"));
  ac.generator_batches = static_cast<int>(config.integer("generator_batches"));
  ac.critic_batches = static_cast<int>(config.integer("critic_batches"));
  ac.max_len = static_cast<int>(config.integer("max_len"));
  ac.policy.adam.lr = config.real("adversarial_lr");
  ac.policy.clip_norm = config.real("grad_clip");
  ac.critic.adam.lr = config.real("critic_lr");
  ac.critic.clip = config.real("clip");
  ac.critic.pad_to = ac.max_len;
  ac.eval_samples = static_cast<int>(config.integer("eval_samples"));
  ac.target_class = target_class(config, p);
  ac.seed = stream(config, kAdversarial);
  ac.workers = static_cast<int>(config.integer("workers"));
  ac.output_dir = config.text("output_dir");
  ac.config_hash = p.hash;
  ac.checkpoint_meta = {{"classes", join(p.clean.class_names, ',')}};

  TrainResult result;
  result.trace = adversarial::train_adversarial(state, td, ac, on_epoch);

  neural::Checkpoint final;
  final.config_hash = p.hash;
  final.meta = ac.checkpoint_meta;
  final.meta["stage"] = "final";
  final.meta["epoch"] = std::to_string(ac.epochs);
  final.meta["length_stats"] = adversarial::encode_length_stats(p.lengths);
  final.vocabulary = p.vocab.tokens();
  final.generator = std::move(state.generator);
  final.generator_opt = std::move(state.generator_opt);
  final.critic = std::move(state.critic);
  final.critic_opt = std::move(state.critic_opt);
  result.final_checkpoint = artifact(config, final_name(p.hash));
  neural::save_checkpoint(result.final_checkpoint, final);
  return result;
}

GenerateResult generate(const Config& config, const std::string& class_name, std::size_t count,
                        const std::string& checkpoint_path, const std::string& out_path) {
  config.validate();
  const std::string& data_path = config.text("data");
  if (!fs::exists(data_path)) throw Error(Errc::FileNotFound, "dataset " + data_path);
  const std::string hash = config.hash(read_file(data_path));
  const std::string path = checkpoint_path.empty() ? artifact(config, final_name(hash)) : checkpoint_path;
  const auto ck = load_chain_checkpoint(path, hash, "train");
  const std::string class_list = ck.meta.count("classes") ? ck.meta.at("classes") : std::string();
  const auto classes = split(class_list, ',');
  const auto it = std::find(classes.begin(), classes.end(), class_name);
  if (class_name.empty() || it == classes.end()) {
    throw Error(Errc::UnknownClass, "class '" + class_name + "' is not in the checkpoint");
  }
  const int label = static_cast<int>(it - classes.begin());
  const auto vocab = data::Vocabulary::from_tokens(ck.vocabulary);
  const int max_len = static_cast<int>(config.integer("max_len"));
  const std::uint64_t seed = stream(config, kGenerate);

  std::vector<std::string> lines(count);
  std::vector<char> valid(count, 0);
  parallel_for(count, static_cast<int>(config.integer("workers")), [&](std::size_t i) {
    Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(label), i});
    const std::string smiles = vocab.decode(neural::sample_sequence(ck.generator, label, max_len, rng));
    try {
      chem::parse_smiles(smiles);
      valid[i] = 1;
    } catch (const chem::SmilesError&) {
    }
    lines[i] = smiles + '\n';
  });

  GenerateResult result;
  result.path = out_path.empty() ? artifact(config, "samples_" + class_name + ".txt") : out_path;
  result.count = count;
  result.valid = static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 1));
  const fs::path parent = fs::path(result.path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::string text;
  for (const auto& l : lines) text += l;
  write_file(result.path, text);
  return result;
}

EvaluateResult evaluate(const Config& config, const std::string& samples_path, const std::string& class_name) {
  const Prepared p = prepare(config);
  const int label = p.class_index(class_name);
  const auto classifier = load_classifier(config, p.hash);
  if (!fs::exists(samples_path)) throw Error(Errc::MissingArtifact, "sample file " + samples_path);
  std::vector<metrics::Sample> samples;
  const std::string text = read_file(samples_path);
  auto lines = split(text, '\n');
  // One sample per line; an empty line is an empty sample and only the final newline is ignored.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string smiles(line);
    int length = 0;
    try {
      length = static_cast<int>(chem::token_texts(smiles).size());
    } catch (const chem::SmilesError&) {
      length = static_cast<int>(smiles.size());
    }
    samples.push_back({smiles, length});
  }
  metrics::EvaluateOptions options;
  options.seed = stream(config, kEvaluate);
  EvaluateResult result;
  result.report = metrics::evaluate(samples, label, p.canonical, classifier, options);
  result.key_value = metrics::to_key_value(result.report, p.clean.class_names);
  fs::create_directories(config.text("output_dir"));
  result.report_path = artifact(config, "report_" + class_name + ".txt");
  write_file(result.report_path, result.key_value);
  std::ofstream out(artifact(config, "evaluation.jsonl"), std::ios::app | std::ios::binary);
  out << metrics::to_json(result.report, p.clean.class_names) << '\n';
  if (!out) throw Error(Errc::IoError, "cannot append to evaluation.jsonl");
  return result;
}

void make_corpus(const std::string& path, const data::SyntheticCorpusOptions& options) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  write_file(path, data::synthetic_corpus(options));
}

int exit_code(const std::exception& error) {
  const auto* e = dynamic_cast<const Error*>(&error);
  if (e == nullptr) return 1;
  switch (e->code()) {
    case Errc::InvalidConfig:
      return 2;
    case Errc::FileNotFound:
    case Errc::MalformedRow:
    case Errc::EmptyDataset:
    case Errc::IoError:
      return 3;
    case Errc::DegenerateLabels:
    case Errc::InsufficientData:
    case Errc::EmptyBatch:
    case Errc::EmptySampleSet:
      return 4;
    case Errc::MissingArtifact:
      return 5;
    case Errc::ConfigHashMismatch:
    case Errc::SchemaMismatch:
      return 6;
    case Errc::UnknownClass:
      return 7;
    case Errc::NonFiniteLoss:
      return 8;
    default:
      return 1;
  }
}

}  // namespace adseqgan::pipeline
