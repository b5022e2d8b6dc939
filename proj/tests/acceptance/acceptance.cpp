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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   adseqgan_acceptance            run every criterion
//   adseqgan_acceptance AC3 AC9    run the named criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adseqgan/adversarial/reward.hpp"
#include "adseqgan/adversarial/training.hpp"
#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/fingerprint.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"
#include "adseqgan/data/data.hpp"
#include "adseqgan/descriptors/descriptors.hpp"
#include "adseqgan/neural/critic.hpp"
#include "adseqgan/neural/generator.hpp"
#include "adseqgan/neural/tensor.hpp"
#include "adseqgan/pipeline/config.hpp"
#include "adseqgan/pipeline/pipeline.hpp"
#include "oracles.hpp"
#include "toys.hpp"

namespace {

using namespace adseqgan;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::current_path() / "acceptance_runs" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool parses(const std::string& smiles) {
  try {
    chem::parse_smiles(smiles);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// AC1: analytic gradients of every parameter tensor against central differences.
Outcome ac1() {
  Outcome out;
  Stopwatch clock;
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    neural::GeneratorShape shape;
    shape.vocab = 8 + static_cast<int>(rng.below(6));
    shape.d_emb = 2 + static_cast<int>(rng.below(4));
    shape.d_hid = 3 + static_cast<int>(rng.below(6));
    shape.eos_token = 0;
    shape.start_tokens = {shape.vocab - 2, shape.vocab - 1};
    shape.emittable.assign(static_cast<std::size_t>(shape.vocab), 1);
    shape.emittable[static_cast<std::size_t>(shape.vocab - 2)] = 0;
    shape.emittable[static_cast<std::size_t>(shape.vocab - 1)] = 0;
    auto g = neural::init_generator(shape, seed);
    for (neural::Tensor* t : g.tensors()) t->fill_uniform(rng, 0.8);
    std::vector<int> seq(2 + rng.below(5));
    std::vector<double> w(seq.size());
    for (std::size_t t = 0; t < seq.size(); ++t) {
      seq[t] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.vocab - 3)));
      w[t] = rng.normal();
    }
    const int label = static_cast<int>(seed % 2);
    auto grads = g.zeros_like();
    neural::log_prob_backward(g, label, seq, w, grads);
    const auto gr = neural::check_gradients(g.tensors(), std::as_const(grads).tensors(), [&] {
      auto scratch_grads = g.zeros_like();
      return -neural::log_prob_backward(g, label, seq, w, scratch_grads);
    });
    worst = std::max(worst, gr.max_rel_error);
    checked += gr.checked;
    out.require(gr.max_rel_error < 1e-4, "generator seed " + std::to_string(seed) + " " + gr.worst_tensor);

    neural::CriticShape cs;
    cs.vocab = shape.vocab;
    cs.d_emb = 2 + static_cast<int>(rng.below(4));
    cs.windows = {1, 2, 3};
    cs.filters = 2 + static_cast<int>(rng.below(3));
    auto c = neural::init_critic(cs, seed, 0.6);
    std::vector<int> cseq(3 + rng.below(5));
    for (int& t : cseq) t = static_cast<int>(rng.below(static_cast<std::uint64_t>(cs.vocab)));
    const int pad = static_cast<int>(cseq.size()) + 2;
    auto cg = c.zeros_like();
    neural::critic_backward(c, cseq, pad, 1.0, cg);
    const auto cr = neural::check_gradients(c.tensors(), std::as_const(cg).tensors(),
                                            [&] { return neural::critic_score(c, cseq, pad); });
    worst = std::max(worst, cr.max_rel_error);
    checked += cr.checked;
    out.require(cr.max_rel_error < 1e-4, "critic seed " + std::to_string(seed) + " " + cr.worst_tensor);
  }
  const double elapsed = clock.seconds();
  out.require(elapsed < 60.0, "runtime under 60 s");
  out.note("max_rel_error=" + fmt(worst) + " params_checked=" + std::to_string(checked) +
           " runtime_s=" + fmt(elapsed, 3));
  return out;
}

double toy_pg_reward(const std::vector<int>& y) { return y == std::vector<int>{1, 2} ? 1.0 : 0.0; }

// AC2: Monte Carlo policy gradient against the enumerated gradient.
Outcome ac2() {
  Outcome out;
  Stopwatch clock;
  const auto g = testing::toy_generator(2, 2, 2, 17, 1.0);
  const auto exact = testing::enumerate_objective(g, 2, toy_pg_reward);
  const std::size_t P = exact.gradient.size();
  std::vector<double> sum(P, 0.0), sum_sq(P, 0.0);
  const int N = 20000;
  Rng rng(23);
  for (int i = 0; i < N; ++i) {
    const auto y = neural::sample_sequence(g, 0, 2, rng);
    const auto q = adversarial::estimate_q(g, 0, y, 4, 2, 1, toy_pg_reward, rng);
    auto grads = g.zeros_like();
    adversarial::policy_gradient(g, {y}, {0}, {q}, grads);
    const auto flat = testing::flatten(grads);
    for (std::size_t p = 0; p < P; ++p) {
      const double v = -2.0 * flat[p];  // undo the 1/T average and the sign of the loss
      sum[p] += v;
      sum_sq[p] += v * v;
    }
  }
  double worst_z = 0.0;
  int informative = 0;
  for (std::size_t p = 0; p < P; ++p) {
    const double mean = sum[p] / N;
    const double var = std::max(0.0, sum_sq[p] / N - mean * mean) * N / (N - 1);
    const double se = std::sqrt(var / N);
    if (se == 0.0) {
      out.require(std::abs(mean - exact.gradient[p]) <= 1e-12, "deterministic parameter " + std::to_string(p));
      continue;
    }
    ++informative;
    const double z = std::abs(mean - exact.gradient[p]) / se;
    worst_z = std::max(worst_z, z);
    out.require(z <= 3.0, "parameter " + std::to_string(p) + " z=" + fmt(z));
  }
  const double elapsed = clock.seconds();
  out.require(informative > 0, "some parameter has sampling variance");
  out.require(elapsed < 120.0, "runtime under 2 min");
  out.note("samples=20000 params=" + std::to_string(P) + " max_z=" + fmt(worst_z) + " runtime_s=" + fmt(elapsed, 3));
  return out;
}

double toy_q_reward(const std::vector<int>& y) {
  return (static_cast<double>(std::count(y.begin(), y.end(), 1)) + 2.0 * (y.back() == 3)) / 5.0;
}

// AC3: Q(1) convergence at M = 10000 and 1/M variance scaling.
Outcome ac3() {
  Outcome out;
  const auto g = testing::toy_generator(3, 3, 4, 21, 1.0);
  const std::vector<int> prefix{2};
  const auto exact = testing::enumerate_completion_moments(g, prefix, 3, toy_q_reward);
  Rng rng(9);
  const int M = 10000;
  const auto q = adversarial::estimate_q(g, 0, {2, 1, 3}, M, 3, 1, toy_q_reward, rng);
  const double se = std::sqrt(exact.variance / M);
  const double z = std::abs(q[0] - exact.mean) / se;
  out.require(se > 0.0 && z <= 3.0, "Q(1) within 3 SE");

  auto variance = [&](int m, std::uint64_t seed) {
    Rng r(seed);
    std::vector<double> est;
    for (int k = 0; k < 400; ++k) {
      double s = 0.0;
      for (const auto& c : adversarial::mc_rollout(g, 0, prefix, m, 3, r)) s += toy_q_reward(c);
      est.push_back(s / m);
    }
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / static_cast<double>(est.size());
    double v = 0.0;
    for (double e : est) v += (e - mean) * (e - mean);
    return v / static_cast<double>(est.size() - 1);
  };
  const double ratio = variance(25, 1) / variance(100, 2);
  out.require(ratio >= 2.0 && ratio <= 6.0, "variance ratio in 4 +- 50%");
  out.note("Q1=" + fmt(q[0], 6) + " exact=" + fmt(exact.mean, 6) + " z=" + fmt(z) + " var_ratio(M=25/100)=" +
           fmt(ratio));
  return out;
}

// AC4: min-max exactness, duplicate division, length weight at the class mean.
Outcome ac4() {
  Outcome out;
  Rng rng(1);
  int batches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(2 + rng.below(60));
    for (double& x : v) x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(16)) - 8.0);
    if (*std::min_element(v.begin(), v.end()) == *std::max_element(v.begin(), v.end())) continue;
    ++batches;
    const auto s = adversarial::minmax_standardize(v);
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    if (*lo != 0.0 || *hi != 1.0) {
      out.require(false, "batch " + std::to_string(trial) + " extremes");
      break;
    }
  }
  adversarial::RewardConfig config;
  const data::LengthStats stats{23.5, 6.0};
  config.length_stats = {stats};
  int dup_cases = 0;
  for (int k = 1; k <= 6; ++k) {
    std::vector<adversarial::SequenceAudit> audit(static_cast<std::size_t>(k) + 1);
    std::vector<std::vector<double>> q;
    for (std::size_t i = 0; i < audit.size(); ++i) {
      audit[i].key = i < static_cast<std::size_t>(k) ? "dup" : "single";
      audit[i].length = 10 + static_cast<int>(i);
      q.push_back({rng.uniform(), rng.uniform()});
    }
    config.length_weighting = false;
    const auto shaped = adversarial::shape_rewards(q, audit, config);
    for (std::size_t i = 0; i < audit.size(); ++i) {
      const double expect_div = i < static_cast<std::size_t>(k) ? k : 1;
      for (std::size_t t = 0; t < 2; ++t) {
        out.require(shaped.q[i][t] == q[i][t] / expect_div, "duplicate-of-" + std::to_string(k));
        ++dup_cases;
      }
    }
  }
  const int mu = static_cast<int>(std::lround(stats.mean));
  const data::LengthStats integral{static_cast<double>(mu), 6.0};
  out.require(adversarial::length_weight(mu, integral, config.length_floor) == 1.0, "w(mu) == 1");
  out.require(adversarial::length_weight(mu + 6, integral, config.length_floor) < 1.0, "w decays off the mean");
  out.note("standardized_batches=" + std::to_string(batches) + " duplicate_checks=" + std::to_string(dup_cases) +
           " w(mu)=" + fmt(adversarial::length_weight(mu, integral, config.length_floor)));
  return out;
}

// Small corpus, vocabulary, forest, generator and critic used by AC5.
struct RewardFixture {
  data::PreprocessedDataset clean;
  data::Vocabulary vocab;
  auxdisc::RandomForestModel forest;
  neural::GeneratorParams generator;
  neural::CriticParams critic;
  std::vector<data::LengthStats> lengths;

  RewardFixture() {
    data::SyntheticCorpusOptions options;
    options.per_class = {40, 40};
    options.seed = 5;
    clean = data::preprocess_all(data::parse_dataset(data::synthetic_corpus(options)));
    vocab = data::Vocabulary::build(clean.records, 2);
    lengths = data::length_stats(clean.records, 2);
    auxdisc::LabeledDataset labeled;
    labeled.class_names = clean.class_names;
    for (const auto& r : clean.records) {
      labeled.rows.push_back(descriptors::compute_descriptors(chem::parse_smiles(r.smiles)));
      labeled.labels.push_back(r.label);
    }
    forest = auxdisc::train_random_forest(labeled, auxdisc::select_features(labeled, 4, 3, 1), 10, 2);
    neural::GeneratorShape g;
    g.vocab = vocab.size();
    g.d_emb = 8;
    g.d_hid = 16;
    g.eos_token = vocab.eos();
    g.start_tokens = vocab.start_tokens();
    g.emittable = vocab.emittable_mask();
    generator = neural::init_generator(g, 3);
    critic = neural::init_critic({.vocab = vocab.size(), .d_emb = 4, .windows = {1, 2, 3}, .filters = 3}, 4, 0.05);
  }
};

// AC5: lambda endpoints through the full reward path, and sum validation.
Outcome ac5() {
  Outcome out;
  const RewardFixture f;
  adversarial::RewardSources sources;
  sources.critic = &f.critic;
  sources.pad_to = 40;
  sources.auxiliaries = {{&f.forest, auxdisc::RewardMode::Product, auxdisc::kDefaultThreshold}};
  sources.vocab = &f.vocab;
  adversarial::RewardConfig config;
  config.rollouts = 3;
  config.length_stats = f.lengths;

  std::vector<std::vector<int>> seqs;
  std::vector<int> labels;
  Rng rng(7);
  for (int i = 0; i < 12; ++i) {
    labels.push_back(i % 2);
    seqs.push_back(neural::sample_sequence(f.generator, labels.back(), 40, rng));
  }
  config.lambdas = {1.0, 0.0};
  const auto adv = adversarial::compute_rewards(f.generator, seqs, labels, sources, config, 40, 11);
  config.lambdas = {0.0, 1.0};
  const auto aux = adversarial::compute_rewards(f.generator, seqs, labels, sources, config, 40, 11);
  std::size_t exact_adv = 0, exact_aux = 0, steps = 0;
  for (std::size_t b = 0; b < seqs.size(); ++b) {
    const std::size_t T = seqs[b].size();
    const double raw = neural::critic_score(f.critic, seqs[b], sources.pad_to);
    const double expect_adv = raw == adv.critic_min   ? 0.0
                              : raw == adv.critic_max ? 1.0
                                                      : (raw - adv.critic_min) / (adv.critic_max - adv.critic_min);
    const double expect_aux =
        auxdisc::auxiliary_reward(f.forest, f.vocab.decode(seqs[b]), labels[b], auxdisc::RewardMode::Product);
    exact_adv += adv.q_unshaped[b][T - 1] == expect_adv;
    exact_aux += aux.q_unshaped[b][T - 1] == expect_aux;
    for (std::size_t t = 0; t < T; ++t) {
      ++steps;
      const auto& a = adv.audit[b];
      out.require(adv.q[b][t] == adv.q_unshaped[b][t] / a.duplicates * a.length_weight, "adv audit");
      out.require(aux.q_unshaped[b][t] >= 0.0 && aux.q_unshaped[b][t] <= 1.0, "aux range");
    }
  }
  out.require(exact_adv == seqs.size(), "lambda0=1 equals standardized critic");
  out.require(exact_aux == seqs.size(), "lambda0=0 equals auxiliary reward");
  const std::vector<double> one{0.37};
  out.require(adversarial::blend(std::vector<double>{1.0, 0.0}, 0.123456789, one) == 0.123456789, "blend(1,0)");
  out.require(adversarial::blend(std::vector<double>{0.0, 1.0}, 0.123456789, one) == 0.37, "blend(0,1)");

  auto rejects = [](std::vector<double> lambdas) {
    adversarial::RewardConfig c;
    c.lambdas = std::move(lambdas);
    try {
      c.validate();
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  out.require(rejects({0.2, 0.8 + 2e-9}), "reject sum off by 2e-9");
  out.require(rejects({0.2, 0.8 - 2e-9}), "reject sum off by -2e-9");
  out.require(!rejects({0.2, 0.8 + 5e-10}), "accept sum off by 5e-10");
  out.note("sequences=" + std::to_string(seqs.size()) + " steps=" + std::to_string(steps) +
           " exact_adv=" + std::to_string(exact_adv) + " exact_aux=" + std::to_string(exact_aux));
  return out;
}

double sample_validity(const neural::GeneratorParams& g, const data::Vocabulary& vocab, int n, std::uint64_t seed) {
  Rng rng(seed);
  int valid = 0;
  for (int i = 0; i < n; ++i) valid += parses(vocab.decode(neural::sample_sequence(g, i % 2, 81, rng)));
  return static_cast<double>(valid) / n;
}

// AC6: MLE pretraining lifts validity on a 100-string grammar.
Outcome ac6() {
  Outcome out;
  Stopwatch clock;
  data::SyntheticCorpusOptions options;
  options.per_class = {50, 50};
  options.seed = 5;
  const auto raw = data::parse_dataset(data::synthetic_corpus(options));
  const auto clean = data::preprocess_all(raw);
  const auto vocab = data::Vocabulary::build(clean.records, 2);
  const auto records = data::encode_records(clean.records, vocab);
  neural::GeneratorShape shape;
  shape.vocab = vocab.size();
  shape.d_emb = 16;
  shape.d_hid = 64;
  shape.eos_token = vocab.eos();
  shape.start_tokens = vocab.start_tokens();
  shape.emittable = vocab.emittable_mask();
  auto g = neural::init_generator(shape, 3);
  const double before = sample_validity(g, vocab, 1000, 1);
  neural::AdamState opt;
  adversarial::MleConfig mle;
  mle.epochs = 400;
  mle.batch = 8;
  mle.adam.lr = 5e-3;
  const auto trace = adversarial::pretrain_generator_mle(g, opt, records, {}, mle);
  const double after = sample_validity(g, vocab, 1000, 2);
  const double elapsed = clock.seconds();
  out.require(before <= 0.05, "validity at init <= 5%");
  out.require(after >= 0.80, "validity after pretraining >= 80%");
  out.require(elapsed < 300.0, "runtime under 5 min");
  out.note("corpus_rows=" + std::to_string(raw.rows.size()) + " kept=" + std::to_string(clean.records.size()) +
           " validity_init=" + fmt(before) + " validity_mle=" + fmt(after) + " nll=" + fmt(trace.front()) + "->" +
           fmt(trace.back()) + " runtime_s=" + fmt(elapsed, 3));
  return out;
}

// Desk-scale pipeline settings shared by AC7, AC8 and AC11.
pipeline::Config desk_config(const fs::path& output, std::uint64_t seed) {
  pipeline::Config c;
  for (const char* kv : {"trees=30", "d_emb=16", "d_hid=64", "critic_d_emb=8", "critic_windows=1,2,3,4",
                         "critic_filters=8", "mle_batch=16", "mle_lr=0.005", "batch=32", "generator_batches=6",
                         "critic_batches=6", "rollouts=8", "eval_samples=300", "adversarial_lr=0.0005"}) {
    c.set_assignment(kv);
  }
  c.set("seed", std::to_string(seed));
  c.set("output_dir", output.string());
  return c;
}

std::vector<adversarial::EpochMetrics> run_pipeline(const pipeline::Config& config) {
  pipeline::train_classifier(config);
  pipeline::pretrain(config);
  return pipeline::train(config).trace;
}

// AC7: label responsiveness after 30 adversarial epochs on the bundled corpus.
Outcome ac7() {
  Outcome out;
  Stopwatch clock;
  std::vector<double> finals, trends;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto config = desk_config(scratch("ac7_seed" + std::to_string(seed)), seed);
    config.set("data", ADSEQGAN_SOURCE_DIR "/data/synthetic_two_class.csv");
    config.set("mle_epochs", "8");
    config.set("epochs", "30");
    const auto trace = run_pipeline(config);
    std::vector<double> r;
    for (const auto& m : trace) r.push_back(m.target_responsiveness);
    const auto window = [&](std::size_t begin) {
      return std::accumulate(r.begin() + static_cast<std::ptrdiff_t>(begin),
                             r.begin() + static_cast<std::ptrdiff_t>(begin + 5), 0.0) / 5.0;
    };
    const double first = window(0), last = window(r.size() - 5);
    finals.push_back(last);
    trends.push_back(last - first);
    per_seed += " seed" + std::to_string(seed) + "=" + fmt(first, 3) + "->" + fmt(last, 3);
  }
  const double elapsed = clock.seconds();
  const double final_median = median(finals), trend_median = median(trends);
  out.require(final_median > 0.3, "median responsiveness > 0.3");
  out.require(trend_median > 0.0, "median moving-average trend increasing");
  out.require(elapsed < 900.0, "runtime under 15 min");
  out.note("ma5" + per_seed + " median_final=" + fmt(final_median) + " median_trend=" + fmt(trend_median) +
           " runtime_s=" + fmt(elapsed, 4));
  return out;
}

// AC8: sampler closed form, then factor-3 against factor-1 minority yield.
Outcome ac8() {
  Outcome out;
  Stopwatch clock;
  std::vector<int> labels(2000, 0);
  for (int i = 0; i < 100; ++i) labels[static_cast<std::size_t>(i * 20)] = 1;
  const double p = 0.05;
  const double closed = 3 * p / (1 - p + 3 * p);
  data::OversampleSampler sampler(labels, 2, 1, 3, 2024);
  int minority = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) minority += labels[sampler.next()];
  const double freq = static_cast<double>(minority) / draws;
  out.require(std::abs(freq - closed) <= 0.01, "sampler frequency within 0.01 of closed form");

  const fs::path root = scratch("ac8");
  const std::string corpus = (root / "minority.csv").string();
  data::SyntheticCorpusOptions options;
  options.per_class = {20, 380};
  options.seed = 7;
  pipeline::make_corpus(corpus, options);

  std::vector<double> yields1, yields3;
  std::string minority_name;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (int factor : {1, 3}) {
      auto config = desk_config(root / ("f" + std::to_string(factor) + "_seed" + std::to_string(seed)), seed);
      config.set("data", corpus);
      const auto prepared = pipeline::prepare(config);
      std::vector<int> counts(prepared.clean.class_names.size(), 0);
      for (const auto& r : prepared.clean.records) ++counts[static_cast<std::size_t>(r.label)];
      const auto minor = static_cast<std::size_t>(std::min_element(counts.begin(), counts.end()) - counts.begin());
      minority_name = prepared.clean.class_names[minor];
      config.set("oversample_class", minority_name);
      config.set("oversample_factor", std::to_string(factor));
      config.set("mle_epochs", "40");
      config.set("epochs", "4");
      const auto trace = run_pipeline(config);
      (factor == 1 ? yields1 : yields3).push_back(trace.back().reports[minor].yield);
    }
  }
  const double m1 = median(yields1), m3 = median(yields3);
  out.require(m3 > m1, "median minority yield factor 3 > factor 1");
  out.note("closed_form=" + fmt(closed) + " observed=" + fmt(freq) + " minority=" + minority_name +
           " yield_f1=" + fmt(m1) + " yield_f3=" + fmt(m3) + " runtime_s=" + fmt(clock.seconds(), 4));
  return out;
}

auxdisc::LabeledDataset separable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auxdisc::LabeledDataset data;
  data.class_names = {"a", "b"};
  while (data.size() < n) {
    descriptors::DescriptorVector v;
    for (double& x : v.values) x = rng.normal();
    const double margin = v.values[0] + v.values[1];
    if (std::abs(margin) < 0.1) continue;
    data.rows.push_back(v);
    data.labels.push_back(margin > 0 ? 1 : 0);
  }
  return data;
}

// AC9: forest AUC on a separable set, single-class certainty, AUC fixtures.
Outcome ac9() {
  Outcome out;
  const auto train = separable(200, 1);
  const auto test = separable(200, 2);
  const auto model = auxdisc::train_random_forest(train, {0, 1}, auxdisc::kDefaultTrees, 42);
  std::vector<double> scores;
  for (const auto& r : test.rows) scores.push_back(auxdisc::predict_proba(model, r)[1]);
  const double held_out = auxdisc::auc(scores, test.labels);
  out.require(model.n_trees() == 100, "100 trees");
  out.require(held_out >= 0.95, "held-out AUC >= 0.95");

  auto single = separable(40, 5);
  std::fill(single.labels.begin(), single.labels.end(), 1);
  const auto degenerate = auxdisc::train_random_forest(single, {0, 1}, 10, 1);
  const auto prob = auxdisc::predict_proba(degenerate, separable(1, 6).rows[0]);
  out.require(prob[1] == 1.0, "single class predicts 1.0");

  const double a1 = auxdisc::auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<int>{1, 1, 0, 0});
  const double a05 = auxdisc::auc(std::vector<double>{0.3, 0.3, 0.3, 0.3}, std::vector<int>{1, 0, 1, 0});
  const double a075 = auxdisc::auc(std::vector<double>{0.9, 0.4, 0.6, 0.1}, std::vector<int>{1, 1, 0, 0});
  out.require(a1 == 1.0 && a05 == 0.5 && a075 == 0.75, "AUC fixtures exact");
  out.note("held_out_auc=" + fmt(held_out) + " single_class_p=" + fmt(prob[1]) + " fixtures=" + fmt(a1) + "/" +
           fmt(a05) + "/" + fmt(a075));
  return out;
}

// AC10: canonicalisation fuzzing, invalid-set rejection, Tanimoto properties.
Outcome ac10() {
  Outcome out;
  std::vector<std::string> corpus = testing::curated_molecules();
  data::SyntheticCorpusOptions options;
  options.per_class = {400, 400};
  options.seed = 31;
  const auto clean = data::preprocess_all(data::parse_dataset(data::synthetic_corpus(options)));
  std::set<std::string> seen(corpus.begin(), corpus.end());
  for (const auto& r : clean.records) {
    if (corpus.size() >= 500) break;
    if (seen.insert(r.smiles).second) corpus.push_back(r.smiles);
  }
  out.require(corpus.size() >= 500, "fuzz corpus of 500 molecules");

  Rng rng(2026);
  std::size_t renderings = 0, failures = 0;
  std::vector<chem::Fingerprint> fps;
  for (const auto& s : corpus) {
    const auto g = chem::parse_smiles(s);
    const std::string canon = chem::canonicalize(g);
    if (chem::canonical_smiles(canon) != canon) ++failures;
    for (int k = 0; k < 4; ++k) {
      std::vector<int> perm(static_cast<std::size_t>(g.atom_count()));
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm.begin(), perm.end());
      if (chem::canonicalize(g.permuted(perm)) != canon) ++failures;
      if (chem::canonical_smiles(testing::random_smiles(g, rng)) != canon) ++failures;
      renderings += 2;
    }
    fps.push_back(chem::fingerprint(g));
  }
  out.require(failures == 0, std::to_string(failures) + " canonical mismatches");

  std::size_t false_valid = 0;
  for (const auto& s : testing::curated_invalid()) false_valid += parses(s);
  out.require(testing::curated_invalid().size() >= 30, "at least 30 curated invalid cases");
  out.require(false_valid == 0, std::to_string(false_valid) + " invalid SMILES accepted");

  std::size_t pairs = 0, violations = 0;
  for (std::size_t i = 0; i < fps.size(); i += 3) {
    if (chem::tanimoto(fps[i], fps[i]) != 1.0) ++violations;
    for (std::size_t j = 0; j < fps.size(); j += 7) {
      const double t = chem::tanimoto(fps[i], fps[j]);
      if (!(t >= 0.0 && t <= 1.0) || t != chem::tanimoto(fps[j], fps[i])) ++violations;
      ++pairs;
    }
  }
  out.require(violations == 0, std::to_string(violations) + " Tanimoto property violations");
  out.note("molecules=" + std::to_string(corpus.size()) + " renderings=" + std::to_string(renderings) +
           " invalid_cases=" + std::to_string(testing::curated_invalid().size()) +
           " tanimoto_pairs=" + std::to_string(pairs));
  return out;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[fs::relative(entry.path(), root).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

// AC11: two identical full-pipeline runs produce byte-identical artifacts.
Outcome ac11() {
  Outcome out;
  const fs::path root = scratch("ac11");
  const std::string corpus = (root / "corpus.csv").string();
  data::SyntheticCorpusOptions options;
  options.per_class = {60, 60};
  options.seed = 3;
  pipeline::make_corpus(corpus, options);

  std::vector<std::map<std::string, std::string>> trees;
  for (const char* run : {"run_a", "run_b"}) {
    auto config = desk_config(root / run, 11);
    config.set("data", corpus);
    config.set("workers", "1");
    config.set("mle_epochs", "3");
    config.set("epochs", "3");
    config.set("eval_samples", "50");
    run_pipeline(config);
    const auto prepared = pipeline::prepare(config);
    for (const auto& name : prepared.clean.class_names) {
      const auto samples = pipeline::generate(config, name, 300);
      pipeline::evaluate(config, samples.path, name);
    }
    trees.push_back(read_tree(root / run));
  }
  // The resolved config records its own output directory; every other artifact must match.
  std::size_t compared = 0, checkpoints = 0, samples = 0, traces = 0;
  for (const auto& [name, bytes] : trees[0]) {
    if (name == "config.resolved.txt") continue;
    const auto other = trees[1].find(name);
    out.require(other != trees[1].end() && other->second == bytes, name + " identical");
    ++compared;
    checkpoints += name.find("checkpoint") != std::string::npos || name.starts_with("pretrain_") ||
                   name.starts_with("final_");
    samples += name.starts_with("samples_");
    traces += name.ends_with(".jsonl") || name.ends_with(".tsv");
  }
  out.require(trees[0].size() == trees[1].size(), "same artifact set");
  out.require(checkpoints > 0 && samples > 0 && traces > 0, "checkpoints, samples and traces present");
  out.note("files_compared=" + std::to_string(compared) + " checkpoints=" + std::to_string(checkpoints) +
           " sample_files=" + std::to_string(samples) + " traces=" + std::to_string(traces));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  for (const auto& name : wanted) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == name; })) {
      std::fprintf(stderr, "unknown criterion %s\n", name.c_str());
      return 2;
    }
  }
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!wanted.empty() && !wanted.count(name)) continue;
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    failed += !outcome.pass;
    std::printf("%s %s %s\n", name.c_str(), outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
