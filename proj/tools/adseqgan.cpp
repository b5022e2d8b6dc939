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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/text.hpp"
#include "adseqgan/metrics/metrics.hpp"
#include "adseqgan/pipeline/config.hpp"
#include "adseqgan/pipeline/pipeline.hpp"

namespace {

using adseqgan::pipeline::Config;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string seed, output_dir, workers, data, oversample_class, oversample_factor;

  Config resolve() const {
    Config c = config_path.empty() ? Config() : Config::load(config_path);
    for (const auto& o : overrides) c.set_assignment(o);
    if (!seed.empty()) c.set("seed", seed);
    if (!output_dir.empty()) c.set("output_dir", output_dir);
    if (!workers.empty()) c.set("workers", workers);
    if (!data.empty()) c.set("data", data);
    if (!oversample_class.empty()) c.set("oversample_class", oversample_class);
    if (!oversample_factor.empty()) c.set("oversample_factor", oversample_factor);
    c.validate();
    return c;
  }
};

void print_epoch(const adseqgan::adversarial::EpochMetrics& m) {
  std::printf("epoch %d critic_loss %s mean_q %s responsiveness %s", m.epoch,
              adseqgan::format_double(m.critic_loss).c_str(), adseqgan::format_double(m.mean_q).c_str(),
              adseqgan::metrics::format_metric(m.target_responsiveness).c_str());
  for (std::size_t c = 0; c < m.reports.size(); ++c) {
    std::printf(" validity%zu %s yield%zu %s", c, adseqgan::format_double(m.reports[c].validity).c_str(), c,
                adseqgan::format_double(m.reports[c].yield).c_str());
  }
  std::printf("\n");
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adseqgan: class-conditional SMILES generation with adversarial policy-gradient training"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("-c,--config", opt.config_path, "key = value configuration file");
  app.add_option("--set", opt.overrides, "override a configuration key, key=value (repeatable)");
  app.add_option("--seed", opt.seed, "master seed");
  app.add_option("-o,--output-dir", opt.output_dir, "artifact directory");
  app.add_option("-j,--workers", opt.workers, "worker threads; 1 is the serial reference mode");
  app.add_option("--data", opt.data, "labelled SMILES file");
  app.add_option("--oversample-class", opt.oversample_class, "class to oversample");
  app.add_option("--oversample-factor", opt.oversample_factor, "pool copies of each oversampled record");

  auto* corpus = app.add_subcommand("make-corpus", "write the seeded synthetic two-class corpus");
  std::string corpus_out = "data/synthetic_two_class.csv";
  std::vector<int> per_class = {300, 300};
  std::uint64_t corpus_seed = 1;
  corpus->add_option("--out", corpus_out, "output CSV path")->capture_default_str();
  corpus->add_option("--per-class", per_class, "records per class, O_rich then NS_rich")->delimiter(',')->expected(2);
  corpus->add_option("--corpus-seed", corpus_seed, "corpus seed")->capture_default_str();

  auto* show = app.add_subcommand("show-config", "print the resolved configuration and its hash");
  auto* classifier = app.add_subcommand("train-classifier", "train the random-forest auxiliary discriminator");
  auto* pretrain = app.add_subcommand("pretrain", "likelihood pretraining and critic warm-up");
  auto* train = app.add_subcommand("train", "adversarial policy-gradient training");

  auto* generate = app.add_subcommand("generate", "sample SMILES for a class prompt");
  std::string gen_class, gen_checkpoint, gen_out;
  std::size_t gen_count = adseqgan::pipeline::kDefaultSampleCount;
  generate->add_option("--class", gen_class, "class name used as the prompt")->required();
  generate->add_option("-n,--samples", gen_count, "number of samples")->capture_default_str();
  generate->add_option("--checkpoint", gen_checkpoint, "checkpoint file; default is the final checkpoint");
  generate->add_option("--out", gen_out, "sample file; default samples_<class>.txt in the output directory");

  auto* evaluate = app.add_subcommand("evaluate", "score a sample file");
  std::string eval_class, eval_file;
  evaluate->add_option("--class", eval_class, "class the samples were requested for")->required();
  evaluate->add_option("--samples-file", eval_file, "file written by generate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (corpus->parsed()) {
      adseqgan::data::SyntheticCorpusOptions o;
      o.per_class = per_class;
      o.seed = corpus_seed;
      adseqgan::pipeline::make_corpus(corpus_out, o);
      std::printf("corpus\t%s\n", corpus_out.c_str());
      return 0;
    }
    const Config config = opt.resolve();
    if (show->parsed()) {
      std::printf("%s", config.resolved().c_str());
      const auto p = adseqgan::pipeline::prepare(config);
      std::printf("# hash = %s\n", p.hash.c_str());
    } else if (classifier->parsed()) {
      const auto r = adseqgan::pipeline::train_classifier(config);
      std::printf("cv_auc\t%s\nmodel\t%s\n", adseqgan::format_double(r.cv_auc).c_str(), r.model_path.c_str());
    } else if (pretrain->parsed()) {
      const auto r = adseqgan::pipeline::pretrain(config);
      std::printf("final_nll\t%s\ncheckpoint\t%s\n", adseqgan::format_double(r.nll.back()).c_str(),
                  r.checkpoint_path.c_str());
    } else if (train->parsed()) {
      const auto r = adseqgan::pipeline::train(config, print_epoch);
      std::printf("checkpoint\t%s\n", r.final_checkpoint.c_str());
    } else if (generate->parsed()) {
      const auto r = adseqgan::pipeline::generate(config, gen_class, gen_count, gen_checkpoint, gen_out);
      std::printf("samples\t%s\ncount\t%zu\nvalid\t%zu\n", r.path.c_str(), r.count, r.valid);
    } else if (evaluate->parsed()) {
      const auto r = adseqgan::pipeline::evaluate(config, eval_file, eval_class);
      std::printf("%s", r.key_value.c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "adseqgan: " << e.what() << '\n';
    return adseqgan::pipeline::exit_code(e);
  }
}
