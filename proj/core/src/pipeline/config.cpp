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

#include "adseqgan/pipeline/config.hpp"

#include <cmath>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/text.hpp"

namespace adseqgan::pipeline {

namespace {

using K = KeyKind;

const std::vector<KeySpec> kKeys = {
    {"seed", "1", K::Integer, true, "master seed for every random stream"},
    {"data", "data/synthetic_two_class.csv", K::Text, false, "labelled SMILES file"},
    {"classes", "", K::TextList, true, "class names in label order; empty uses first appearance"},
    {"min_tokens", "10", K::Integer, true, "shortest accepted canonical SMILES in tokens"},
    {"max_tokens", "80", K::Integer, true, "longest accepted canonical SMILES in tokens"},
    {"max_len", "81", K::Integer, true, "sampled actions per sequence including the end token"},
    {"features", "8", K::Integer, true, "descriptors kept by feature selection"},
    {"trees", "100", K::Integer, true, "random forest size"},
    {"min_leaf", "2", K::Integer, true, "minimum samples per forest leaf"},
    {"cv_folds", "5", K::Integer, true, "cross-validation folds for selection and reporting"},
    {"d_emb", "32", K::Integer, true, "generator embedding width"},
    {"d_hid", "128", K::Integer, true, "generator hidden width"},
    {"critic_d_emb", "32", K::Integer, true, "critic embedding width"},
    {"critic_windows", "1,2,3,4,5,6,7,8", K::IntegerList, true, "critic convolution window sizes"},
    {"critic_filters", "16", K::Integer, true, "filters per critic window"},
    {"critic_init", "0.01", K::Real, true, "critic initial weight range"},
    {"mle_epochs", "250", K::Integer, true, "generator likelihood pretraining epochs"},
    {"mle_batch", "64", K::Integer, true, "pretraining minibatch size"},
    {"mle_lr", "0.001", K::Real, true, "pretraining Adam learning rate"},
    {"critic_pretrain_steps", "10", K::Integer, true, "critic steps before adversarial training"},
    {"critic_lr", "0.0001", K::Real, true, "critic Adam learning rate"},
    {"clip", "0.01", K::Real, true, "critic weight clipping bound"},
    {"epochs", "50", K::Integer, true, "adversarial epochs"},
    {"g_steps", "1", K::Integer, true, "generator passes per epoch"},
    {"d_steps", "1", K::Integer, true, "critic passes per epoch"},
    {"batch", "64", K::Integer, true, "adversarial minibatch size"},
    {"generator_batches", "0", K::Integer, true, "generator batches per pass; 0 covers the pool"},
    {"critic_batches", "0", K::Integer, true, "critic batches per pass; 0 covers the pool"},
    {"adversarial_lr", "0.0001", K::Real, true, "policy-gradient Adam learning rate"},
    {"grad_clip", "5", K::Real, true, "global gradient norm bound for the generator"},
    {"lambdas", "0.2,0.8", K::RealList, true, "adversarial weight then one weight per auxiliary"},
    {"rollouts", "16", K::Integer, true, "Monte Carlo rollouts per prefix"},
    {"rollout_offset", "1", K::Integer, true, "first timestep that receives a reward"},
    {"standardize", "true", K::Boolean, true, "min-max scale critic rewards per batch"},
    {"repetition_penalty", "true", K::Boolean, true, "divide rewards by in-batch copy count"},
    {"length_weighting", "true", K::Boolean, true, "multiply rewards by the length kernel"},
    {"length_floor", "0.02", K::Real, true, "lower bound of the length kernel"},
    {"aux_mode", "product", K::Text, true, "auxiliary reward: product or threshold"},
    {"tau", "0.4", K::Real, true, "threshold for the threshold reward mode"},
    {"oversample_class", "", K::Text, true, "class sampled more often; empty disables"},
    {"oversample_factor", "3", K::Integer, true, "pool copies of each oversampled record"},
    {"eval_samples", "200", K::Integer, true, "samples per class prompt for epoch metrics"},
    {"target_class", "", K::Text, true, "class whose responsiveness is tracked; empty uses the first"},
    {"output_dir", "runs/default", K::Text, false, "artifact directory"},
    {"workers", "1", K::Integer, false, "rollout and sampling threads; 1 is the serial reference"},
};

const KeySpec& spec(std::string_view key) {
  for (const auto& k : kKeys) {
    if (k.name == key) return k;
  }
  throw Error(Errc::InvalidConfig, "unknown configuration key '" + std::string(key) + "'");
}

bool parse_bool(std::string_view v, bool& out) {
  if (v == "true" || v == "1" || v == "yes") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0" || v == "no") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> list_items(std::string_view v) {
  std::vector<std::string> out;
  if (trim(v).empty()) return out;
  for (auto item : split(v, ',')) out.emplace_back(trim(item));
  return out;
}

void check_kind(const KeySpec& k, std::string_view v) {
  auto bad = [&](const std::string& why) {
    throw Error(Errc::InvalidConfig, std::string(k.name) + " = '" + std::string(v) + "': " + why);
  };
  try {
    switch (k.kind) {
      case K::Integer:
        parse_int(v);
        break;
      case K::Real:
        if (!std::isfinite(parse_double(v))) bad("value must be finite");
        break;
      case K::Boolean: {
        bool b = false;
        if (!parse_bool(v, b)) bad("expected true or false");
        break;
      }
      case K::Text:
        break;
      case K::IntegerList:
        for (const auto& item : list_items(v)) parse_int(item);
        break;
      case K::RealList:
        for (const auto& item : list_items(v)) {
          if (!std::isfinite(parse_double(item))) bad("values must be finite");
        }
        break;
      case K::TextList:
        for (const auto& item : list_items(v)) {
          if (item.empty()) bad("empty list item");
        }
        break;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidConfig) throw;
    bad(e.what());
  }
}

}  // namespace

const std::vector<KeySpec>& config_keys() { return kKeys; }

Config::Config() {
  for (const auto& k : kKeys) values_.emplace(std::string(k.name), std::string(k.default_value));
}

Config Config::parse(std::string_view text, const std::string& origin) {
  Config c;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidConfig, origin + " line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(Errc::InvalidConfig, origin + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error&) {
    throw Error(Errc::FileNotFound, "config file " + path);
  }
  return parse(text, path);
}

void Config::set(std::string_view key, std::string_view value) {
  const auto& k = spec(key);
  value = trim(value);
  check_kind(k, value);
  values_.find(key)->second = std::string(value);
}

void Config::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(Errc::InvalidConfig, "override '" + std::string(assignment) + "' is not key=value");
  }
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

const std::string& Config::text(std::string_view key) const {
  spec(key);
  return values_.find(key)->second;
}

long long Config::integer(std::string_view key) const { return parse_int(text(key)); }

double Config::real(std::string_view key) const { return parse_double(text(key)); }

bool Config::boolean(std::string_view key) const {
  bool b = false;
  parse_bool(text(key), b);
  return b;
}

std::vector<long long> Config::integers(std::string_view key) const {
  std::vector<long long> out;
  for (const auto& item : list_items(text(key))) out.push_back(parse_int(item));
  return out;
}

std::vector<double> Config::reals(std::string_view key) const {
  std::vector<double> out;
  for (const auto& item : list_items(text(key))) out.push_back(parse_double(item));
  return out;
}

std::vector<std::string> Config::texts(std::string_view key) const { return list_items(text(key)); }

void Config::validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw Error(Errc::InvalidConfig, message);
  };
  const auto lambdas = reals("lambdas");
  require(!lambdas.empty(), "lambdas must list at least the adversarial weight");
  double sum = 0.0;
  for (double l : lambdas) {
    require(l >= 0.0, "lambdas must be non-negative");
    sum += l;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "lambdas must sum to 1");
  require(lambdas.size() <= 2, "only one auxiliary discriminator is available");
  require(integer("min_tokens") >= 1 && integer("min_tokens") <= integer("max_tokens"),
          "token bounds must satisfy 1 <= min_tokens <= max_tokens");
  require(integer("max_len") >= 1, "max_len must be positive");
  for (const char* key : {"features", "trees", "min_leaf", "d_emb", "d_hid", "critic_d_emb", "critic_filters",
                          "mle_epochs", "mle_batch", "batch", "rollouts", "rollout_offset", "oversample_factor",
                          "workers"}) {
    require(integer(key) >= 1, std::string(key) + " must be at least 1");
  }
  for (const char* key : {"critic_pretrain_steps", "epochs", "g_steps", "d_steps", "generator_batches",
                          "critic_batches", "eval_samples"}) {
    require(integer(key) >= 0, std::string(key) + " must be non-negative");
  }
  require(integer("cv_folds") >= 2, "cv_folds must be at least 2");
  const auto windows = integers("critic_windows");
  require(!windows.empty(), "critic_windows must not be empty");
  for (long long w : windows) require(w >= 1, "critic windows must be positive");
  require(real("length_floor") > 0.0 && real("length_floor") <= 1.0, "length_floor must lie in (0, 1]");
  require(real("clip") > 0.0, "clip must be positive");
  for (const char* key : {"mle_lr", "critic_lr", "adversarial_lr", "grad_clip", "critic_init"}) {
    require(real(key) > 0.0, std::string(key) + " must be positive");
  }
  require(text("aux_mode") == "product" || text("aux_mode") == "threshold", "aux_mode must be product or threshold");
}

std::string Config::resolved() const {
  std::string out = "# adseqgan resolved configuration\n";
  for (const auto& k : kKeys) out += std::string(k.name) + " = " + values_.find(k.name)->second + '\n';
  return out;
}

std::string Config::hash(std::string_view dataset_bytes) const {
  std::string canonical;
  for (const auto& k : kKeys) {
    if (k.hashed) canonical += std::string(k.name) + '=' + values_.find(k.name)->second + '\n';
  }
  canonical += "dataset=" + hex64(fnv1a64(dataset_bytes)) + '\n';
  return hex64(fnv1a64(canonical));
}

}  // namespace adseqgan::pipeline
