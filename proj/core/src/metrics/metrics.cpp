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

#include "adseqgan/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

#include "adseqgan/chem/canonical.hpp"
#include "adseqgan/chem/fingerprint.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"
#include "adseqgan/common/text.hpp"
#include "adseqgan/descriptors/descriptors.hpp"

namespace adseqgan::metrics {

int classify(const auxdisc::RandomForestModel& classifier, const chem::MolecularGraph& graph) {
  const auto proba = auxdisc::predict_proba(classifier, descriptors::compute_descriptors(graph));
  int best = 0;
  double best_score = -1.0;
  for (int c = 0; c < classifier.class_count(); ++c) {
    const double s = proba[static_cast<std::size_t>(c)] * auxdisc::structural_score(graph, classifier, c);
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  return best;
}

GenerationReport evaluate(const std::vector<Sample>& samples, int requested_label,
                          const std::set<std::string>& training_canonical,
                          const auxdisc::RandomForestModel& classifier, const EvaluateOptions& options) {
  if (samples.empty()) throw Error(Errc::EmptySampleSet, "no samples to evaluate");
  if (requested_label < 0 || requested_label >= classifier.class_count()) {
    throw Error(Errc::UnknownClass, "requested class " + std::to_string(requested_label) + " not in classifier");
  }
  GenerationReport r;
  r.requested_label = requested_label;
  r.sample_count = samples.size();
  r.class_ratios.assign(static_cast<std::size_t>(classifier.class_count()), 0.0);

  // Canonical text -> graph of the first occurrence; classification is per valid sample.
  std::map<std::string, int> class_of;
  std::vector<std::string> distinct;
  std::vector<chem::MolecularGraph> distinct_graphs;
  double len_sum = 0.0, len_sq = 0.0;
  for (const auto& s : samples) {
    len_sum += s.length;
    len_sq += static_cast<double>(s.length) * s.length;
    chem::MolecularGraph g;
    std::string canonical;
    try {
      g = chem::parse_smiles(s.smiles);
      canonical = chem::canonicalize(g);
    } catch (const Error&) {
      continue;
    }
    ++r.valid_count;
    auto it = class_of.find(canonical);
    if (it == class_of.end()) {
      it = class_of.emplace(canonical, classify(classifier, g)).first;
      distinct.push_back(canonical);
      distinct_graphs.push_back(std::move(g));
    }
    r.class_ratios[static_cast<std::size_t>(it->second)] += 1.0;
  }
  const double n = static_cast<double>(r.sample_count);
  r.mean_length = len_sum / n;
  r.std_length = std::sqrt(std::max(0.0, len_sq / n - r.mean_length * r.mean_length));
  r.unique_count = distinct.size();
  for (const auto& c : distinct) r.novel_count += training_canonical.count(c) == 0;
  r.validity = static_cast<double>(r.valid_count) / n;
  if (r.valid_count > 0) {
    r.uniqueness = static_cast<double>(r.unique_count) / static_cast<double>(r.valid_count);
    for (double& c : r.class_ratios) c /= static_cast<double>(r.valid_count);
    r.class_ratio = r.class_ratios[static_cast<std::size_t>(requested_label)];
  }
  if (r.unique_count > 0) r.novelty = static_cast<double>(r.novel_count) / static_cast<double>(r.unique_count);
  r.yield = r.uniqueness * r.validity * r.class_ratio;

  if (options.compute_tanimoto && distinct.size() >= 2) {
    std::vector<std::size_t> idx(distinct.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (idx.size() > options.tanimoto_max) {
      Rng rng(options.seed);
      rng.shuffle(idx.begin(), idx.end());
      idx.resize(options.tanimoto_max);
    }
    std::vector<chem::Fingerprint> fps;
    fps.reserve(idx.size());
    for (std::size_t i : idx) fps.push_back(chem::fingerprint(distinct_graphs[i]));
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < fps.size(); ++i) {
      for (std::size_t j = i + 1; j < fps.size(); ++j) {
        total += chem::tanimoto(fps[i], fps[j]);
        ++pairs;
      }
    }
    r.mean_tanimoto = total / static_cast<double>(pairs);
    r.tanimoto_subsample = fps.size();
  }
  return r;
}

double responsiveness(double yield_target_label, double yield_other_label) {
  if (yield_target_label <= 0.0) return -std::numeric_limits<double>::infinity();
  if (yield_other_label <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log10(yield_target_label / yield_other_label);
}

std::string format_metric(double value) {
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  return format_double(value);
}

namespace {

std::vector<std::pair<std::string, std::string>> fields(const GenerationReport& r,
                                                        const std::vector<std::string>& class_names) {
  std::vector<std::pair<std::string, std::string>> f = {
      {"requested_label", std::to_string(r.requested_label)},
      {"requested_class", static_cast<std::size_t>(r.requested_label) < class_names.size()
                              ? class_names[static_cast<std::size_t>(r.requested_label)]
                              : std::to_string(r.requested_label)},
      {"samples", std::to_string(r.sample_count)},
      {"valid", std::to_string(r.valid_count)},
      {"unique", std::to_string(r.unique_count)},
      {"novel", std::to_string(r.novel_count)},
      {"validity", format_metric(r.validity)},
      {"uniqueness", format_metric(r.uniqueness)},
      {"novelty", format_metric(r.novelty)},
      {"class_ratio", format_metric(r.class_ratio)},
      {"yield", format_metric(r.yield)},
      {"mean_length", format_metric(r.mean_length)},
      {"std_length", format_metric(r.std_length)},
      {"mean_tanimoto", format_metric(r.mean_tanimoto)},
      {"tanimoto_subsample", std::to_string(r.tanimoto_subsample)},
  };
  for (std::size_t c = 0; c < r.class_ratios.size(); ++c) {
    const std::string name = c < class_names.size() ? class_names[c] : std::to_string(c);
    f.emplace_back("class_ratio." + name, format_metric(r.class_ratios[c]));
  }
  return f;
}

}  // namespace

std::string to_key_value(const GenerationReport& report, const std::vector<std::string>& class_names) {
  std::ostringstream out;
  for (const auto& [k, v] : fields(report, class_names)) out << k << ' ' << v << '\n';
  return out.str();
}

std::string to_json(const GenerationReport& r, const std::vector<std::string>& class_names) {
  nlohmann::ordered_json j;
  j["requested_label"] = r.requested_label;
  j["samples"] = r.sample_count;
  j["valid"] = r.valid_count;
  j["unique"] = r.unique_count;
  j["novel"] = r.novel_count;
  j["validity"] = r.validity;
  j["uniqueness"] = r.uniqueness;
  j["novelty"] = r.novelty;
  j["class_ratio"] = r.class_ratio;
  j["yield"] = r.yield;
  j["mean_length"] = r.mean_length;
  j["std_length"] = r.std_length;
  j["mean_tanimoto"] = r.mean_tanimoto;
  j["tanimoto_subsample"] = r.tanimoto_subsample;
  auto& ratios = j["class_ratios"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < r.class_ratios.size(); ++c) {
    ratios[c < class_names.size() ? class_names[c] : std::to_string(c)] = r.class_ratios[c];
  }
  return j.dump();
}

}  // namespace adseqgan::metrics
