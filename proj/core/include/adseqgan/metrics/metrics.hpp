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
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "adseqgan/auxdisc/auxdisc.hpp"

namespace adseqgan::metrics {

struct Sample {
  std::string smiles;  // decoded text, possibly invalid
  int length = 0;      // content tokens, eos excluded
};

struct GenerationReport {
  int requested_label = 0;
  std::size_t sample_count = 0;
  std::size_t valid_count = 0;
  std::size_t unique_count = 0;
  std::size_t novel_count = 0;
  double validity = 0.0;      // valid / samples
  double uniqueness = 0.0;    // distinct canonical / valid
  double novelty = 0.0;       // outside training set / distinct canonical
  std::vector<double> class_ratios;  // share of valid samples assigned to each class
  double class_ratio = 0.0;   // share assigned to the requested class
  double yield = 0.0;         // uniqueness * validity * class_ratio
  double mean_length = 0.0;
  double std_length = 0.0;
  double mean_tanimoto = 0.0;  // mean pairwise similarity of distinct valid molecules
  std::size_t tanimoto_subsample = 0;
};

struct EvaluateOptions {
  std::size_t tanimoto_max = 1000;
  std::uint64_t seed = 0;
  bool compute_tanimoto = true;
};

/// Class assignment: argmax over classes of probability times that class's
/// structural score; lowest index wins ties.
int classify(const auxdisc::RandomForestModel& classifier, const chem::MolecularGraph& graph);

GenerationReport evaluate(const std::vector<Sample>& samples, int requested_label,
                          const std::set<std::string>& training_canonical,
                          const auxdisc::RandomForestModel& classifier, const EvaluateOptions& options = {});

/// log10(target / other). Infinite when a yield is zero: -inf if target is 0, else +inf.
double responsiveness(double yield_target_label, double yield_other_label);

/// "+inf", "-inf" or the shortest round-trip decimal.
std::string format_metric(double value);

/// Flat "key value" lines.
std::string to_key_value(const GenerationReport& report, const std::vector<std::string>& class_names);
/// One-line JSON object; infinities are written as the strings "+inf"/"-inf".
std::string to_json(const GenerationReport& report, const std::vector<std::string>& class_names);

}  // namespace adseqgan::metrics
