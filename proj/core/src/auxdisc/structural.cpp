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

#include <algorithm>

#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/chem/smiles.hpp"
#include "adseqgan/common/error.hpp"

namespace adseqgan::auxdisc {

namespace d = descriptors;

double structural_score(const chem::MolecularGraph& graph, const StructuralRules& rules) {
  const auto v = d::compute_descriptors(graph);
  double score = 1.0;
  if (v[d::kHeteroRatio] > rules.hetero_ratio_max) score *= rules.hetero_penalty;
  if (v[d::kMaxRingSize] > rules.macrocycle_size) score *= rules.macrocycle_penalty;
  const auto& rings = graph.rings();
  if (std::any_of(rings.begin(), rings.end(), [](const chem::Ring& r) { return r.antiaromatic; })) {
    score *= rules.antiaromatic_penalty;
  }
  if (v[d::kHalogenRatio] > rules.halogen_ratio_max) score *= rules.halogen_penalty;
  if (v[d::kCarbonFraction] > rules.carbon_fraction_max) score *= rules.carbon_penalty;
  if (d::fused_aromatic_with_heteroatom(graph)) score *= rules.fused_hetero_bonus;
  return std::clamp(score, 0.0, 1.0);
}

double structural_score(const chem::MolecularGraph& graph, const RandomForestModel& model, int label) {
  return structural_score(graph, model.rules_for(label));
}

RewardMode parse_reward_mode(std::string_view text) {
  if (text == "product") return RewardMode::Product;
  if (text == "threshold") return RewardMode::Threshold;
  throw Error(Errc::InvalidConfig, "unknown reward mode '" + std::string(text) + "'");
}

std::string_view reward_mode_name(RewardMode mode) {
  return mode == RewardMode::Product ? "product" : "threshold";
}

double auxiliary_reward(const RandomForestModel& model, const chem::MolecularGraph& graph, int label,
                        RewardMode mode, double tau) {
  if (label < 0 || label >= model.class_count()) {
    throw Error(Errc::UnknownClass, "class " + std::to_string(label) + " not in model");
  }
  const auto proba = predict_proba(model, d::compute_descriptors(graph));
  const double p = proba[static_cast<std::size_t>(label)];
  if (mode == RewardMode::Threshold && p > tau) return 1.0;
  return p * structural_score(graph, model, label);
}

double auxiliary_reward(const RandomForestModel& model, std::string_view smiles, int label, RewardMode mode,
                        double tau) {
  chem::MolecularGraph graph;
  try {
    graph = chem::parse_smiles(smiles);
  } catch (const chem::SmilesError&) {
    return 0.0;
  }
  return auxiliary_reward(model, graph, label, mode, tau);
}

}  // namespace adseqgan::auxdisc
