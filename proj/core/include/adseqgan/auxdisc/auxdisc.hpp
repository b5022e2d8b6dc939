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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adseqgan/chem/molecule.hpp"
#include "adseqgan/descriptors/descriptors.hpp"

namespace adseqgan::auxdisc {

struct LabeledDataset {
  std::vector<descriptors::DescriptorVector> rows;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  std::size_t size() const noexcept { return rows.size(); }
  int class_count() const noexcept { return static_cast<int>(class_names.size()); }
  /// Number of rows per class label.
  std::vector<std::size_t> class_counts() const;
};

/// Mann-Whitney AUC; labels are 0/1, ties count one half.
double auc(std::span<const double> scores, std::span<const int> labels);

/// Stratified fold assignment: fold index per row.
std::vector<int> stratified_folds(std::span<const int> labels, int class_count, int folds,
                                  std::uint64_t seed);

struct LogisticOptions {
  int iterations = 200;
  double learning_rate = 0.1;
};

/// Mean held-out AUC of a single-feature logistic regression, per descriptor.
/// Multiclass data is scored one-vs-rest and averaged over classes.
std::vector<double> feature_cv_auc(const LabeledDataset& data, int folds, std::uint64_t seed,
                                   const LogisticOptions& options = {});

/// Top-k descriptor indices by cross-validated AUC, best first (ties by index).
std::vector<int> select_features(const LabeledDataset& data, int k, int folds, std::uint64_t seed,
                                 const LogisticOptions& options = {});

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> proba;  // leaves only
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // root at index 0

  const std::vector<double>& leaf(const descriptors::DescriptorVector& x) const;
};

/// Thresholds of the rule-based structural scorer. Defaults apply to every class.
struct StructuralRules {
  double hetero_ratio_max = 0.5;
  double hetero_penalty = 0.5;
  int macrocycle_size = 12;
  double macrocycle_penalty = 0.5;
  double antiaromatic_penalty = 0.5;
  double halogen_ratio_max = 0.35;
  double halogen_penalty = 0.2;
  double carbon_fraction_max = 0.95;
  double carbon_penalty = 0.5;
  double fused_hetero_bonus = 1.2;

  friend bool operator==(const StructuralRules&, const StructuralRules&) = default;
};

struct RandomForestModel {
  std::vector<DecisionTree> trees;
  std::vector<int> features;
  std::vector<std::string> class_names;
  std::vector<StructuralRules> rules;  // one per class
  std::string schema_version{descriptors::kSchemaVersion};
  std::string config_hash;

  int class_count() const noexcept { return static_cast<int>(class_names.size()); }
  std::size_t n_trees() const noexcept { return trees.size(); }
  const StructuralRules& rules_for(int label) const;
};

inline constexpr int kDefaultTrees = 100;
inline constexpr int kDefaultMinLeaf = 2;

RandomForestModel train_random_forest(const LabeledDataset& data, const std::vector<int>& features,
                                      int n_trees, std::uint64_t seed, int min_leaf = kDefaultMinLeaf);

std::vector<double> predict_proba(const RandomForestModel& model, const descriptors::DescriptorVector& x,
                                  std::string_view schema = descriptors::kSchemaVersion);

/// Stratified k-fold AUC of the full feature-selection + forest pipeline.
double cross_validated_forest_auc(const LabeledDataset& data, const std::vector<int>& features, int n_trees,
                                  int folds, std::uint64_t seed);

double structural_score(const chem::MolecularGraph& graph, const StructuralRules& rules = {});
double structural_score(const chem::MolecularGraph& graph, const RandomForestModel& model, int label);

enum class RewardMode { Product, Threshold };

inline constexpr double kDefaultThreshold = 0.40;

RewardMode parse_reward_mode(std::string_view text);
std::string_view reward_mode_name(RewardMode mode);

/// Zero for unparseable text; otherwise probability times structural score,
/// or 1 above the threshold in threshold mode.
double auxiliary_reward(const RandomForestModel& model, std::string_view smiles, int label, RewardMode mode,
                        double tau = kDefaultThreshold);

/// Same as auxiliary_reward for an already parsed graph.
double auxiliary_reward(const RandomForestModel& model, const chem::MolecularGraph& graph, int label,
                        RewardMode mode, double tau = kDefaultThreshold);

std::string serialize_model(const RandomForestModel& model);
RandomForestModel deserialize_model(std::string_view text);

}  // namespace adseqgan::auxdisc
