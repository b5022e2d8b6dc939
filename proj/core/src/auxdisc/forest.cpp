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
#include <cmath>
#include <numeric>

#include "adseqgan/auxdisc/auxdisc.hpp"
#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"

namespace adseqgan::auxdisc {

const std::vector<double>& DecisionTree::leaf(const descriptors::DescriptorVector& x) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i].proba;
}

const StructuralRules& RandomForestModel::rules_for(int label) const {
  static const StructuralRules kDefaults{};
  if (label >= 0 && static_cast<std::size_t>(label) < rules.size()) return rules[static_cast<std::size_t>(label)];
  return kDefaults;
}

namespace {

double gini(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += (c / total) * (c / total);
  return 1.0 - sum_sq;
}

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& data, const std::vector<int>& features, int min_leaf, Rng& rng)
      : data_(data),
        features_(features),
        classes_(static_cast<std::size_t>(data.class_count())),
        min_leaf_(static_cast<std::size_t>(std::max(1, min_leaf))),
        mtry_(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(features.size()))))),
        rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> sample) {
    tree_.nodes.clear();
    grow(sample);
    return std::move(tree_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  std::vector<double> class_counts(const std::vector<std::size_t>& rows) const {
    std::vector<double> counts(classes_, 0.0);
    for (std::size_t r : rows) counts[static_cast<std::size_t>(data_.labels[r])] += 1.0;
    return counts;
  }

  int grow(std::vector<std::size_t>& rows) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const auto counts = class_counts(rows);
    const double total = static_cast<double>(rows.size());
    const double parent = gini(counts, total);

    Split best;
    if (parent > 0.0 && rows.size() >= 2 * min_leaf_) best = find_split(rows, parent);
    if (best.feature < 0) {
      auto& leaf = tree_.nodes[static_cast<std::size_t>(index)];
      leaf.proba.resize(classes_);
      for (std::size_t c = 0; c < classes_; ++c) leaf.proba[c] = counts[c] / total;
      return index;
    }
    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (data_.rows[r][static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(left);
    const int r = grow(right);
    auto& node = tree_.nodes[static_cast<std::size_t>(index)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    return index;
  }

  Split find_split(const std::vector<std::size_t>& rows, double parent) {
    // Partial Fisher-Yates draws mtry distinct candidate features.
    std::vector<int> candidates = features_;
    const std::size_t m = std::min(mtry_, candidates.size());
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + rng_.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
    }
    Split best;
    best.impurity = parent;
    const double total = static_cast<double>(rows.size());
    std::vector<std::pair<double, int>> values(rows.size());
    for (std::size_t ci = 0; ci < m; ++ci) {
      const int f = candidates[ci];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        values[i] = {data_.rows[rows[i]][static_cast<std::size_t>(f)], data_.labels[rows[i]]};
      }
      std::sort(values.begin(), values.end());
      std::vector<double> left(classes_, 0.0);
      std::vector<double> right = class_counts(rows);
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        left[static_cast<std::size_t>(values[i].second)] += 1.0;
        right[static_cast<std::size_t>(values[i].second)] -= 1.0;
        if (values[i].first == values[i + 1].first) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = values.size() - nl;
        if (nl < min_leaf_ || nr < min_leaf_) continue;
        const double dl = static_cast<double>(nl), dr = static_cast<double>(nr);
        const double impurity = (dl * gini(left, dl) + dr * gini(right, dr)) / total;
        if (impurity < best.impurity - 1e-12) {
          best.feature = f;
          best.threshold = 0.5 * (values[i].first + values[i + 1].first);
          best.impurity = impurity;
        }
      }
    }
    return best;
  }

  const LabeledDataset& data_;
  const std::vector<int>& features_;
  std::size_t classes_;
  std::size_t min_leaf_;
  std::size_t mtry_;
  Rng& rng_;
  DecisionTree tree_;
};

}  // namespace

RandomForestModel train_random_forest(const LabeledDataset& data, const std::vector<int>& features, int n_trees,
                                      std::uint64_t seed, int min_leaf) {
  if (n_trees < 1) throw Error(Errc::InvalidConfig, "forest needs at least one tree");
  if (features.empty()) throw Error(Errc::InvalidConfig, "forest needs at least one feature");
  if (data.size() == 0) throw Error(Errc::InsufficientData, "no training rows");
  if (data.labels.size() != data.rows.size()) throw Error(Errc::ShapeMismatch, "labels and rows differ in length");
  if (data.class_count() < 1) throw Error(Errc::InsufficientData, "no class names");
  for (int f : features) {
    if (f < 0 || static_cast<std::size_t>(f) >= descriptors::kDescriptorCount) {
      throw Error(Errc::SchemaMismatch, "feature index " + std::to_string(f) + " outside schema");
    }
  }
  data.class_counts();  // validates labels

  RandomForestModel model;
  model.features = features;
  model.class_names = data.class_names;
  model.rules.assign(data.class_names.size(), StructuralRules{});
  model.trees.reserve(static_cast<std::size_t>(n_trees));
  for (int t = 0; t < n_trees; ++t) {
    Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(t)});
    std::vector<std::size_t> sample(data.size());
    for (auto& s : sample) s = rng.below(data.size());
    TreeBuilder builder(data, features, min_leaf, rng);
    model.trees.push_back(builder.build(std::move(sample)));
  }
  return model;
}

std::vector<double> predict_proba(const RandomForestModel& model, const descriptors::DescriptorVector& x,
                                  std::string_view schema) {
  if (schema != model.schema_version) {
    throw Error(Errc::SchemaMismatch,
                "model schema " + model.schema_version + " does not match input " + std::string(schema));
  }
  std::vector<double> proba(static_cast<std::size_t>(model.class_count()), 0.0);
  for (const auto& tree : model.trees) {
    const auto& p = tree.leaf(x);
    for (std::size_t c = 0; c < proba.size(); ++c) proba[c] += p[c];
  }
  const double n = static_cast<double>(model.trees.size());
  for (double& p : proba) p /= n;
  return proba;
}

double cross_validated_forest_auc(const LabeledDataset& data, const std::vector<int>& features, int n_trees,
                                  int folds, std::uint64_t seed) {
  const auto counts = data.class_counts();
  if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2) {
    throw Error(Errc::DegenerateLabels, "cross-validation needs at least two classes");
  }
  for (std::size_t c : counts) {
    if (c > 0 && c < static_cast<std::size_t>(folds)) throw Error(Errc::InsufficientData, "class smaller than fold count");
  }
  const auto fold = stratified_folds(data.labels, data.class_count(), folds, seed);
  const int classes = data.class_count();
  // Out-of-fold probabilities, then AUC per class one-vs-rest.
  std::vector<std::vector<double>> oof(data.size());
  for (int k = 0; k < folds; ++k) {
    LabeledDataset train;
    train.class_names = data.class_names;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold[i] != k) {
        train.rows.push_back(data.rows[i]);
        train.labels.push_back(data.labels[i]);
      }
    }
    const auto model = train_random_forest(train, features, n_trees, mix64(seed ^ static_cast<std::uint64_t>(k + 1)));
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold[i] == k) oof[i] = predict_proba(model, data.rows[i]);
    }
  }
  std::vector<int> targets;
  if (classes == 2) {
    targets = {1};
  } else {
    for (int c = 0; c < classes; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) targets.push_back(c);
    }
  }
  double total = 0.0;
  for (int target : targets) {
    std::vector<double> scores(data.size());
    std::vector<int> labels(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      scores[i] = oof[i][static_cast<std::size_t>(target)];
      labels[i] = data.labels[i] == target ? 1 : 0;
    }
    total += auc(scores, labels);
  }
  return total / static_cast<double>(targets.size());
}

}  // namespace adseqgan::auxdisc
