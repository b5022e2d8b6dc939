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

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (int y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= counts.size()) {
      throw Error(Errc::UnknownClass, "label " + std::to_string(y) + " outside class list");
    }
    ++counts[static_cast<std::size_t>(y)];
  }
  return counts;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(Errc::ShapeMismatch, "scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Rank-sum form with midranks for ties.
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        positive_rank_sum += midrank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) throw Error(Errc::DegenerateLabels, "AUC needs both classes");
  const double p = static_cast<double>(positives);
  const double n = static_cast<double>(negatives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

std::vector<int> stratified_folds(std::span<const int> labels, int class_count, int folds, std::uint64_t seed) {
  if (folds < 2) throw Error(Errc::InvalidConfig, "need at least 2 folds");
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(class_count));
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  std::vector<int> fold(labels.size(), 0);
  Rng rng(seed);
  int next = 0;
  for (auto& members : by_class) {
    rng.shuffle(members.begin(), members.end());
    for (std::size_t i : members) {
      fold[i] = next;
      next = (next + 1) % folds;
    }
  }
  return fold;
}

namespace {

struct Standardizer {
  double mean = 0.0;
  double scale = 0.0;  // zero for constant features

  double operator()(double x) const { return scale > 0.0 ? (x - mean) / scale : 0.0; }
};

Standardizer fit_standardizer(const std::vector<double>& xs) {
  Standardizer s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  var /= static_cast<double>(xs.size());
  s.scale = var > 1e-24 ? std::sqrt(var) : 0.0;
  return s;
}

// Batch gradient descent on the mean logistic loss; returns (w, b).
std::pair<double, double> fit_logistic(const std::vector<double>& z, const std::vector<int>& y,
                                       const LogisticOptions& options) {
  double w = 0.0, b = 0.0;
  const double n = static_cast<double>(z.size());
  for (int it = 0; it < options.iterations; ++it) {
    double gw = 0.0, gb = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double p = 1.0 / (1.0 + std::exp(-(w * z[i] + b)));
      const double r = p - y[i];
      gw += r * z[i];
      gb += r;
    }
    w -= options.learning_rate * gw / n;
    b -= options.learning_rate * gb / n;
  }
  return {w, b};
}

}  // namespace

std::vector<double> feature_cv_auc(const LabeledDataset& data, int folds, std::uint64_t seed,
                                   const LogisticOptions& options) {
  if (folds < 2) throw Error(Errc::InvalidConfig, "need at least 2 folds");
  const auto counts = data.class_counts();
  const auto present = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; });
  if (present < 2) throw Error(Errc::DegenerateLabels, "feature selection needs at least two classes");
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0 && counts[c] < static_cast<std::size_t>(folds)) {
      throw Error(Errc::InsufficientData, "class " + data.class_names[c] + " has fewer rows than folds");
    }
  }
  const auto fold = stratified_folds(data.labels, data.class_count(), folds, seed);

  // One-vs-rest targets; a binary problem uses class 1 only.
  std::vector<int> targets;
  if (data.class_count() == 2) {
    targets = {1};
  } else {
    for (int c = 0; c < data.class_count(); ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) targets.push_back(c);
    }
  }

  std::vector<double> result(descriptors::kDescriptorCount, 0.0);
  for (std::size_t f = 0; f < descriptors::kDescriptorCount; ++f) {
    double total = 0.0;
    int measured = 0;
    for (int target : targets) {
      for (int k = 0; k < folds; ++k) {
        std::vector<double> train_x, test_x;
        std::vector<int> train_y, test_y;
        for (std::size_t i = 0; i < data.size(); ++i) {
          const int y = data.labels[i] == target ? 1 : 0;
          if (fold[i] == k) {
            test_x.push_back(data.rows[i][f]);
            test_y.push_back(y);
          } else {
            train_x.push_back(data.rows[i][f]);
            train_y.push_back(y);
          }
        }
        const bool test_has_both = std::count(test_y.begin(), test_y.end(), 1) > 0 &&
                                   std::count(test_y.begin(), test_y.end(), 0) > 0;
        if (!test_has_both) continue;
        const Standardizer s = fit_standardizer(train_x);
        for (double& x : train_x) x = s(x);
        const auto [w, b] = fit_logistic(train_x, train_y, options);
        std::vector<double> scores;
        scores.reserve(test_x.size());
        for (double x : test_x) scores.push_back(w * s(x) + b);
        total += auc(scores, test_y);
        ++measured;
      }
    }
    result[f] = measured > 0 ? total / measured : 0.5;
  }
  return result;
}

std::vector<int> select_features(const LabeledDataset& data, int k, int folds, std::uint64_t seed,
                                 const LogisticOptions& options) {
  if (k < 0 || static_cast<std::size_t>(k) > descriptors::kDescriptorCount) {
    throw Error(Errc::InvalidConfig, "feature count out of range");
  }
  if (k == 0) return {};
  const auto scores = feature_cv_auc(data, folds, seed, options);
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

}  // namespace adseqgan::auxdisc
