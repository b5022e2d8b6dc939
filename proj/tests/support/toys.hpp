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

// Enumerable toy generators and exact expectations for estimator checks.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "adseqgan/neural/generator.hpp"

namespace adseqgan::testing {

using ToyReward = std::function<double(const std::vector<int>&)>;

/// Generator over tokens 1..n with start token 0 and no end token, so every
/// sample has exactly max_len tokens. Weights uniform in [-scale, scale].
neural::GeneratorParams toy_generator(int n_tokens, int d_emb, int d_hid, std::uint64_t seed, double scale);

/// Every sequence of the given length over tokens 1..n, lexicographic.
std::vector<std::vector<int>> all_sequences(int n_tokens, int length);

/// Exact expected reward of fixed-length samples and its gradient.
struct EnumeratedObjective {
  double value = 0.0;
  std::vector<double> gradient;  // flattened over params.tensors()
};

EnumeratedObjective enumerate_objective(const neural::GeneratorParams& params, int length, const ToyReward& reward);

/// Mean and variance of the reward over completions of `prefix`, by enumeration.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments enumerate_completion_moments(const neural::GeneratorParams& params, const std::vector<int>& prefix, int length,
                                     const ToyReward& reward);

/// Flattened copy of every parameter value in tensors() order.
std::vector<double> flatten(const neural::GeneratorParams& params);

}  // namespace adseqgan::testing
