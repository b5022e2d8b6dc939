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

#include <cstdint>
#include <span>
#include <vector>

#include "adseqgan/neural/tensor.hpp"

namespace adseqgan::neural {

struct CriticShape {
  int vocab = 0;
  int d_emb = 32;
  std::vector<int> windows = {1, 2, 3, 4, 5, 6, 7, 8};
  int filters = 16;
  int pad_token = 0;
};

/// Embedding, parallel convolutions with max-over-time pooling, one highway
/// layer and a linear scalar head.
struct CriticParams {
  int vocab = 0;
  int d_emb = 0;
  std::vector<int> windows;
  int filters = 0;
  int pad_token = 0;

  Tensor embedding;             // vocab x d_emb
  std::vector<Tensor> conv_w;   // per window: filters x (window * d_emb)
  std::vector<Tensor> conv_b;   // per window: filters
  Tensor hw_gate_w;             // D x D, D = filters * windows
  Tensor hw_gate_b;             // D
  Tensor hw_w;                  // D x D
  Tensor hw_b;                  // D
  Tensor out_w;                 // D
  Tensor out_b;                 // 1

  int feature_width() const noexcept { return filters * static_cast<int>(windows.size()); }
  TensorRefs tensors();
  ConstTensorRefs tensors() const;
  CriticParams zeros_like() const;

  friend bool operator==(const CriticParams&, const CriticParams&) = default;
};

CriticParams make_critic(const CriticShape& shape);
/// Uniform initialisation inside [-scale, scale].
CriticParams init_critic(const CriticShape& shape, std::uint64_t seed, double scale);

/// Pad with pad_token or truncate to exactly pad_to tokens.
std::vector<int> pad_sequence(std::span<const int> sequence, int pad_to, int pad_token);

double critic_score(const CriticParams& params, std::span<const int> sequence, int pad_to);

/// Scores many sequences against one parameter snapshot; the embedding-filter
/// products are computed once at construction. Results equal critic_score.
class CriticScorer {
 public:
  CriticScorer(const CriticParams& params, int pad_to);
  double operator()(std::span<const int> sequence) const;

 private:
  const CriticParams& params_;
  int pad_to_;
  std::vector<std::vector<double>> table_;
};

/// Adds d_score * dscore/dphi into grads; returns the score.
double critic_backward(const CriticParams& params, std::span<const int> sequence, int pad_to, double d_score,
                       CriticParams& grads);

/// critic_backward over a batch sharing one parameter snapshot; returns the scores.
std::vector<double> critic_backward_batch(const CriticParams& params, const std::vector<std::vector<int>>& sequences,
                                          int pad_to, std::span<const double> d_scores, CriticParams& grads);

}  // namespace adseqgan::neural
