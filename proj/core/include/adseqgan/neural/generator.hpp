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

namespace adseqgan {
class Rng;
}

namespace adseqgan::neural {

struct GeneratorShape {
  int vocab = 0;
  int d_emb = 32;
  int d_hid = 128;
  int eos_token = 1;
  std::vector<int> start_tokens;       // one per class label
  std::vector<std::uint8_t> emittable;  // empty means every token may be sampled
};

/// Embedding + single-layer LSTM + linear projection over the vocabulary.
/// Gate blocks in w_gates/b_gates are ordered input, forget, cell, output.
struct GeneratorParams {
  int vocab = 0;
  int d_emb = 0;
  int d_hid = 0;
  int eos_token = 1;
  std::vector<int> start_tokens;
  std::vector<std::uint8_t> emittable;

  Tensor embedding;  // vocab x d_emb
  Tensor w_gates;    // 4 d_hid x (d_emb + d_hid)
  Tensor b_gates;    // 4 d_hid
  Tensor w_out;      // vocab x d_hid
  Tensor b_out;      // vocab

  TensorRefs tensors();
  ConstTensorRefs tensors() const;
  /// Same layout with every weight zero; used for gradient accumulators.
  GeneratorParams zeros_like() const;
  int start_token(int label) const;
  int class_count() const noexcept { return static_cast<int>(start_tokens.size()); }

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

GeneratorParams make_generator(const GeneratorShape& shape);
/// Small random initialisation; forget-gate bias starts at 1.
GeneratorParams init_generator(const GeneratorShape& shape, std::uint64_t seed);

struct GeneratorState {
  std::vector<double> h;
  std::vector<double> c;

  static GeneratorState zeros(int d_hid);
  friend bool operator==(const GeneratorState&, const GeneratorState&) = default;
};

struct StepOutput {
  std::vector<double> logits;
  GeneratorState state;

  friend bool operator==(const StepOutput&, const StepOutput&) = default;
};

StepOutput generator_step(const GeneratorParams& params, const GeneratorState& state, int token);

/// Softmax over emittable tokens; masked entries are exactly zero.
std::vector<double> masked_softmax(const GeneratorParams& params, std::span<const double> logits);

/// Index drawn from a probability vector by inversion of one uniform draw.
int sample_index(std::span<const double> probs, Rng& rng);

/// Tokens emitted after the class start token. Stops after sampling eos or when
/// max_len actions have been taken, so the length never exceeds max_len.
std::vector<int> sample_sequence(const GeneratorParams& params, int label, int max_len, Rng& rng);
std::vector<int> sample_sequence(const GeneratorParams& params, int label, int max_len, std::uint64_t seed);

/// Recurrent state after consuming the start token and the given prefix.
StepOutput run_prefix(const GeneratorParams& params, int label, std::span<const int> prefix);

/// Complete a prefix by sampling, continuing from the state run_prefix returned.
std::vector<int> complete_sequence(const GeneratorParams& params, std::span<const int> prefix,
                                   const StepOutput& after_prefix, int max_len, Rng& rng);

/// Sum of log-probabilities of the realised tokens.
double sequence_log_prob(const GeneratorParams& params, int label, std::span<const int> sequence);

/// Reverse-mode pass for L = -sum_t weights[t] * log p(y_t | y_<t).
/// Adds dL/dtheta into grads and returns sum_t weights[t] * log p(y_t | y_<t).
double log_prob_backward(const GeneratorParams& params, int label, std::span<const int> sequence,
                         std::span<const double> weights, GeneratorParams& grads);

}  // namespace adseqgan::neural
