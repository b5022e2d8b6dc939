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

#include "toys.hpp"

#include <cmath>

#include "adseqgan/common/rng.hpp"

namespace adseqgan::testing {

neural::GeneratorParams toy_generator(int n_tokens, int d_emb, int d_hid, std::uint64_t seed, double scale) {
  neural::GeneratorShape shape;
  shape.vocab = n_tokens + 1;
  shape.d_emb = d_emb;
  shape.d_hid = d_hid;
  shape.eos_token = -1;
  shape.start_tokens = {0};
  shape.emittable.assign(static_cast<std::size_t>(n_tokens + 1), 1);
  shape.emittable[0] = 0;
  auto params = neural::make_generator(shape);
  Rng rng(seed);
  for (neural::Tensor* t : params.tensors()) t->fill_uniform(rng, scale);
  return params;
}

std::vector<std::vector<int>> all_sequences(int n_tokens, int length) {
  std::vector<std::vector<int>> out{{}};
  for (int pos = 0; pos < length; ++pos) {
    std::vector<std::vector<int>> next;
    for (const auto& s : out) {
      for (int t = 1; t <= n_tokens; ++t) {
        auto e = s;
        e.push_back(t);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<double> flatten(const neural::GeneratorParams& params) {
  std::vector<double> out;
  for (const neural::Tensor* t : params.tensors()) out.insert(out.end(), t->data.begin(), t->data.end());
  return out;
}

EnumeratedObjective enumerate_objective(const neural::GeneratorParams& params, int length, const ToyReward& reward) {
  const int n = params.vocab - 1;
  auto grads = params.zeros_like();
  EnumeratedObjective out;
  for (const auto& seq : all_sequences(n, length)) {
    const double p = std::exp(neural::sequence_log_prob(params, 0, seq));
    const double r = reward(seq);
    out.value += p * r;
    // dJ = sum_y R(y) p(y) dlog p(y); the backward pass adds -sum w dlog p.
    const std::vector<double> w(seq.size(), -r * p);
    neural::log_prob_backward(params, 0, seq, w, grads);
  }
  out.gradient = flatten(grads);
  return out;
}

Moments enumerate_completion_moments(const neural::GeneratorParams& params, const std::vector<int>& prefix, int length,
                                     const ToyReward& reward) {
  const int n = params.vocab - 1;
  const double log_prefix = neural::sequence_log_prob(params, 0, prefix);
  double m1 = 0.0, m2 = 0.0;
  for (const auto& tail : all_sequences(n, length - static_cast<int>(prefix.size()))) {
    auto seq = prefix;
    seq.insert(seq.end(), tail.begin(), tail.end());
    const double p = std::exp(neural::sequence_log_prob(params, 0, seq) - log_prefix);
    const double r = reward(seq);
    m1 += p * r;
    m2 += p * r * r;
  }
  return {m1, m2 - m1 * m1};
}

}  // namespace adseqgan::testing
