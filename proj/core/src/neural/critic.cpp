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

#include "adseqgan/neural/critic.hpp"

#include <algorithm>
#include <cmath>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"

namespace adseqgan::neural {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Forward {
  std::vector<int> tokens;
  std::vector<double> pooled;     // D, after ReLU
  std::vector<int> argmax;        // D, position of the max pre-activation
  std::vector<double> gate;       // D
  std::vector<double> hidden_pre; // D
  std::vector<double> hidden;     // D, after ReLU
  std::vector<double> mixed;      // D
  double score = 0.0;
};

// Projection of every token embedding through every filter offset, so a
// convolution reduces to table lookups. Layout per window: [offset][token][filter].
std::vector<std::vector<double>> projection_table(const CriticParams& p) {
  const std::size_t E = static_cast<std::size_t>(p.d_emb);
  const std::size_t F = static_cast<std::size_t>(p.filters);
  const std::size_t V = static_cast<std::size_t>(p.vocab);
  std::vector<std::vector<double>> table(p.windows.size());
  for (std::size_t wi = 0; wi < p.windows.size(); ++wi) {
    const std::size_t w = static_cast<std::size_t>(p.windows[wi]);
    auto& t = table[wi];
    t.assign(w * V * F, 0.0);
    for (std::size_t j = 0; j < w; ++j) {
      for (std::size_t v = 0; v < V; ++v) {
        const double* x = p.embedding.row(v);
        double* out = t.data() + (j * V + v) * F;
        for (std::size_t f = 0; f < F; ++f) {
          const double* wj = p.conv_w[wi].row(f) + j * E;
          double a = 0.0;
          for (std::size_t k = 0; k < E; ++k) a += wj[k] * x[k];
          out[f] = a;
        }
      }
    }
  }
  return table;
}

Forward forward(const CriticParams& p, const std::vector<std::vector<double>>& table, std::span<const int> sequence,
                int pad_to) {
  Forward fw;
  fw.tokens = pad_sequence(sequence, pad_to, p.pad_token);
  for (int t : fw.tokens) {
    if (t < 0 || t >= p.vocab) throw Error(Errc::IndexOutOfVocab, "critic token " + std::to_string(t));
  }
  const std::size_t F = static_cast<std::size_t>(p.filters);
  const std::size_t V = static_cast<std::size_t>(p.vocab);
  const std::size_t D = static_cast<std::size_t>(p.feature_width());
  const std::size_t L = fw.tokens.size();
  fw.pooled.assign(D, 0.0);
  fw.argmax.assign(D, -1);
  std::vector<double> best(F), acc(F);
  for (std::size_t wi = 0; wi < p.windows.size(); ++wi) {
    const std::size_t w = static_cast<std::size_t>(p.windows[wi]);
    const auto& t = table[wi];
    const double* bias = p.conv_b[wi].data.data();
    for (std::size_t pos = 0; pos + w <= L; ++pos) {
      std::copy(bias, bias + F, acc.begin());
      for (std::size_t j = 0; j < w; ++j) {
        const double* row = t.data() + (j * V + static_cast<std::size_t>(fw.tokens[pos + j])) * F;
        for (std::size_t f = 0; f < F; ++f) acc[f] += row[f];
      }
      for (std::size_t f = 0; f < F; ++f) {
        const std::size_t d = wi * F + f;
        if (fw.argmax[d] < 0 || acc[f] > best[f]) {
          best[f] = acc[f];
          fw.argmax[d] = static_cast<int>(pos);
        }
      }
    }
    for (std::size_t f = 0; f < F; ++f) {
      const std::size_t d = wi * F + f;
      fw.pooled[d] = fw.argmax[d] >= 0 ? std::max(0.0, best[f]) : 0.0;
    }
  }
  fw.gate.assign(D, 0.0);
  fw.hidden_pre.assign(D, 0.0);
  fw.hidden.assign(D, 0.0);
  fw.mixed.assign(D, 0.0);
  fw.score = p.out_b.data[0];
  for (std::size_t r = 0; r < D; ++r) {
    double a = p.hw_gate_b.data[r];
    double b = p.hw_b.data[r];
    const double* gw = p.hw_gate_w.row(r);
    const double* hw = p.hw_w.row(r);
    for (std::size_t k = 0; k < D; ++k) {
      a += gw[k] * fw.pooled[k];
      b += hw[k] * fw.pooled[k];
    }
    fw.gate[r] = sigmoid(a);
    fw.hidden_pre[r] = b;
    fw.hidden[r] = std::max(0.0, b);
    fw.mixed[r] = fw.gate[r] * fw.hidden[r] + (1.0 - fw.gate[r]) * fw.pooled[r];
    fw.score += p.out_w.data[r] * fw.mixed[r];
  }
  return fw;
}

}  // namespace

TensorRefs CriticParams::tensors() {
  TensorRefs refs{&embedding};
  for (std::size_t i = 0; i < conv_w.size(); ++i) {
    refs.push_back(&conv_w[i]);
    refs.push_back(&conv_b[i]);
  }
  for (Tensor* t : {&hw_gate_w, &hw_gate_b, &hw_w, &hw_b, &out_w, &out_b}) refs.push_back(t);
  return refs;
}

ConstTensorRefs CriticParams::tensors() const {
  auto refs = const_cast<CriticParams*>(this)->tensors();
  return ConstTensorRefs(refs.begin(), refs.end());
}

CriticParams CriticParams::zeros_like() const {
  CriticParams z = *this;
  for (Tensor* t : z.tensors()) t->fill(0.0);
  return z;
}

CriticParams make_critic(const CriticShape& shape) {
  if (shape.vocab < 1 || shape.d_emb < 1 || shape.filters < 1 || shape.windows.empty()) {
    throw Error(Errc::InvalidConfig, "critic dimensions must be positive");
  }
  CriticParams p;
  p.vocab = shape.vocab;
  p.d_emb = shape.d_emb;
  p.windows = shape.windows;
  p.filters = shape.filters;
  p.pad_token = shape.pad_token;
  const auto V = static_cast<std::size_t>(shape.vocab);
  const auto E = static_cast<std::size_t>(shape.d_emb);
  const auto F = static_cast<std::size_t>(shape.filters);
  p.embedding = Tensor("critic.embedding", V, E);
  for (int w : shape.windows) {
    if (w < 1) throw Error(Errc::InvalidConfig, "critic window must be positive");
    p.conv_w.emplace_back("critic.conv" + std::to_string(w) + ".w", F, static_cast<std::size_t>(w) * E);
    p.conv_b.emplace_back("critic.conv" + std::to_string(w) + ".b", F);
  }
  const auto D = static_cast<std::size_t>(p.feature_width());
  p.hw_gate_w = Tensor("critic.highway.gate_w", D, D);
  p.hw_gate_b = Tensor("critic.highway.gate_b", D);
  p.hw_w = Tensor("critic.highway.w", D, D);
  p.hw_b = Tensor("critic.highway.b", D);
  p.out_w = Tensor("critic.out.w", D);
  p.out_b = Tensor("critic.out.b", 1);
  return p;
}

CriticParams init_critic(const CriticShape& shape, std::uint64_t seed, double scale) {
  CriticParams p = make_critic(shape);
  Rng rng(seed);
  for (Tensor* t : p.tensors()) t->fill_uniform(rng, scale);
  return p;
}

std::vector<int> pad_sequence(std::span<const int> sequence, int pad_to, int pad_token) {
  std::vector<int> out(sequence.begin(), sequence.begin() + std::min<std::ptrdiff_t>(sequence.size(), pad_to));
  out.resize(static_cast<std::size_t>(std::max(pad_to, 0)), pad_token);
  return out;
}

double critic_score(const CriticParams& params, std::span<const int> sequence, int pad_to) {
  return forward(params, projection_table(params), sequence, pad_to).score;
}

CriticScorer::CriticScorer(const CriticParams& params, int pad_to)
    : params_(params), pad_to_(pad_to), table_(projection_table(params)) {}

double CriticScorer::operator()(std::span<const int> sequence) const {
  return forward(params_, table_, sequence, pad_to_).score;
}

namespace {

void backward_one(const CriticParams& params, const Forward& fw, double d_score, CriticParams& grads) {
  const std::size_t E = static_cast<std::size_t>(params.d_emb);
  const std::size_t F = static_cast<std::size_t>(params.filters);
  const std::size_t D = static_cast<std::size_t>(params.feature_width());

  grads.out_b.data[0] += d_score;
  std::vector<double> d_pooled(D, 0.0);
  for (std::size_t r = 0; r < D; ++r) {
    grads.out_w.data[r] += d_score * fw.mixed[r];
    const double d_mixed = d_score * params.out_w.data[r];
    const double d_gate_pre = d_mixed * (fw.hidden[r] - fw.pooled[r]) * fw.gate[r] * (1.0 - fw.gate[r]);
    const double d_hidden_pre = fw.hidden_pre[r] > 0.0 ? d_mixed * fw.gate[r] : 0.0;
    d_pooled[r] += d_mixed * (1.0 - fw.gate[r]);
    grads.hw_gate_b.data[r] += d_gate_pre;
    grads.hw_b.data[r] += d_hidden_pre;
    double* ggw = grads.hw_gate_w.row(r);
    double* ghw = grads.hw_w.row(r);
    const double* pgw = params.hw_gate_w.row(r);
    const double* phw = params.hw_w.row(r);
    for (std::size_t k = 0; k < D; ++k) {
      ggw[k] += d_gate_pre * fw.pooled[k];
      ghw[k] += d_hidden_pre * fw.pooled[k];
      d_pooled[k] += d_gate_pre * pgw[k] + d_hidden_pre * phw[k];
    }
  }
  for (std::size_t wi = 0; wi < params.windows.size(); ++wi) {
    const std::size_t w = static_cast<std::size_t>(params.windows[wi]);
    for (std::size_t f = 0; f < F; ++f) {
      const std::size_t d = wi * F + f;
      if (fw.argmax[d] < 0 || fw.pooled[d] <= 0.0 || d_pooled[d] == 0.0) continue;
      const double g = d_pooled[d];
      const std::size_t pos = static_cast<std::size_t>(fw.argmax[d]);
      grads.conv_b[wi].data[f] += g;
      double* gw = grads.conv_w[wi].row(f);
      const double* pw = params.conv_w[wi].row(f);
      for (std::size_t j = 0; j < w; ++j) {
        const std::size_t token = static_cast<std::size_t>(fw.tokens[pos + j]);
        const double* x = params.embedding.row(token);
        double* gx = grads.embedding.row(token);
        for (std::size_t k = 0; k < E; ++k) {
          gw[j * E + k] += g * x[k];
          gx[k] += g * pw[j * E + k];
        }
      }
    }
  }
}

}  // namespace

double critic_backward(const CriticParams& params, std::span<const int> sequence, int pad_to, double d_score,
                       CriticParams& grads) {
  const Forward fw = forward(params, projection_table(params), sequence, pad_to);
  backward_one(params, fw, d_score, grads);
  return fw.score;
}

std::vector<double> critic_backward_batch(const CriticParams& params, const std::vector<std::vector<int>>& sequences,
                                          int pad_to, std::span<const double> d_scores, CriticParams& grads) {
  if (d_scores.size() != sequences.size()) throw Error(Errc::ShapeMismatch, "one score gradient per sequence");
  const auto table = projection_table(params);
  std::vector<double> scores;
  scores.reserve(sequences.size());
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const Forward fw = forward(params, table, sequences[i], pad_to);
    backward_one(params, fw, d_scores[i], grads);
    scores.push_back(fw.score);
  }
  return scores;
}

}  // namespace adseqgan::neural
