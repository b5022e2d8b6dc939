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

#include "adseqgan/neural/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"

namespace adseqgan::neural {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_token(const GeneratorParams& p, int token) {
  if (token < 0 || token >= p.vocab) {
    throw Error(Errc::IndexOutOfVocab, "token " + std::to_string(token) + " outside vocabulary of " +
                                           std::to_string(p.vocab));
  }
}

bool emittable(const GeneratorParams& p, int token) {
  return p.emittable.empty() || p.emittable[static_cast<std::size_t>(token)] != 0;
}

// Activations kept for the backward pass.
struct StepCache {
  int input = 0;
  std::vector<double> i, f, g, o, c, tanh_c, h;
  std::vector<double> probs;
};

void lstm_forward(const GeneratorParams& p, const double* h_prev, const double* c_prev, int token,
                  std::vector<double>& i, std::vector<double>& f, std::vector<double>& g, std::vector<double>& o,
                  std::vector<double>& c, std::vector<double>& tanh_c, std::vector<double>& h) {
  const std::size_t E = static_cast<std::size_t>(p.d_emb);
  const std::size_t H = static_cast<std::size_t>(p.d_hid);
  const double* x = p.embedding.row(static_cast<std::size_t>(token));
  i.resize(H);
  f.resize(H);
  g.resize(H);
  o.resize(H);
  c.resize(H);
  tanh_c.resize(H);
  h.resize(H);
  std::vector<double>* gates[4] = {&i, &f, &g, &o};
  for (std::size_t block = 0; block < 4; ++block) {
    auto& out = *gates[block];
    for (std::size_t u = 0; u < H; ++u) {
      const std::size_t r = block * H + u;
      const double* w = p.w_gates.row(r);
      double a = p.b_gates.data[r];
      for (std::size_t k = 0; k < E; ++k) a += w[k] * x[k];
      for (std::size_t k = 0; k < H; ++k) a += w[E + k] * h_prev[k];
      out[u] = block == 2 ? std::tanh(a) : sigmoid(a);
    }
  }
  for (std::size_t u = 0; u < H; ++u) {
    c[u] = f[u] * c_prev[u] + i[u] * g[u];
    tanh_c[u] = std::tanh(c[u]);
    h[u] = o[u] * tanh_c[u];
  }
}

void project(const GeneratorParams& p, const std::vector<double>& h, std::vector<double>& logits) {
  const std::size_t H = static_cast<std::size_t>(p.d_hid);
  logits.resize(static_cast<std::size_t>(p.vocab));
  for (std::size_t v = 0; v < logits.size(); ++v) {
    const double* w = p.w_out.row(v);
    double a = p.b_out.data[v];
    for (std::size_t k = 0; k < H; ++k) a += w[k] * h[k];
    logits[v] = a;
  }
}

}  // namespace

TensorRefs GeneratorParams::tensors() { return {&embedding, &w_gates, &b_gates, &w_out, &b_out}; }

ConstTensorRefs GeneratorParams::tensors() const { return {&embedding, &w_gates, &b_gates, &w_out, &b_out}; }

GeneratorParams GeneratorParams::zeros_like() const {
  GeneratorParams z = *this;
  for (Tensor* t : z.tensors()) t->fill(0.0);
  return z;
}

int GeneratorParams::start_token(int label) const {
  if (label < 0 || label >= class_count()) {
    throw Error(Errc::UnknownClass, "class label " + std::to_string(label) + " has no start token");
  }
  return start_tokens[static_cast<std::size_t>(label)];
}

GeneratorParams make_generator(const GeneratorShape& shape) {
  if (shape.vocab < 1 || shape.d_emb < 1 || shape.d_hid < 1) {
    throw Error(Errc::InvalidConfig, "generator dimensions must be positive");
  }
  if (!shape.emittable.empty() && shape.emittable.size() != static_cast<std::size_t>(shape.vocab)) {
    throw Error(Errc::ShapeMismatch, "emittable mask length differs from vocabulary");
  }
  GeneratorParams p;
  p.vocab = shape.vocab;
  p.d_emb = shape.d_emb;
  p.d_hid = shape.d_hid;
  p.eos_token = shape.eos_token;
  p.start_tokens = shape.start_tokens;
  p.emittable = shape.emittable;
  const auto V = static_cast<std::size_t>(shape.vocab);
  const auto E = static_cast<std::size_t>(shape.d_emb);
  const auto H = static_cast<std::size_t>(shape.d_hid);
  p.embedding = Tensor("gen.embedding", V, E);
  p.w_gates = Tensor("gen.w_gates", 4 * H, E + H);
  p.b_gates = Tensor("gen.b_gates", 4 * H);
  p.w_out = Tensor("gen.w_out", V, H);
  p.b_out = Tensor("gen.b_out", V);
  for (int t : p.start_tokens) check_token(p, t);
  return p;
}

GeneratorParams init_generator(const GeneratorShape& shape, std::uint64_t seed) {
  GeneratorParams p = make_generator(shape);
  Rng rng(seed);
  p.embedding.fill_normal(rng, 0.1);
  p.w_gates.fill_uniform(rng, 1.0 / std::sqrt(static_cast<double>(shape.d_emb + shape.d_hid)));
  p.w_out.fill_uniform(rng, 1.0 / std::sqrt(static_cast<double>(shape.d_hid)));
  const auto H = static_cast<std::size_t>(shape.d_hid);
  for (std::size_t u = 0; u < H; ++u) p.b_gates.data[H + u] = 1.0;
  return p;
}

GeneratorState GeneratorState::zeros(int d_hid) {
  return {std::vector<double>(static_cast<std::size_t>(d_hid), 0.0),
          std::vector<double>(static_cast<std::size_t>(d_hid), 0.0)};
}

StepOutput generator_step(const GeneratorParams& params, const GeneratorState& state, int token) {
  check_token(params, token);
  if (state.h.size() != static_cast<std::size_t>(params.d_hid) || state.c.size() != state.h.size()) {
    throw Error(Errc::ShapeMismatch, "generator state width differs from hidden size");
  }
  StepOutput out;
  std::vector<double> i, f, g, o, tanh_c;
  lstm_forward(params, state.h.data(), state.c.data(), token, i, f, g, o, out.state.c, tanh_c, out.state.h);
  project(params, out.state.h, out.logits);
  return out;
}

std::vector<double> masked_softmax(const GeneratorParams& params, std::span<const double> logits) {
  std::vector<double> p(logits.size(), 0.0);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < logits.size(); ++v) {
    if (emittable(params, static_cast<int>(v))) mx = std::max(mx, logits[v]);
  }
  double sum = 0.0;
  for (std::size_t v = 0; v < logits.size(); ++v) {
    if (emittable(params, static_cast<int>(v))) {
      p[v] = std::exp(logits[v] - mx);
      sum += p[v];
    }
  }
  for (double& x : p) x /= sum;
  return p;
}

int sample_index(std::span<const double> probs, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  int last = -1;
  for (std::size_t v = 0; v < probs.size(); ++v) {
    if (!std::isfinite(probs[v])) throw Error(Errc::NonFiniteLoss, "non-finite sampling probability");
    if (probs[v] <= 0.0) continue;
    acc += probs[v];
    last = static_cast<int>(v);
    if (u < acc) return last;
  }
  return last;  // rounding left u above the accumulated mass
}

StepOutput run_prefix(const GeneratorParams& params, int label, std::span<const int> prefix) {
  StepOutput out = generator_step(params, GeneratorState::zeros(params.d_hid), params.start_token(label));
  for (int t : prefix) out = generator_step(params, out.state, t);
  return out;
}

std::vector<int> complete_sequence(const GeneratorParams& params, std::span<const int> prefix,
                                   const StepOutput& after_prefix, int max_len, Rng& rng) {
  std::vector<int> seq(prefix.begin(), prefix.end());
  if (!seq.empty() && seq.back() == params.eos_token) return seq;
  if (static_cast<int>(seq.size()) >= max_len) return seq;
  StepOutput cur = after_prefix;
  while (true) {
    const auto probs = masked_softmax(params, cur.logits);
    const int token = sample_index(probs, rng);
    seq.push_back(token);
    if (token == params.eos_token || static_cast<int>(seq.size()) >= max_len) break;
    cur = generator_step(params, cur.state, token);
  }
  return seq;
}

std::vector<int> sample_sequence(const GeneratorParams& params, int label, int max_len, Rng& rng) {
  if (max_len < 1) return {};
  return complete_sequence(params, {}, run_prefix(params, label, {}), max_len, rng);
}

std::vector<int> sample_sequence(const GeneratorParams& params, int label, int max_len, std::uint64_t seed) {
  Rng rng(seed);
  return sample_sequence(params, label, max_len, rng);
}

double sequence_log_prob(const GeneratorParams& params, int label, std::span<const int> sequence) {
  for (int t : sequence) check_token(params, t);
  double total = 0.0;
  StepOutput cur = run_prefix(params, label, {});
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const auto probs = masked_softmax(params, cur.logits);
    total += std::log(probs[static_cast<std::size_t>(sequence[t])]);
    if (t + 1 < sequence.size()) cur = generator_step(params, cur.state, sequence[t]);
  }
  return total;
}

double log_prob_backward(const GeneratorParams& params, int label, std::span<const int> sequence,
                         std::span<const double> weights, GeneratorParams& grads) {
  if (weights.size() != sequence.size()) throw Error(Errc::ShapeMismatch, "one weight per token required");
  for (int t : sequence) check_token(params, t);
  const std::size_t T = sequence.size();
  if (T == 0) return 0.0;
  const std::size_t E = static_cast<std::size_t>(params.d_emb);
  const std::size_t H = static_cast<std::size_t>(params.d_hid);
  const std::size_t V = static_cast<std::size_t>(params.vocab);

  std::vector<StepCache> cache(T);
  std::vector<double> zeros(H, 0.0);
  std::vector<double> logits;
  double objective = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    auto& s = cache[t];
    s.input = t == 0 ? params.start_token(label) : sequence[t - 1];
    const double* h_prev = t == 0 ? zeros.data() : cache[t - 1].h.data();
    const double* c_prev = t == 0 ? zeros.data() : cache[t - 1].c.data();
    lstm_forward(params, h_prev, c_prev, s.input, s.i, s.f, s.g, s.o, s.c, s.tanh_c, s.h);
    project(params, s.h, logits);
    s.probs = masked_softmax(params, logits);
    const double p = s.probs[static_cast<std::size_t>(sequence[t])];
    if (!(p > 0.0)) throw Error(Errc::IndexOutOfVocab, "token " + std::to_string(sequence[t]) + " is not emittable");
    objective += weights[t] * std::log(p);
  }

  std::vector<double> dh_next(H, 0.0), dc_next(H, 0.0), dh(H), dc(H), da(4 * H), dz(E + H);
  for (std::size_t t = T; t-- > 0;) {
    const auto& s = cache[t];
    const double w = weights[t];
    dh = dh_next;
    if (w != 0.0) {
      // d(-w log p_y)/dlogit_v = w (p_v - [v = y]) over emittable tokens.
      for (std::size_t v = 0; v < V; ++v) {
        double dl = s.probs[v];
        if (static_cast<int>(v) == sequence[t]) dl -= 1.0;
        if (dl == 0.0) continue;
        dl *= w;
        grads.b_out.data[v] += dl;
        double* gw = grads.w_out.row(v);
        const double* pw = params.w_out.row(v);
        for (std::size_t k = 0; k < H; ++k) {
          gw[k] += dl * s.h[k];
          dh[k] += dl * pw[k];
        }
      }
    }
    const double* c_prev = t == 0 ? zeros.data() : cache[t - 1].c.data();
    for (std::size_t u = 0; u < H; ++u) {
      dc[u] = dh[u] * s.o[u] * (1.0 - s.tanh_c[u] * s.tanh_c[u]) + dc_next[u];
      const double d_o = dh[u] * s.tanh_c[u];
      const double d_i = dc[u] * s.g[u];
      const double d_g = dc[u] * s.i[u];
      const double d_f = dc[u] * c_prev[u];
      da[u] = d_i * s.i[u] * (1.0 - s.i[u]);
      da[H + u] = d_f * s.f[u] * (1.0 - s.f[u]);
      da[2 * H + u] = d_g * (1.0 - s.g[u] * s.g[u]);
      da[3 * H + u] = d_o * s.o[u] * (1.0 - s.o[u]);
      dc_next[u] = dc[u] * s.f[u];
    }
    const double* x = params.embedding.row(static_cast<std::size_t>(s.input));
    const double* h_prev = t == 0 ? zeros.data() : cache[t - 1].h.data();
    std::fill(dz.begin(), dz.end(), 0.0);
    for (std::size_t r = 0; r < 4 * H; ++r) {
      const double d = da[r];
      if (d == 0.0) continue;
      grads.b_gates.data[r] += d;
      double* gw = grads.w_gates.row(r);
      const double* pw = params.w_gates.row(r);
      for (std::size_t k = 0; k < E; ++k) {
        gw[k] += d * x[k];
        dz[k] += d * pw[k];
      }
      for (std::size_t k = 0; k < H; ++k) {
        gw[E + k] += d * h_prev[k];
        dz[E + k] += d * pw[E + k];
      }
    }
    double* ge = grads.embedding.row(static_cast<std::size_t>(s.input));
    for (std::size_t k = 0; k < E; ++k) ge[k] += dz[k];
    for (std::size_t k = 0; k < H; ++k) dh_next[k] = dz[E + k];
  }
  return objective;
}

}  // namespace adseqgan::neural
