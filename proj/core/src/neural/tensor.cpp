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

#include "adseqgan/neural/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "adseqgan/common/error.hpp"
#include "adseqgan/common/rng.hpp"

namespace adseqgan::neural {

void Tensor::fill(double v) { std::fill(data.begin(), data.end(), v); }

void Tensor::fill_uniform(Rng& rng, double scale) {
  for (double& x : data) x = (2.0 * rng.uniform() - 1.0) * scale;
}

void Tensor::fill_normal(Rng& rng, double stddev) {
  for (double& x : data) x = rng.normal() * stddev;
}

bool all_finite(const ConstTensorRefs& tensors) {
  for (const Tensor* t : tensors) {
    for (double x : t->data) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

double global_norm(const ConstTensorRefs& tensors) {
  double sum = 0.0;
  for (const Tensor* t : tensors) {
    for (double x : t->data) sum += x * x;
  }
  return std::sqrt(sum);
}

double clip_global_norm(const TensorRefs& grads, double max_norm) {
  const double norm = global_norm(ConstTensorRefs(grads.begin(), grads.end()));
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (Tensor* t : grads) {
      for (double& x : t->data) x *= s;
    }
  }
  return norm;
}

void zero(const TensorRefs& tensors) {
  for (Tensor* t : tensors) t->fill(0.0);
}

AdamState make_adam_state(const ConstTensorRefs& params) {
  AdamState s;
  for (const Tensor* p : params) {
    s.m.emplace_back(p->name, p->rows, p->cols);
    s.v.emplace_back(p->name, p->rows, p->cols);
  }
  return s;
}

void adam_step(const TensorRefs& params, const ConstTensorRefs& grads, AdamState& state, const AdamConfig& config) {
  if (params.size() != grads.size() || params.size() != state.m.size() || params.size() != state.v.size()) {
    throw Error(Errc::ShapeMismatch, "adam: parameter, gradient and moment lists differ in length");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(*grads[i]) || !params[i]->same_shape(state.m[i]) ||
        !params[i]->same_shape(state.v[i])) {
      throw Error(Errc::ShapeMismatch, "adam: shape mismatch at tensor " + params[i]->name);
    }
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    double* w = params[i]->data.data();
    const double* g = grads[i]->data.data();
    double* m = state.m[i].data.data();
    double* v = state.v[i].data.data();
    const std::size_t n = params[i]->size();
    for (std::size_t k = 0; k < n; ++k) {
      m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * g[k];
      v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * g[k] * g[k];
      const double mhat = m[k] / c1;
      const double vhat = v[k] / c2;
      w[k] -= config.lr * mhat / (std::sqrt(vhat) + config.eps);
    }
  }
}

void clip_weights(const TensorRefs& params, double c) {
  for (Tensor* t : params) {
    for (double& x : t->data) x = std::clamp(x, -c, c);
  }
}

double max_abs(const ConstTensorRefs& tensors) {
  double m = 0.0;
  for (const Tensor* t : tensors) {
    for (double x : t->data) m = std::max(m, std::abs(x));
  }
  return m;
}

GradCheckResult check_gradients(const TensorRefs& params, const ConstTensorRefs& analytic,
                                const std::function<double()>& loss, double h, double floor) {
  if (params.size() != analytic.size()) throw Error(Errc::ShapeMismatch, "gradient check: list lengths differ");
  GradCheckResult result;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    if (!p.same_shape(*analytic[i])) throw Error(Errc::ShapeMismatch, "gradient check: shape of " + p.name);
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double saved = p.data[k];
      p.data[k] = saved + h;
      const double up = loss();
      p.data[k] = saved - h;
      const double down = loss();
      p.data[k] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[i]->data[k];
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
      ++result.checked;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_tensor = p.name;
        result.worst_index = k;
        result.analytic = a;
        result.numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace adseqgan::neural
