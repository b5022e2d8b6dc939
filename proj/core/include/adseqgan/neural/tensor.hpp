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
#include <functional>
#include <string>
#include <vector>

namespace adseqgan {
class Rng;
}

namespace adseqgan::neural {

/// Dense row-major parameter tensor (rank 1 or 2).
struct Tensor {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 1;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::string name, std::size_t rows, std::size_t cols = 1)
      : name(std::move(name)), rows(rows), cols(cols), data(rows * cols, 0.0) {}

  std::size_t size() const noexcept { return data.size(); }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  const double* row(std::size_t r) const { return data.data() + r * cols; }
  double* row(std::size_t r) { return data.data() + r * cols; }
  bool same_shape(const Tensor& o) const noexcept { return rows == o.rows && cols == o.cols; }
  void fill(double v);
  void fill_uniform(Rng& rng, double scale);
  void fill_normal(Rng& rng, double stddev);

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

using TensorRefs = std::vector<Tensor*>;
using ConstTensorRefs = std::vector<const Tensor*>;

bool all_finite(const ConstTensorRefs& tensors);
double global_norm(const ConstTensorRefs& tensors);
/// Scales gradients so their global norm is at most max_norm; returns the pre-clip norm.
double clip_global_norm(const TensorRefs& grads, double max_norm);
void zero(const TensorRefs& tensors);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  long long step = 0;

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

AdamState make_adam_state(const ConstTensorRefs& params);

/// One bias-corrected Adam update; increments state.step first.
void adam_step(const TensorRefs& params, const ConstTensorRefs& grads, AdamState& state, const AdamConfig& config);

/// Clamp every element into [-c, c].
void clip_weights(const TensorRefs& params, double c);

double max_abs(const ConstTensorRefs& tensors);

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t checked = 0;
};

/// Central finite differences of loss() against analytic gradients, element by element.
/// Relative error uses max(|a|, |n|, floor) as the denominator.
GradCheckResult check_gradients(const TensorRefs& params, const ConstTensorRefs& analytic,
                                const std::function<double()>& loss, double h = 1e-4, double floor = 1e-6);

}  // namespace adseqgan::neural
