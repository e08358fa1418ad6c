/*
 * Copyright 2026 The MPT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "mpt/diff/tensor.hpp"

namespace mpt::harness {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adam with bias correction over a fixed list of trainable leaves.
class Adam {
 public:
  Adam(std::vector<diff::Tensor> params, AdamConfig config = {});

  /// Resets every parameter's gradient to zeros.
  void zero_grad();
  /// Applies one update. Throws mpt::Error if a parameter has no gradient.
  void step();

  std::size_t steps() const { return steps_; }
  const AdamConfig& config() const { return config_; }
  const std::vector<diff::Tensor>& params() const { return params_; }

 private:
  std::vector<diff::Tensor> params_;
  AdamConfig config_;
  std::vector<std::vector<double>> m_, v_;
  std::size_t steps_ = 0;
};

}  // namespace mpt::harness
