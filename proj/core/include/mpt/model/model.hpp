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

#include <span>
#include <vector>

#include "mpt/diff/tensor.hpp"
#include "mpt/encode/token_batch.hpp"
#include "mpt/model/params.hpp"

namespace mpt::model {

/// Per-sample constants produced by the preprocessing pipeline.
struct ModelInput {
  diff::Tensor patches;  // N_v x (P*P*C), from the dynamic image
  diff::Tensor taps;     // T x (9*C), from the magnified motion
};

/// Optional intermediate values of one forward pass.
struct ForwardTrace {
  encode::TokenBatch input;
  std::vector<encode::TokenBatch> layers;  // after each layer and its adapter
};

/// Prompt tokens for the configured prompt source, or an empty tensor.
diff::Tensor make_prompts(const ModelInput& input, const ModelParams& params);

encode::TokenBatch embed_input(const ModelInput& input, const ModelParams& params);

/// Logits (1 x K) for one sample.
diff::Tensor forward(const ModelInput& input, const ModelParams& params, ForwardTrace* trace = nullptr);

/// Logits (B x K); row b equals forward(inputs[b]).
diff::Tensor forward(std::span<const ModelInput> inputs, const ModelParams& params);

/// Mean over rows of logsumexp(logits) - logits[label].
diff::Tensor cross_entropy(const diff::Tensor& logits, std::span<const std::size_t> labels);

/// Row-wise argmax, first maximum on ties.
std::vector<std::size_t> argmax_rows(const diff::Tensor& logits);

}  // namespace mpt::model
