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

#include "mpt/model/model.hpp"

#include <string>

#include "mpt/diff/ops.hpp"
#include "mpt/encode/motion_prompt.hpp"
#include "mpt/encode/patch_embed.hpp"
#include "mpt/error.hpp"
#include "mpt/model/adapter.hpp"
#include "mpt/model/transformer.hpp"

namespace mpt::model {

using diff::Tensor;
namespace ops = diff;

Tensor make_prompts(const ModelInput& input, const ModelParams& params) {
  if (params.has_prompt_generator) {
    const auto& gen = params.prompt_generator;
    return encode::gaussian_tokenize(encode::embed_motion(input.taps, gen), gen);
  }
  return params.free_prompts;
}

encode::TokenBatch embed_input(const ModelInput& input, const ModelParams& params) {
  const auto embedded = encode::patch_embed(input.patches, params.backbone.embed);
  return encode::build_token_batch(embedded.cls, embedded.vision, make_prompts(input, params));
}

Tensor forward(const ModelInput& input, const ModelParams& params, ForwardTrace* trace) {
  const auto& c = params.config;
  encode::TokenBatch tokens = embed_input(input, params);
  if (trace) trace->input = tokens;
  for (std::size_t l = 0; l < params.backbone.layers.size(); ++l) {
    tokens = transformer_layer(tokens, params.backbone.layers[l], c.heads);
    if (!params.group_adapters.empty()) tokens = group_adapt(tokens, params.group_adapters[l], c.adapter_mode);
    if (!params.primitive_adapters.empty()) tokens = primitive_adapt(tokens, params.primitive_adapters[l]);
    if (trace) trace->layers.push_back(tokens);
  }
  const Tensor cls = ops::slice_rows(tokens.tokens, tokens.cls.begin, tokens.cls.end);
  const Tensor normed = ops::layernorm(cls, params.backbone.final_gain, params.backbone.final_bias);
  return ops::add_row(ops::matmul(normed, params.head_weight), params.head_bias);
}

Tensor forward(std::span<const ModelInput> inputs, const ModelParams& params) {
  if (inputs.empty()) throw ShapeError("forward: empty batch");
  std::vector<Tensor> rows;
  rows.reserve(inputs.size());
  for (const auto& in : inputs) rows.push_back(forward(in, params));
  return ops::concat_rows(rows);
}

Tensor cross_entropy(const Tensor& logits, std::span<const std::size_t> labels) {
  if (logits.rank() != 2 || logits.rows() != labels.size()) {
    throw ShapeError("cross_entropy: " + std::to_string(labels.size()) + " labels for logits " +
                     diff::shape_string(logits.shape()));
  }
  const std::size_t B = logits.rows(), K = logits.cols();
  std::vector<double> onehot(B * K, 0.0);
  for (std::size_t b = 0; b < B; ++b) {
    if (labels[b] >= K) {
      throw DataError("cross_entropy: label " + std::to_string(labels[b]) + " is not below " + std::to_string(K));
    }
    onehot[b * K + labels[b]] = 1.0;
  }
  const Tensor picked = ops::sum(ops::mul(logits, Tensor::from({B, K}, std::move(onehot))));
  const Tensor total = ops::sub(ops::sum(ops::logsumexp(logits, 1)), picked);
  return ops::scale(total, 1.0 / static_cast<double>(B));
}

std::vector<std::size_t> argmax_rows(const Tensor& logits) {
  std::vector<std::size_t> out(logits.rows(), 0);
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    for (std::size_t c = 1; c < logits.cols(); ++c) {
      if (logits.at(r, c) > logits.at(r, out[r])) out[r] = c;
    }
  }
  return out;
}

}  // namespace mpt::model
