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

#include "mpt/model/transformer.hpp"

#include <cmath>
#include <string>

#include "mpt/diff/ops.hpp"
#include "mpt/error.hpp"

namespace mpt::model {

using diff::Tensor;
namespace ops = diff;

encode::TokenBatch transformer_layer(const encode::TokenBatch& tokens, const LayerParams& layer, std::size_t heads,
                                     std::vector<Tensor>* attention) {
  const std::size_t D = tokens.dim();
  if (layer.qkv_weight.rows() != D || heads == 0 || D % heads != 0) {
    throw ShapeError("transformer_layer: width " + std::to_string(D) + " does not match the layer");
  }
  const std::size_t dh = D / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  const Tensor& x = tokens.tokens;
  const Tensor h = ops::layernorm(x, layer.norm1_gain, layer.norm1_bias);
  const Tensor qkv = ops::add_row(ops::matmul(h, layer.qkv_weight), layer.qkv_bias);

  std::vector<Tensor> outputs;
  outputs.reserve(heads);
  for (std::size_t i = 0; i < heads; ++i) {
    const Tensor q = ops::slice_cols(qkv, i * dh, (i + 1) * dh);
    const Tensor k = ops::slice_cols(qkv, D + i * dh, D + (i + 1) * dh);
    const Tensor v = ops::slice_cols(qkv, 2 * D + i * dh, 2 * D + (i + 1) * dh);
    const Tensor probs = ops::softmax(ops::scale(ops::matmul(q, ops::transpose(k)), scale), 1);
    if (attention) attention->push_back(probs);
    outputs.push_back(ops::matmul(probs, v));
  }
  const Tensor attended = ops::add_row(ops::matmul(ops::concat_cols(outputs), layer.out_weight), layer.out_bias);
  const Tensor x1 = ops::add(x, attended);

  const Tensor h2 = ops::layernorm(x1, layer.norm2_gain, layer.norm2_bias);
  const Tensor hidden = ops::gelu(ops::add_row(ops::matmul(h2, layer.fc1_weight), layer.fc1_bias));
  const Tensor ffn = ops::add_row(ops::matmul(hidden, layer.fc2_weight), layer.fc2_bias);
  return tokens.with_tokens(ops::add(x1, ffn));
}

}  // namespace mpt::model
