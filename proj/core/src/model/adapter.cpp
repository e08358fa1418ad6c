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

#include "mpt/model/adapter.hpp"

#include "mpt/diff/ops.hpp"

namespace mpt::model {

using diff::Tensor;
namespace ops = diff;

Tensor adapter_branch(const Tensor& x, const AdapterBranch& branch) {
  return ops::matmul(ops::gelu(ops::matmul(x, branch.down)), branch.up);
}

encode::TokenBatch group_adapt(const encode::TokenBatch& tokens, const std::array<AdapterBranch, 3>& branches,
                               AdapterMode mode) {
  const encode::GroupRange ranges[3] = {tokens.cls, tokens.vision, tokens.prompts};
  std::vector<Tensor> parts;
  for (std::size_t g = 0; g < 3; ++g) {
    const auto& r = ranges[g];
    if (r.empty()) continue;
    const Tensor x = ops::slice_rows(tokens.tokens, r.begin, r.end);
    if (mode == AdapterMode::MeanBroadcast) {
      const Tensor correction = adapter_branch(ops::mean_rows(x), branches[g]);
      parts.push_back(ops::add(x, ops::broadcast_rows(correction, r.size())));
    } else {
      parts.push_back(ops::add(x, adapter_branch(x, branches[g])));
    }
  }
  return tokens.with_tokens(ops::concat_rows(parts));
}

encode::TokenBatch primitive_adapt(const encode::TokenBatch& tokens, const AdapterBranch& branch) {
  return tokens.with_tokens(ops::add(tokens.tokens, adapter_branch(tokens.tokens, branch)));
}

}  // namespace mpt::model
