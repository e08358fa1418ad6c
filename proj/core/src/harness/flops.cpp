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

#include "mpt/harness/flops.hpp"

namespace mpt::harness {

using model::Variant;

namespace {

bool has_generator(Variant v) {
  return v == Variant::PromptOnly || v == Variant::PrimitiveAdapter || v == Variant::FullMpt;
}

bool has_prompts(Variant v) { return has_generator(v) || v == Variant::VptRandomPrompts; }

bool has_group_adapter(Variant v) {
  return v == Variant::AdapterOnly || v == Variant::VptRandomPrompts || v == Variant::FullMpt;
}

}  // namespace

std::uint64_t token_count(const model::ModelConfig& c, Variant v) {
  return 1 + c.vision_tokens() + (has_prompts(v) ? c.prompts : 0);
}

FlopBreakdown estimate_flops(const model::ModelConfig& c, Variant v) {
  using U = std::uint64_t;
  const U D = c.dim, N = token_count(c, v), L = c.layers, hidden = c.mlp_ratio * c.dim, r = c.bottleneck();
  const U T = c.frames, Np = c.prompts;
  FlopBreakdown f;
  f.embedding = 2 * U{c.vision_tokens()} * c.patch_dim() * D;
  if (has_generator(v)) {
    const U conv = T * c.height * c.width * 9 * c.channels * D;
    const U mixing = 2 * Np * T * D;  // means and variances
    const U density = Np * T * D;
    f.prompts = 2 * (conv + mixing + density);
  }
  f.attention = L * 2 * (N * D * 3 * D + 2 * N * N * D + N * D * D);
  f.ffn = L * 2 * N * (D * hidden + hidden * D);
  if (has_group_adapter(v)) {
    const U groups = has_prompts(v) ? 3 : 2;
    const U rows = c.adapter_mode == model::AdapterMode::MeanBroadcast ? groups : N;
    f.adapters = L * 2 * rows * 2 * D * r;
  } else if (v == Variant::PrimitiveAdapter) {
    f.adapters = L * 2 * N * 2 * D * r;
  }
  f.head = 2 * D * c.classes;
  return f;
}

}  // namespace mpt::harness
