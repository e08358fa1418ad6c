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

#include "mpt/model/params.hpp"

#include <cmath>
#include <random>

#include "mpt/random.hpp"

namespace mpt::model {

using diff::Tensor;

namespace {

Tensor normal(Rng& rng, diff::Shape shape, double stddev, double mean = 0.0) {
  std::normal_distribution<double> dist(mean, stddev);
  std::vector<double> v(diff::numel_of(shape));
  for (auto& x : v) x = dist(rng);
  return Tensor::from(std::move(shape), std::move(v));
}

Tensor uniform(Rng& rng, diff::Shape shape, double bound) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> v(diff::numel_of(shape));
  for (auto& x : v) x = dist(rng);
  return Tensor::from(std::move(shape), std::move(v));
}

Tensor trainable(Tensor t) {
  t.set_requires_grad(true);
  return t;
}

AdapterBranch init_branch(Rng& rng, const ModelConfig& c) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(c.dim));
  return {trainable(uniform(rng, {c.dim, c.bottleneck()}, bound)),
          trainable(Tensor::zeros({c.bottleneck(), c.dim}))};
}

encode::PromptGenParams init_prompt_generator(Rng& rng, const ModelConfig& c) {
  const std::size_t fan_in = 9 * c.channels;
  encode::PromptGenParams p;
  p.conv_weight = trainable(uniform(rng, {fan_in, c.dim}, 1.0 / std::sqrt(static_cast<double>(fan_in))));
  p.conv_bias = trainable(Tensor::zeros({1, c.dim}));
  p.mean_weight = trainable(normal(rng, {c.prompts, c.frames}, c.init_std, 1.0 / static_cast<double>(c.frames)));
  p.var_weight = trainable(normal(rng, {c.prompts, c.frames}, c.init_std));
  p.token_scale = trainable(Tensor::full({1, c.dim}, 1.0));
  return p;
}

void append(std::vector<NamedTensor>& out, const std::string& prefix, const AdapterBranch& b) {
  out.emplace_back(prefix + ".down", b.down);
  out.emplace_back(prefix + ".up", b.up);
}

}  // namespace

BackboneParams init_backbone(const ModelConfig& c, std::uint64_t seed) {
  c.validate();
  Rng rng(derive_seed({seed, 0xb0b}));
  const double s = c.init_std;
  const std::size_t D = c.dim, hidden = c.mlp_ratio * c.dim;
  BackboneParams b;
  b.embed.patch = c.patch;
  b.embed.projection = normal(rng, {c.patch_dim(), D}, s);
  b.embed.bias = Tensor::zeros({1, D});
  b.embed.positions = normal(rng, {c.vision_tokens(), D}, s);
  b.embed.cls = normal(rng, {1, D}, s);
  for (std::size_t l = 0; l < c.layers; ++l) {
    LayerParams p;
    p.norm1_gain = Tensor::full({1, D}, 1.0);
    p.norm1_bias = Tensor::zeros({1, D});
    p.qkv_weight = normal(rng, {D, 3 * D}, s);
    p.qkv_bias = Tensor::zeros({1, 3 * D});
    p.out_weight = normal(rng, {D, D}, s);
    p.out_bias = Tensor::zeros({1, D});
    p.norm2_gain = Tensor::full({1, D}, 1.0);
    p.norm2_bias = Tensor::zeros({1, D});
    p.fc1_weight = normal(rng, {D, hidden}, s);
    p.fc1_bias = Tensor::zeros({1, hidden});
    p.fc2_weight = normal(rng, {hidden, D}, s);
    p.fc2_bias = Tensor::zeros({1, D});
    b.layers.push_back(std::move(p));
  }
  b.final_gain = Tensor::full({1, D}, 1.0);
  b.final_bias = Tensor::zeros({1, D});
  return b;
}

BackboneParams clone_backbone(const BackboneParams& src, bool requires_grad) {
  BackboneParams b = src;
  auto copy = [requires_grad](const Tensor& t) {
    Tensor c = t.detach();
    c.set_requires_grad(requires_grad);
    return c;
  };
  b.embed.projection = copy(src.embed.projection);
  b.embed.bias = copy(src.embed.bias);
  b.embed.positions = copy(src.embed.positions);
  b.embed.cls = copy(src.embed.cls);
  for (std::size_t l = 0; l < src.layers.size(); ++l) {
    const LayerParams& s = src.layers[l];
    LayerParams& d = b.layers[l];
    d.norm1_gain = copy(s.norm1_gain);
    d.norm1_bias = copy(s.norm1_bias);
    d.qkv_weight = copy(s.qkv_weight);
    d.qkv_bias = copy(s.qkv_bias);
    d.out_weight = copy(s.out_weight);
    d.out_bias = copy(s.out_bias);
    d.norm2_gain = copy(s.norm2_gain);
    d.norm2_bias = copy(s.norm2_bias);
    d.fc1_weight = copy(s.fc1_weight);
    d.fc1_bias = copy(s.fc1_bias);
    d.fc2_weight = copy(s.fc2_weight);
    d.fc2_bias = copy(s.fc2_bias);
  }
  b.final_gain = copy(src.final_gain);
  b.final_bias = copy(src.final_bias);
  return b;
}

ModelParams make_variant(const ModelConfig& c, Variant variant, const BackboneParams& backbone, std::uint64_t seed) {
  c.validate();
  Rng rng(derive_seed({seed, 0xada, static_cast<std::uint64_t>(variant)}));
  ModelParams p;
  p.config = c;
  p.variant = variant;
  p.backbone = variant == Variant::FullFinetune ? clone_backbone(backbone, true) : backbone;

  const bool generator = variant == Variant::PromptOnly || variant == Variant::PrimitiveAdapter ||
                         variant == Variant::FullMpt;
  const bool group = variant == Variant::AdapterOnly || variant == Variant::VptRandomPrompts ||
                     variant == Variant::FullMpt;
  if (generator) {
    p.has_prompt_generator = true;
    p.prompt_generator = init_prompt_generator(rng, c);
  }
  if (variant == Variant::VptRandomPrompts) p.free_prompts = trainable(normal(rng, {c.prompts, c.dim}, c.init_std));
  if (group) {
    for (std::size_t l = 0; l < c.layers; ++l) {
      std::array<AdapterBranch, 3> branches;
      for (auto& br : branches) br = init_branch(rng, c);
      p.group_adapters.push_back(std::move(branches));
    }
  }
  if (variant == Variant::PrimitiveAdapter) {
    for (std::size_t l = 0; l < c.layers; ++l) p.primitive_adapters.push_back(init_branch(rng, c));
  }
  p.head_weight = trainable(Tensor::zeros({c.dim, c.classes}));
  p.head_bias = trainable(Tensor::zeros({1, c.classes}));
  return p;
}

std::vector<NamedTensor> named_tensors(const BackboneParams& b) {
  std::vector<NamedTensor> out;
  out.emplace_back("embed.projection", b.embed.projection);
  out.emplace_back("embed.bias", b.embed.bias);
  out.emplace_back("embed.positions", b.embed.positions);
  out.emplace_back("embed.cls", b.embed.cls);
  for (std::size_t l = 0; l < b.layers.size(); ++l) {
    const std::string pre = "layers." + std::to_string(l) + ".";
    const LayerParams& p = b.layers[l];
    out.emplace_back(pre + "norm1.gain", p.norm1_gain);
    out.emplace_back(pre + "norm1.bias", p.norm1_bias);
    out.emplace_back(pre + "attn.qkv.weight", p.qkv_weight);
    out.emplace_back(pre + "attn.qkv.bias", p.qkv_bias);
    out.emplace_back(pre + "attn.out.weight", p.out_weight);
    out.emplace_back(pre + "attn.out.bias", p.out_bias);
    out.emplace_back(pre + "norm2.gain", p.norm2_gain);
    out.emplace_back(pre + "norm2.bias", p.norm2_bias);
    out.emplace_back(pre + "mlp.fc1.weight", p.fc1_weight);
    out.emplace_back(pre + "mlp.fc1.bias", p.fc1_bias);
    out.emplace_back(pre + "mlp.fc2.weight", p.fc2_weight);
    out.emplace_back(pre + "mlp.fc2.bias", p.fc2_bias);
  }
  out.emplace_back("final_norm.gain", b.final_gain);
  out.emplace_back("final_norm.bias", b.final_bias);
  return out;
}

std::vector<NamedTensor> named_tensors(const ModelParams& p) {
  auto out = named_tensors(p.backbone);
  if (p.has_prompt_generator) {
    const auto& g = p.prompt_generator;
    out.emplace_back("prompt.conv.weight", g.conv_weight);
    out.emplace_back("prompt.conv.bias", g.conv_bias);
    out.emplace_back("prompt.mean_weight", g.mean_weight);
    out.emplace_back("prompt.var_weight", g.var_weight);
    out.emplace_back("prompt.token_scale", g.token_scale);
  }
  if (p.free_prompts) out.emplace_back("prompt.free", p.free_prompts);
  static constexpr const char* kGroupNames[] = {"cls", "vision", "prompt"};
  for (std::size_t l = 0; l < p.group_adapters.size(); ++l) {
    for (std::size_t g = 0; g < 3; ++g) {
      append(out, "adapter." + std::to_string(l) + "." + kGroupNames[g], p.group_adapters[l][g]);
    }
  }
  for (std::size_t l = 0; l < p.primitive_adapters.size(); ++l) {
    append(out, "adapter." + std::to_string(l), p.primitive_adapters[l]);
  }
  out.emplace_back("head.weight", p.head_weight);
  out.emplace_back("head.bias", p.head_bias);
  return out;
}

std::vector<Tensor> trainable_tensors(const ModelParams& p) {
  std::vector<Tensor> out;
  for (const auto& [name, t] : named_tensors(p)) {
    if (t.requires_grad()) out.push_back(t);
  }
  return out;
}

std::vector<Tensor> frozen_tensors(const ModelParams& p) {
  std::vector<Tensor> out;
  for (const auto& [name, t] : named_tensors(p)) {
    if (!t.requires_grad()) out.push_back(t);
  }
  return out;
}

std::size_t count_tunable(const ModelParams& p) {
  std::size_t n = 0;
  for (const auto& t : trainable_tensors(p)) n += t.numel();
  return n;
}

}  // namespace mpt::model
