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


#include <benchmark/benchmark.h>

#include <random>

#include "mpt/diff/graph.hpp"
#include "mpt/diff/ops.hpp"
#include "mpt/diff/tensor.hpp"

namespace {

using mpt::diff::Tensor;

Tensor random_tensor(std::mt19937_64& rng, std::size_t rows, std::size_t cols, bool grad = false) {
  std::normal_distribution<double> dist;
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = dist(rng);
  return Tensor::from({rows, cols}, std::move(v), grad);
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const Tensor a = random_tensor(rng, n, n), b = random_tensor(rng, n, n);
  mpt::diff::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(mpt::diff::matmul(a, b));
  state.SetItemsProcessed(state.iterations() * 2 * n * n * n);
}
BENCHMARK(BM_Matmul)->Arg(16)->Arg(64)->Arg(128);

// Token-sized attention scores: (N x D) (D x N) then a row softmax.
void BM_AttentionScores(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Tensor q = random_tensor(rng, 70, 16), k = random_tensor(rng, 70, 16);
  mpt::diff::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(mpt::diff::softmax(mpt::diff::matmul(q, mpt::diff::transpose(k))));
}
BENCHMARK(BM_AttentionScores);

void BM_LayerNormBackward(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Tensor x = random_tensor(rng, 70, 64, true);
  const Tensor gain = Tensor::full({1, 64}, 1.0), bias = Tensor::zeros({1, 64});
  for (auto _ : state) {
    x.clear_grad();
    mpt::diff::backward(mpt::diff::sum(mpt::diff::square(mpt::diff::layernorm(x, gain, bias))));
  }
}
BENCHMARK(BM_LayerNormBackward);

}  // namespace
