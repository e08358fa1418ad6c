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

#include "mpt/diff/graph.hpp"
#include "mpt/encode/rank_pool.hpp"
#include "mpt/harness/experiment.hpp"
#include "mpt/magnify/butterworth.hpp"
#include "mpt/magnify/magnify.hpp"
#include "mpt/model/model.hpp"
#include "mpt/seqio/synthetic.hpp"

namespace {

const mpt::seqio::Sequence& clip() {
  static const auto s = mpt::seqio::SyntheticGenerator(mpt::seqio::SynthConfig{}).generate(0);
  return s;
}

const mpt::harness::Sample& sample() {
  static const auto s = mpt::harness::prepare_sample(clip(), mpt::harness::TrainConfig{});
  return s;
}

void BM_Filtfilt(benchmark::State& state) {
  const mpt::magnify::ButterworthBandpass filter(mpt::magnify::BandpassSpec{});
  std::vector<double> series(static_cast<std::size_t>(state.range(0)));
  for (std::size_t t = 0; t < series.size(); ++t) series[t] = std::sin(0.07 * static_cast<double>(t));
  for (auto _ : state) benchmark::DoNotOptimize(filter.filtfilt(series));
}
BENCHMARK(BM_Filtfilt)->Arg(32)->Arg(256);

void BM_MagnifySequence(benchmark::State& state) {
  mpt::magnify::BandpassSpec band;
  band.fps = clip().fps;
  for (auto _ : state) benchmark::DoNotOptimize(mpt::magnify::magnify_sequence(clip(), 20.0, band));
}
BENCHMARK(BM_MagnifySequence)->Unit(benchmark::kMillisecond);

void BM_RankPool(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mpt::encode::rank_pool(clip()));
}
BENCHMARK(BM_RankPool);

void BM_Forward(benchmark::State& state) {
  const auto variant = static_cast<mpt::model::Variant>(state.range(0));
  const mpt::model::ModelConfig cfg;
  const auto params = mpt::model::make_variant(cfg, variant, mpt::model::init_backbone(cfg, 1), 1);
  const auto& input = sample().input;
  mpt::diff::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(mpt::model::forward(input, params));
  state.SetLabel(std::string(mpt::model::variant_name(variant)));
}
BENCHMARK(BM_Forward)
    ->Arg(static_cast<int>(mpt::model::Variant::HeadOnly))
    ->Arg(static_cast<int>(mpt::model::Variant::FullMpt))
    ->Unit(benchmark::kMillisecond);

void BM_ForwardBackward(benchmark::State& state) {
  const mpt::model::ModelConfig cfg;
  const auto params = mpt::model::make_variant(cfg, mpt::model::Variant::FullMpt, mpt::model::init_backbone(cfg, 1), 1);
  const auto trainable = mpt::model::trainable_tensors(params);
  const std::size_t label = sample().label;
  for (auto _ : state) {
    for (auto t : trainable) t.zero_grad();
    mpt::diff::backward(mpt::model::cross_entropy(mpt::model::forward(sample().input, params), {&label, 1}));
  }
}
BENCHMARK(BM_ForwardBackward)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
