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

#include "mpt/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "mpt/diff/graph.hpp"
#include "mpt/diff/ops.hpp"
#include "mpt/encode/motion_prompt.hpp"
#include "mpt/encode/patch_embed.hpp"
#include "mpt/encode/rank_pool.hpp"
#include "mpt/error.hpp"
#include "mpt/harness/adam.hpp"
#include "mpt/harness/loso.hpp"
#include "mpt/magnify/magnify.hpp"
#include "mpt/model/weights_io.hpp"
#include "mpt/random.hpp"
#include "mpt/seqio/meseq.hpp"
#include "mpt/seqio/standardize.hpp"

namespace mpt::harness {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` threads. The first failure
// by index is rethrown after all jobs finish.
template <class Job>
void parallel_for(std::size_t n, std::size_t threads, Job job) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t count = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

}  // namespace

Sample prepare_sample(const seqio::Sequence& s, const TrainConfig& config) {
  const auto& mc = config.model;
  if (s.height != mc.height || s.width != mc.width || s.channels != mc.channels) {
    throw DataError(s.id + ": sequence is " + std::to_string(s.height) + "x" + std::to_string(s.width) + "x" +
                    std::to_string(s.channels) + ", model expects " + std::to_string(mc.height) + "x" +
                    std::to_string(mc.width) + "x" + std::to_string(mc.channels));
  }
  if (s.label >= mc.classes) throw DataError(s.id + ": label " + std::to_string(s.label) + " out of range");
  magnify::BandpassSpec band = config.band;
  band.fps = s.fps;
  const seqio::Sequence motion = magnify::magnify_sequence(s, config.beta, band, config.levels);
  const seqio::Sequence raw = seqio::standardize_length(s, mc.frames);
  const seqio::Sequence mag = seqio::standardize_length(motion, mc.frames);

  Sample out;
  out.id = s.id;
  out.subject = s.subject;
  out.label = s.label;
  out.input.patches = encode::extract_patches(encode::rank_pool(raw), mc.patch);
  out.input.taps = encode::motion_tap_means(mag);
  return out;
}

std::vector<Sample> prepare_dataset(const seqio::Manifest& manifest, const std::filesystem::path& root,
                                    const TrainConfig& config, std::size_t threads) {
  manifest.validate();
  std::vector<Sample> samples(manifest.entries.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    seqio::Sequence s = seqio::read_meseq(root / e.path);
    s.subject = e.subject;
    s.label = e.label;
    samples[i] = prepare_sample(s, config);
  });
  return samples;
}

std::uint64_t fold_seed(std::uint64_t seed, const std::string& subject) { return derive_seed({seed, fnv1a(subject)}); }

model::BackboneParams make_backbone(const TrainConfig& config) {
  auto backbone = model::init_backbone(config.model, config.seed);
  if (!config.weights.empty()) model::load_weights(model::named_tensors(backbone), config.weights);
  return backbone;
}

FoldResult train_fold(const TrainConfig& config, const model::BackboneParams& backbone,
                      const std::vector<const Sample*>& train, const std::vector<const Sample*>& test,
                      const std::string& subject) {
  config.validate();
  const std::uint64_t seed = fold_seed(config.seed, subject);
  model::ModelParams params = model::make_variant(config.model, config.variant, backbone, seed);
  Adam adam(model::trainable_tensors(params), AdamConfig{.lr = config.lr});
  Rng rng(derive_seed({seed, 0x5eed}));

  FoldResult result;
  result.subject = subject;
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  try {
    for (std::size_t epoch = 0; epoch < config.epochs && !train.empty(); ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      double total = 0.0;
      for (std::size_t start = 0; start < order.size(); start += config.batch) {
        const std::size_t stop = std::min(order.size(), start + config.batch);
        const double weight = 1.0 / static_cast<double>(stop - start);
        adam.zero_grad();
        for (std::size_t k = start; k < stop; ++k) {
          const Sample& s = *train[order[k]];
          const std::size_t label = s.label;
          const diff::Tensor loss = model::cross_entropy(model::forward(s.input, params), {&label, 1});
          total += loss.item();
          diff::backward(diff::scale(loss, weight));
        }
        adam.step();
      }
      result.epoch_losses.push_back(total / static_cast<double>(order.size()));
    }

    diff::NoGradGuard no_grad;
    for (const Sample* s : test) {
      result.ids.push_back(s->id);
      result.labels.push_back(s->label);
      result.predictions.push_back(model::argmax_rows(model::forward(s->input, params)).front());
    }
  } catch (const NumericalError& e) {
    throw NumericalError("fold '" + subject + "' (" + std::string(model::variant_name(config.variant)) +
                         "): " + e.what());
  }
  return result;
}

EvalReport assemble_report(const TrainConfig& config, const std::vector<std::string>& class_names,
                           std::vector<FoldResult> folds) {
  EvalReport report;
  report.variant = std::string(model::variant_name(config.variant));
  report.class_names = class_names;
  std::sort(folds.begin(), folds.end(), [](const auto& a, const auto& b) { return a.subject < b.subject; });
  std::vector<std::size_t> preds, labels;
  for (const auto& f : folds) {
    preds.insert(preds.end(), f.predictions.begin(), f.predictions.end());
    labels.insert(labels.end(), f.labels.begin(), f.labels.end());
  }
  report.folds = std::move(folds);
  report.metrics = compute_metrics(preds, labels, config.model.classes);
  const auto probe = model::make_variant(config.model, config.variant, model::init_backbone(config.model, 0), 0);
  report.tunable_params = model::count_tunable(probe);
  report.flops = estimate_flops(config.model, config.variant);
  return report;
}

EvalReport run_experiment(const TrainConfig& config, const seqio::Manifest& manifest,
                          const std::vector<Sample>& samples, std::size_t threads, const ProgressFn& progress) {
  config.validate();
  if (samples.size() != manifest.entries.size()) throw DataError("run_experiment: samples do not match the manifest");
  if (manifest.classes() != config.model.classes) {
    throw ConfigError("run_experiment: manifest has " + std::to_string(manifest.classes()) +
                      " classes, model is configured for " + std::to_string(config.model.classes));
  }
  const auto folds = loso_split(manifest);
  const auto backbone = make_backbone(config);

  std::vector<FoldResult> results(folds.size());
  std::mutex progress_mutex;
  parallel_for(folds.size(), threads, [&](std::size_t i) {
    std::vector<const Sample*> train, test;
    for (auto j : folds[i].train) train.push_back(&samples[j]);
    for (auto j : folds[i].test) test.push_back(&samples[j]);
    results[i] = train_fold(config, backbone, train, test, folds[i].subject);
    if (progress) {
      std::size_t correct = 0;
      for (std::size_t k = 0; k < results[i].labels.size(); ++k) correct += results[i].labels[k] == results[i].predictions[k];
      const std::lock_guard lock(progress_mutex);
      progress("fold " + folds[i].subject + ": " + std::to_string(correct) + "/" +
               std::to_string(results[i].labels.size()) + " correct");
    }
  });
  return assemble_report(config, manifest.class_names, std::move(results));
}

}  // namespace mpt::harness
