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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mpt/harness/config_file.hpp"
#include "mpt/harness/flops.hpp"
#include "mpt/harness/metrics.hpp"
#include "mpt/model/model.hpp"
#include "mpt/seqio/manifest.hpp"
#include "mpt/seqio/sequence.hpp"

namespace mpt::harness {

struct Sample {
  std::string id;
  std::string subject;
  std::size_t label = 0;
  model::ModelInput input;
};

/// Magnify at the native frame rate, standardise the raw and magnified
/// sequences to `frames`, rank-pool the raw one into patches and reduce the
/// magnified one to convolution tap means.
Sample prepare_sample(const seqio::Sequence& s, const TrainConfig& config);

/// Reads every manifest entry (paths relative to `root`) and prepares it.
/// Sample i corresponds to manifest entry i.
std::vector<Sample> prepare_dataset(const seqio::Manifest& manifest, const std::filesystem::path& root,
                                    const TrainConfig& config, std::size_t threads = 1);

struct FoldResult {
  std::string subject;
  std::vector<std::string> ids;
  std::vector<std::size_t> labels;
  std::vector<std::size_t> predictions;
  std::vector<double> epoch_losses;  // mean training loss per epoch

  bool operator==(const FoldResult&) const = default;
};

struct EvalReport {
  std::string variant;
  std::vector<std::string> class_names;
  std::vector<FoldResult> folds;
  Metrics metrics;  // pooled over all folds
  std::size_t tunable_params = 0;
  FlopBreakdown flops;

  bool operator==(const EvalReport&) const = default;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Deterministic per-fold seed; depends on the subject, not the fold order.
std::uint64_t fold_seed(std::uint64_t seed, const std::string& subject);

/// Trains a fresh copy of the variant on `train` and predicts `test`.
FoldResult train_fold(const TrainConfig& config, const model::BackboneParams& backbone,
                      const std::vector<const Sample*>& train, const std::vector<const Sample*>& test,
                      const std::string& subject);

/// Backbone from config.weights if set, else the seeded random backbone.
model::BackboneParams make_backbone(const TrainConfig& config);

/// Leave-one-subject-out evaluation of `samples` (aligned with the manifest).
/// Folds run on up to `threads` threads; the result does not depend on it.
EvalReport run_experiment(const TrainConfig& config, const seqio::Manifest& manifest,
                          const std::vector<Sample>& samples, std::size_t threads = 1,
                          const ProgressFn& progress = {});

/// Pools predictions of `folds` into the metrics of a report.
EvalReport assemble_report(const TrainConfig& config, const std::vector<std::string>& class_names,
                           std::vector<FoldResult> folds);

}  // namespace mpt::harness
