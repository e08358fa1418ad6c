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

#include <cstddef>
#include <span>
#include <vector>

namespace mpt::harness {

struct Metrics {
  std::size_t classes = 0;
  std::size_t total = 0;
  /// confusion[true][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<double> precision, recall, f1;
  double accuracy = 0.0;
  double macro_f1 = 0.0;

  bool operator==(const Metrics&) const = default;
};

/// Accuracy and macro-F1. A class with no predictions or no samples has
/// F1 = 0. Throws DataError on out-of-range labels or length mismatch.
Metrics compute_metrics(std::span<const std::size_t> predictions, std::span<const std::size_t> labels,
                        std::size_t classes);

}  // namespace mpt::harness
