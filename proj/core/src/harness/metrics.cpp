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

#include "mpt/harness/metrics.hpp"

#include <string>

#include "mpt/error.hpp"

namespace mpt::harness {

Metrics compute_metrics(std::span<const std::size_t> predictions, std::span<const std::size_t> labels,
                        std::size_t classes) {
  if (predictions.size() != labels.size()) {
    throw DataError("metrics: " + std::to_string(predictions.size()) + " predictions for " +
                    std::to_string(labels.size()) + " labels");
  }
  if (classes == 0) throw DataError("metrics: no classes");
  Metrics m;
  m.classes = classes;
  m.total = labels.size();
  m.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= classes || predictions[i] >= classes) {
      throw DataError("metrics: class index out of range at sample " + std::to_string(i));
    }
    ++m.confusion[labels[i]][predictions[i]];
  }

  std::size_t correct = 0;
  double f1_sum = 0.0;
  m.precision.assign(classes, 0.0);
  m.recall.assign(classes, 0.0);
  m.f1.assign(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    const std::size_t tp = m.confusion[c][c];
    std::size_t predicted = 0, actual = 0;
    for (std::size_t k = 0; k < classes; ++k) {
      predicted += m.confusion[k][c];
      actual += m.confusion[c][k];
    }
    correct += tp;
    if (predicted > 0) m.precision[c] = static_cast<double>(tp) / static_cast<double>(predicted);
    if (actual > 0) m.recall[c] = static_cast<double>(tp) / static_cast<double>(actual);
    const double pr = m.precision[c] + m.recall[c];
    if (predicted > 0 && actual > 0 && pr > 0) m.f1[c] = 2.0 * m.precision[c] * m.recall[c] / pr;
    f1_sum += m.f1[c];
  }
  m.accuracy = m.total ? static_cast<double>(correct) / static_cast<double>(m.total) : 0.0;
  m.macro_f1 = f1_sum / static_cast<double>(classes);
  return m;
}

}  // namespace mpt::harness
