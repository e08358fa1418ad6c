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

#include <filesystem>
#include <string>
#include <vector>

#include "mpt/harness/experiment.hpp"

namespace mpt::harness {

/// Human-readable summary table.
std::string format_report_text(const EvalReport& report);
/// One `key=value` per line; doubles printed round-trip exact.
std::string format_report_kv(const EvalReport& report);
/// Header row of predicted class names, one row per true class.
std::string format_confusion_csv(const EvalReport& report);
/// subject, id, label, prediction per held-out sample.
std::string format_predictions_tsv(const EvalReport& report);

/// Writes report.txt, report.kv, confusion.csv and predictions.tsv into `dir`.
void write_report(const EvalReport& report, const std::filesystem::path& dir);

/// Table comparing several variants on the same data.
std::string format_ablation_table(const std::vector<EvalReport>& reports);

}  // namespace mpt::harness
