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

#include "mpt/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mpt/error.hpp"

namespace mpt::harness {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw FormatError(FormatError::Kind::Io, "failed writing " + path.string());
}

}  // namespace

std::string format_report_text(const EvalReport& r) {
  const auto& m = r.metrics;
  std::ostringstream out;
  out << "variant          " << r.variant << "\n"
      << "samples          " << m.total << " in " << r.folds.size() << " folds\n"
      << "accuracy         " << fixed(m.accuracy, 4) << "\n"
      << "macro F1         " << fixed(m.macro_f1, 4) << "\n"
      << "tunable params   " << r.tunable_params << "\n"
      << "forward GFLOPs   " << fixed(static_cast<double>(r.flops.total()) * 1e-9, 4) << "\n\n";

  out << pad("class", 14) << pad("precision", 11) << pad("recall", 9) << "F1\n";
  for (std::size_t c = 0; c < m.classes; ++c) {
    const std::string name = c < r.class_names.size() ? r.class_names[c] : std::to_string(c);
    out << pad(name, 14) << pad(fixed(m.precision[c], 4), 11) << pad(fixed(m.recall[c], 4), 9) << fixed(m.f1[c], 4)
        << "\n";
  }

  out << "\n" << pad("subject", 14) << pad("correct", 9) << "final loss\n";
  for (const auto& f : r.folds) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < f.labels.size(); ++i) correct += f.labels[i] == f.predictions[i];
    out << pad(f.subject, 14) << pad(std::to_string(correct) + "/" + std::to_string(f.labels.size()), 9)
        << (f.epoch_losses.empty() ? std::string("-") : fixed(f.epoch_losses.back(), 4)) << "\n";
  }
  return out.str();
}

std::string format_report_kv(const EvalReport& r) {
  const auto& m = r.metrics;
  std::ostringstream out;
  out << "variant=" << r.variant << "\n"
      << "samples=" << m.total << "\n"
      << "folds=" << r.folds.size() << "\n"
      << "accuracy=" << exact(m.accuracy) << "\n"
      << "macro_f1=" << exact(m.macro_f1) << "\n"
      << "tunable_params=" << r.tunable_params << "\n"
      << "flops.embedding=" << r.flops.embedding << "\n"
      << "flops.prompts=" << r.flops.prompts << "\n"
      << "flops.attention=" << r.flops.attention << "\n"
      << "flops.ffn=" << r.flops.ffn << "\n"
      << "flops.adapters=" << r.flops.adapters << "\n"
      << "flops.head=" << r.flops.head << "\n"
      << "flops.total=" << r.flops.total() << "\n";
  for (std::size_t c = 0; c < m.classes; ++c) {
    out << "class." << c << ".precision=" << exact(m.precision[c]) << "\n"
        << "class." << c << ".recall=" << exact(m.recall[c]) << "\n"
        << "class." << c << ".f1=" << exact(m.f1[c]) << "\n";
  }
  for (const auto& f : r.folds) {
    for (std::size_t e = 0; e < f.epoch_losses.size(); ++e) {
      out << "fold." << f.subject << ".loss." << e << "=" << exact(f.epoch_losses[e]) << "\n";
    }
  }
  return out.str();
}

std::string format_confusion_csv(const EvalReport& r) {
  const auto& m = r.metrics;
  auto name = [&](std::size_t c) { return c < r.class_names.size() ? r.class_names[c] : std::to_string(c); };
  std::ostringstream out;
  out << "true\\predicted";
  for (std::size_t c = 0; c < m.classes; ++c) out << "," << name(c);
  out << "\n";
  for (std::size_t t = 0; t < m.classes; ++t) {
    out << name(t);
    for (std::size_t p = 0; p < m.classes; ++p) out << "," << m.confusion[t][p];
    out << "\n";
  }
  return out.str();
}

std::string format_predictions_tsv(const EvalReport& r) {
  std::ostringstream out;
  out << "subject\tid\tlabel\tprediction\n";
  for (const auto& f : r.folds) {
    for (std::size_t i = 0; i < f.ids.size(); ++i) {
      out << f.subject << "\t" << f.ids[i] << "\t" << f.labels[i] << "\t" << f.predictions[i] << "\n";
    }
  }
  return out.str();
}

void write_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw FormatError(FormatError::Kind::Io, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "report.txt", format_report_text(report));
  write_file(dir / "report.kv", format_report_kv(report));
  write_file(dir / "confusion.csv", format_confusion_csv(report));
  write_file(dir / "predictions.tsv", format_predictions_tsv(report));
}

std::string format_ablation_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << pad("variant", 22) << pad("accuracy", 10) << pad("macro F1", 10) << pad("tunable", 10) << "GFLOPs\n";
  for (const auto& r : reports) {
    out << pad(r.variant, 22) << pad(fixed(r.metrics.accuracy, 4), 10) << pad(fixed(r.metrics.macro_f1, 4), 10)
        << pad(std::to_string(r.tunable_params), 10) << fixed(static_cast<double>(r.flops.total()) * 1e-9, 4) << "\n";
  }
  return out.str();
}

}  // namespace mpt::harness
