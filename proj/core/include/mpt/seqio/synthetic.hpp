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
#include <functional>
#include <vector>

#include "mpt/seqio/manifest.hpp"
#include "mpt/seqio/sequence.hpp"

namespace mpt::seqio {

/// Parameters of the synthetic micro-motion corpus.
///
/// Every subject owns a smooth random texture. Every class owns a region of
/// the frame; a clip of class k keeps the texture static except inside that
/// region, where it translates sinusoidally by a sub-pixel amount. The clip
/// window is centred on a zero crossing of the oscillation (onset to apex).
struct SynthConfig {
  std::size_t subjects = 10;
  std::size_t classes = 3;
  std::size_t repetitions = 3;
  std::size_t frames = 32;
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t channels = 3;
  double fps = 100.0;
  double amplitude = 0.3;   // peak displacement, pixels
  double frequency = 1.5;   // Hz
  double region_radius = 9.0;
  double region_taper = 4.0;
  double region_jitter = 2.0;     // per-subject shift of the region centres, pixels
  double texture_std = 0.08;
  double landmark_contrast = 0.5;  // depth of the dark blob marking every region
  double landmark_sigma = 3.0;     // pixels
  double direction_jitter = 0.3;   // radians around the outward direction
  double noise_std = 0.0;   // per-frame sensor noise
  std::uint64_t seed = 1;

  std::size_t size() const { return subjects * classes * repetitions; }
  /// Throws ConfigError on invalid values.
  void validate() const;
};

/// Per-sample ground truth kept alongside the generated pixels.
struct SynthTruth {
  std::vector<double> mask;  // H x W, 1 inside the moving region
  double centre_y = 0.0;
  double centre_x = 0.0;
};

class SyntheticGenerator {
 public:
  explicit SyntheticGenerator(SynthConfig config);

  const SynthConfig& config() const { return config_; }
  std::size_t size() const { return config_.size(); }

  /// Deterministic in (config, index). Samples are ordered subject-major,
  /// then class, then repetition.
  Sequence generate(std::size_t index, SynthTruth* truth = nullptr) const;
  std::string sequence_id(std::size_t index) const;
  std::string subject_name(std::size_t subject) const;
  std::vector<std::string> class_names() const;

 private:
  SynthConfig config_;
};

struct SynthDataset {
  std::vector<Sequence> sequences;
  Manifest manifest;  // paths are "<id>.meseq"
};

SynthDataset generate_synthetic(const SynthConfig& config);

/// Writes one MESEQ file per sample plus manifest.tsv into `dir`, one
/// sample at a time.
Manifest write_synthetic(const SynthConfig& config, const std::filesystem::path& dir);

}  // namespace mpt::seqio
