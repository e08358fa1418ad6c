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

#include "mpt/seqio/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mpt/error.hpp"
#include "mpt/random.hpp"
#include "mpt/seqio/meseq.hpp"

namespace mpt::seqio {

namespace {

constexpr std::size_t kWaves = 24;

enum Stream : std::uint64_t { kTexture = 1, kRegion = 2, kMotion = 3, kNoise = 4 };

struct Wave {
  double ky, kx, phase, amplitude;
};

struct Texture {
  std::vector<Wave> waves;
  double gain[3];
  double offset[3];

  double base(double y, double x) const {
    double v = 0.5;
    for (const auto& w : waves) v += w.amplitude * std::cos(w.ky * y + w.kx * x + w.phase);
    return v;
  }
};

Texture make_texture(const SynthConfig& cfg, std::size_t subject) {
  Rng rng(derive_seed({cfg.seed, kTexture, subject}));
  std::uniform_real_distribution<double> freq(1.0 / 40.0, 1.0 / 16.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> gain(0.85, 1.15);
  std::uniform_real_distribution<double> offset(-0.04, 0.04);
  Texture tex;
  const double amp = cfg.texture_std * std::sqrt(2.0 / kWaves);
  for (std::size_t j = 0; j < kWaves; ++j) {
    const double f = 2.0 * std::numbers::pi * freq(rng);
    const double a = angle(rng);
    tex.waves.push_back({f * std::sin(a), f * std::cos(a), angle(rng), amp});
  }
  for (int c = 0; c < 3; ++c) {
    tex.gain[c] = gain(rng);
    tex.offset[c] = offset(rng);
  }
  return tex;
}

// Raised-cosine window: 1 inside `radius`, falling to 0 over `taper` pixels.
double window(double rho, double radius, double taper) {
  if (rho <= radius) return 1.0;
  if (rho >= radius + taper) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * (rho - radius) / taper));
}

}  // namespace

void SynthConfig::validate() const {
  if (subjects < 3) throw ConfigError("synthetic: at least 3 subjects required");
  if (classes < 2) throw ConfigError("synthetic: at least 2 classes required");
  if (repetitions < 1) throw ConfigError("synthetic: repetitions must be >= 1");
  if (frames < 2) throw ConfigError("synthetic: at least 2 frames required");
  if (height < 8 || width < 8) throw ConfigError("synthetic: frames must be at least 8x8");
  if (channels != 1 && channels != 3) throw ConfigError("synthetic: channels must be 1 or 3");
  if (!(fps > 0.0)) throw ConfigError("synthetic: fps must be positive");
  if (!(amplitude >= 0.0)) throw ConfigError("synthetic: amplitude must be non-negative");
  if (!(frequency > 0.0 && frequency < fps / 2.0)) {
    throw ConfigError("synthetic: frequency must lie in (0, fps/2)");
  }
  if (!(region_radius > 0.0) || !(region_taper > 0.0)) throw ConfigError("synthetic: bad region geometry");
  if (!(texture_std >= 0.0) || !(landmark_contrast >= 0.0) || !(landmark_sigma > 0.0) || !(direction_jitter >= 0.0) ||
      !(region_jitter >= 0.0)) {
    throw ConfigError("synthetic: bad texture or landmark parameters");
  }
  if (!(noise_std >= 0.0)) throw ConfigError("synthetic: noise_std must be non-negative");
}

SyntheticGenerator::SyntheticGenerator(SynthConfig config) : config_(std::move(config)) { config_.validate(); }

std::string SyntheticGenerator::subject_name(std::size_t subject) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%02zu", subject + 1);
  return buf;
}

std::vector<std::string> SyntheticGenerator::class_names() const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < config_.classes; ++k) names.push_back("region" + std::to_string(k));
  return names;
}

std::string SyntheticGenerator::sequence_id(std::size_t index) const {
  const std::size_t per_subject = config_.classes * config_.repetitions;
  const std::size_t subject = index / per_subject;
  const std::size_t cls = (index % per_subject) / config_.repetitions;
  const std::size_t rep = index % config_.repetitions;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_c%zu_r%zu", subject_name(subject).c_str(), cls, rep);
  return buf;
}

Sequence SyntheticGenerator::generate(std::size_t index, SynthTruth* truth) const {
  const auto& cfg = config_;
  if (index >= size()) throw ConfigError("synthetic: sample index out of range");
  const std::size_t per_subject = cfg.classes * cfg.repetitions;
  const std::size_t subject = index / per_subject;
  const std::size_t cls = (index % per_subject) / cfg.repetitions;

  const Texture tex = make_texture(cfg, subject);

  // Class regions sit on a ring around the frame centre; the first is below
  // the centre (mouth), the rest spread evenly. Every region carries a dark
  // landmark blob in every clip; each subject jitters the layout.
  const double h = static_cast<double>(cfg.height), w = static_cast<double>(cfg.width);
  const double ring = 0.27 * std::min(h, w);
  std::vector<double> centre_y(cfg.classes), centre_x(cfg.classes), radial(cfg.classes);
  for (std::size_t k = 0; k < cfg.classes; ++k) {
    radial[k] = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                             static_cast<double>(cfg.classes);
    Rng region_rng(derive_seed({cfg.seed, kRegion, subject, k}));
    std::uniform_real_distribution<double> jitter(-cfg.region_jitter, cfg.region_jitter);
    centre_y[k] = (h - 1.0) / 2.0 + ring * std::sin(radial[k]) + jitter(region_rng);
    centre_x[k] = (w - 1.0) / 2.0 + ring * std::cos(radial[k]) + jitter(region_rng);
  }
  const double cy = centre_y[cls], cx = centre_x[cls];
  auto base = [&](double y, double x) {
    double v = tex.base(y, x);
    for (std::size_t k = 0; k < cfg.classes; ++k) {
      const double r2 = (y - centre_y[k]) * (y - centre_y[k]) + (x - centre_x[k]) * (x - centre_x[k]);
      v -= cfg.landmark_contrast * std::exp(-r2 / (2.0 * cfg.landmark_sigma * cfg.landmark_sigma));
    }
    return v;
  };

  // The region moves outwards from the frame centre, give or take a little.
  Rng motion_rng(derive_seed({cfg.seed, kMotion, index}));
  std::uniform_real_distribution<double> dir_jitter(-cfg.direction_jitter, cfg.direction_jitter);
  std::uniform_real_distribution<double> phase_jitter(-0.5, 0.5);
  const double direction = radial[cls] + dir_jitter(motion_rng);
  const double uy = std::sin(direction), ux = std::cos(direction);
  const double omega = 2.0 * std::numbers::pi * cfg.frequency / cfg.fps;
  // Rising zero crossing of the oscillation at the middle frame.
  const double phase = -omega * static_cast<double>(cfg.frames - 1) / 2.0 + phase_jitter(motion_rng);

  Sequence s = Sequence::zeros(cfg.frames, cfg.height, cfg.width, cfg.channels, cfg.fps);
  s.id = sequence_id(index);
  s.subject = subject_name(subject);
  s.label = cls;

  std::vector<double> weight(cfg.height * cfg.width);
  std::vector<double> still(cfg.height * cfg.width);
  for (std::size_t y = 0; y < cfg.height; ++y) {
    for (std::size_t x = 0; x < cfg.width; ++x) {
      const double rho = std::hypot(static_cast<double>(y) - cy, static_cast<double>(x) - cx);
      weight[y * cfg.width + x] = window(rho, cfg.region_radius, cfg.region_taper);
      still[y * cfg.width + x] = base(static_cast<double>(y), static_cast<double>(x));
    }
  }
  if (truth) {
    truth->mask.resize(weight.size());
    for (std::size_t i = 0; i < weight.size(); ++i) truth->mask[i] = weight[i] >= 0.5 ? 1.0 : 0.0;
    truth->centre_y = cy;
    truth->centre_x = cx;
  }

  Rng noise_rng(derive_seed({cfg.seed, kNoise, index}));
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t t = 0; t < cfg.frames; ++t) {
    const double d = cfg.amplitude * std::sin(omega * static_cast<double>(t) + phase);
    for (std::size_t y = 0; y < cfg.height; ++y) {
      for (std::size_t x = 0; x < cfg.width; ++x) {
        const std::size_t p = y * cfg.width + x;
        double v = still[p];
        if (weight[p] > 0.0 && d != 0.0) {
          const double shift = weight[p] * d;
          v = base(static_cast<double>(y) - shift * uy, static_cast<double>(x) - shift * ux);
        }
        for (std::size_t c = 0; c < cfg.channels; ++c) {
          const std::size_t ch = cfg.channels == 1 ? 0 : c;
          double val = 0.5 + tex.gain[ch] * (v - 0.5) + tex.offset[ch];
          if (cfg.noise_std > 0.0) val += cfg.noise_std * noise(noise_rng);
          // Stored values are exactly representable as f32 so MESEQ round trips are lossless.
          s.at(t, y, x, c) = static_cast<float>(std::clamp(val, 0.0, 1.0));
        }
      }
    }
  }
  return s;
}

SynthDataset generate_synthetic(const SynthConfig& config) {
  SyntheticGenerator gen(config);
  SynthDataset ds;
  ds.manifest.class_names = gen.class_names();
  for (std::size_t i = 0; i < gen.size(); ++i) {
    Sequence s = gen.generate(i);
    ds.manifest.entries.push_back({s.id + ".meseq", s.subject, s.label});
    ds.sequences.push_back(std::move(s));
  }
  return ds;
}

Manifest write_synthetic(const SynthConfig& config, const std::filesystem::path& dir) {
  SyntheticGenerator gen(config);
  std::filesystem::create_directories(dir);
  Manifest m;
  m.class_names = gen.class_names();
  for (std::size_t i = 0; i < gen.size(); ++i) {
    const Sequence s = gen.generate(i);
    const std::string file = s.id + ".meseq";
    write_meseq(s, dir / file);
    m.entries.push_back({file, s.subject, s.label});
  }
  write_manifest(m, dir / "manifest.tsv");
  return m;
}

}  // namespace mpt::seqio
