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

// mpt: synthetic data, magnification, token dumps, training and ablations.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mpt/encode/token_batch.hpp"
#include "mpt/error.hpp"
#include "mpt/harness/config_file.hpp"
#include "mpt/harness/experiment.hpp"
#include "mpt/harness/report.hpp"
#include "mpt/magnify/magnify.hpp"
#include "mpt/model/model.hpp"
#include "mpt/model/weights_io.hpp"
#include "mpt/seqio/manifest.hpp"
#include "mpt/seqio/meseq.hpp"
#include "mpt/seqio/synthetic.hpp"

namespace fs = std::filesystem;
using namespace mpt;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kData = 3, kNumerical = 4 };

struct Overrides {
  std::string config_path;
  std::string weights;
  int epochs = -1;
  long long seed = -1;
};

harness::TrainConfig resolve_config(const Overrides& o) {
  harness::TrainConfig c;
  if (!o.config_path.empty()) c = harness::load_config(o.config_path, c);
  if (!o.weights.empty()) c.weights = o.weights;
  if (o.epochs >= 0) c.epochs = static_cast<std::size_t>(o.epochs);
  if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
  c.validate();
  return c;
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--weights", o.weights, "backbone weights file")->check(CLI::ExistingFile);
  cmd->add_option("--epochs", o.epochs, "override the epoch count");
  cmd->add_option("--seed", o.seed, "override the seed");
}

std::vector<harness::Sample> load_samples(const fs::path& manifest_path, const seqio::Manifest& manifest,
                                          const harness::TrainConfig& config, std::size_t threads) {
  std::cerr << "preparing " << manifest.entries.size() << " sequences\n";
  return harness::prepare_dataset(manifest, manifest_path.parent_path(), config, threads);
}

harness::EvalReport run_variant(harness::TrainConfig config, model::Variant variant, const seqio::Manifest& manifest,
                                const std::vector<harness::Sample>& samples, std::size_t threads) {
  config.variant = variant;
  std::cerr << "training " << model::variant_name(variant) << "\n";
  return harness::run_experiment(config, manifest, samples, threads,
                                 [](const std::string& msg) { std::cerr << "  " << msg << "\n"; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion prompt tuning for micro-expression recognition"};
  app.require_subcommand(1);

  seqio::SynthConfig synth;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "generate the synthetic micro-motion dataset");
  synth_cmd->add_option("--out", synth_out, "output directory")->required();
  synth_cmd->add_option("--subjects", synth.subjects, "number of subjects");
  synth_cmd->add_option("--classes", synth.classes, "number of classes");
  synth_cmd->add_option("--repetitions", synth.repetitions, "clips per subject and class");
  synth_cmd->add_option("--frames", synth.frames, "frames per clip");
  synth_cmd->add_option("--amplitude", synth.amplitude, "peak displacement in pixels");
  synth_cmd->add_option("--frequency", synth.frequency, "oscillation frequency in Hz");
  synth_cmd->add_option("--noise", synth.noise_std, "per-frame Gaussian noise std");
  synth_cmd->add_option("--seed", synth.seed, "generator seed");

  std::string mag_in, mag_out;
  double beta = magnify::kDefaultBeta;
  magnify::BandpassSpec band;
  std::size_t levels = magnify::kDefaultLevels;
  auto* mag_cmd = app.add_subcommand("magnify", "write the magnified motion sequence of one clip");
  mag_cmd->add_option("--in", mag_in, "input .meseq")->required()->check(CLI::ExistingFile);
  mag_cmd->add_option("--out", mag_out, "output .meseq")->required();
  mag_cmd->add_option("--beta", beta, "amplification factor");
  mag_cmd->add_option("--low", band.low_hz, "pass band low edge, Hz");
  mag_cmd->add_option("--high", band.high_hz, "pass band high edge, Hz");
  mag_cmd->add_option("--levels", levels, "Laplacian pyramid bands");

  std::string enc_in, enc_dump;
  Overrides enc_over;
  auto* enc_cmd = app.add_subcommand("encode", "build the token batch of one clip");
  enc_cmd->add_option("--in", enc_in, "input .meseq")->required()->check(CLI::ExistingFile);
  enc_cmd->add_option("--dump-tokens", enc_dump, "write tokens as u32 rows, u32 D, f32 data")->required();
  add_overrides(enc_cmd, enc_over);

  std::string manifest_path, out_dir, variant = "full-mpt", variants = "head-only,vpt-random-prompts,primitive-adapter,full-mpt";
  std::size_t threads = 1;
  Overrides train_over;
  auto* train_cmd = app.add_subcommand("train", "leave-one-subject-out training and evaluation");
  train_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--variant", variant, "ablation arm");
  train_cmd->add_option("--out", out_dir, "report directory")->required();
  train_cmd->add_option("--threads", threads, "parallel folds");
  add_overrides(train_cmd, train_over);

  auto* ablate_cmd = app.add_subcommand("ablate", "train several arms on the same data");
  ablate_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required()->check(CLI::ExistingFile);
  ablate_cmd->add_option("--variants", variants, "comma-separated arms");
  ablate_cmd->add_option("--out", out_dir, "report directory, one subdirectory per arm");
  ablate_cmd->add_option("--threads", threads, "parallel folds");
  add_overrides(ablate_cmd, train_over);

  std::string weights_out;
  Overrides init_over;
  auto* init_cmd = app.add_subcommand("init-weights", "write the seeded random backbone");
  init_cmd->add_option("--out", weights_out, "weights file")->required();
  add_overrides(init_cmd, init_over);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*synth_cmd) {
      const auto manifest = seqio::write_synthetic(synth, synth_out);
      std::cout << "wrote " << manifest.entries.size() << " sequences to " << synth_out << "\n";
    } else if (*mag_cmd) {
      const auto s = seqio::read_meseq(fs::path(mag_in));
      band.fps = s.fps;
      seqio::write_meseq(magnify::magnify_sequence(s, beta, band, levels), fs::path(mag_out));
    } else if (*enc_cmd) {
      const auto config = resolve_config(enc_over);
      auto s = seqio::read_meseq(fs::path(enc_in));
      s.label = 0;
      const auto sample = harness::prepare_sample(s, config);
      const auto backbone = harness::make_backbone(config);
      const auto params = model::make_variant(config.model, config.variant, backbone, config.seed);
      diff::NoGradGuard no_grad;
      const auto tokens = model::embed_input(sample.input, params);
      encode::write_token_dump(tokens.tokens, enc_dump);
      std::cout << tokens.rows() << " tokens (class " << tokens.cls.size() << ", vision " << tokens.vision.size()
                << ", prompts " << tokens.prompts.size() << ") x " << tokens.dim() << "\n";
    } else if (*train_cmd) {
      auto config = resolve_config(train_over);
      config.variant = model::parse_variant(variant);
      const auto manifest = seqio::read_manifest(manifest_path);
      const auto samples = load_samples(manifest_path, manifest, config, threads);
      const auto report = run_variant(config, config.variant, manifest, samples, threads);
      harness::write_report(report, out_dir);
      std::cout << harness::format_report_text(report);
    } else if (*ablate_cmd) {
      const auto config = resolve_config(train_over);
      std::vector<model::Variant> arms;
      std::stringstream list(variants);
      for (std::string name; std::getline(list, name, ',');) {
        if (!name.empty()) arms.push_back(model::parse_variant(name));
      }
      if (arms.empty()) throw ConfigError("--variants is empty");
      const auto manifest = seqio::read_manifest(manifest_path);
      const auto samples = load_samples(manifest_path, manifest, config, threads);
      std::vector<harness::EvalReport> reports;
      for (auto arm : arms) {
        reports.push_back(run_variant(config, arm, manifest, samples, threads));
        if (!out_dir.empty()) harness::write_report(reports.back(), fs::path(out_dir) / reports.back().variant);
      }
      std::cout << harness::format_ablation_table(reports);
    } else if (*init_cmd) {
      const auto config = resolve_config(init_over);
      model::write_weights(model::named_tensors(harness::make_backbone(config)), weights_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const ShapeError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
