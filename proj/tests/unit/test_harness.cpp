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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "mpt/diff/graph.hpp"
#include "mpt/diff/ops.hpp"
#include "mpt/encode/rank_pool.hpp"
#include "mpt/error.hpp"
#include "mpt/harness/adam.hpp"
#include "mpt/harness/config_file.hpp"
#include "mpt/harness/experiment.hpp"
#include "mpt/harness/flops.hpp"
#include "mpt/harness/loso.hpp"
#include "mpt/harness/metrics.hpp"
#include "mpt/harness/report.hpp"
#include "mpt/seqio/synthetic.hpp"

namespace {

using namespace mpt::harness;
using mpt::diff::Tensor;
using mpt::model::Variant;

void set_gradient(Tensor& x, double g) {
  x.zero_grad();
  mpt::diff::backward(mpt::diff::sum(mpt::diff::scale(x, g)));
}

TEST(Adam, ZeroGradientLeavesParameters) {
  Tensor x = Tensor::from({1, 3}, {0.5, -1.0, 2.0}, true);
  Adam adam({x});
  for (int i = 0; i < 5; ++i) {
    adam.zero_grad();
    adam.step();
  }
  EXPECT_EQ(std::vector<double>(x.data().begin(), x.data().end()), (std::vector<double>{0.5, -1.0, 2.0}));
}

TEST(Adam, ConstantGradientStepsApproachLearningRate) {
  Tensor x = Tensor::from({1, 2}, {0.0, 0.0}, true);
  Adam adam({x}, {.lr = 0.01});
  double before = 0.0;
  for (int i = 0; i < 200; ++i) {
    before = x.data()[0];
    x.zero_grad();
    mpt::diff::backward(mpt::diff::sum(mpt::diff::mul(x, Tensor::from({1, 2}, {3.0, -0.2}))));
    adam.step();
  }
  EXPECT_NEAR(x.data()[0] - before, -0.01, 1e-9);
  EXPECT_NEAR(x.data()[1], 2.0, 1e-6);
}

TEST(Adam, TwoStepsByHand) {
  Tensor x = Tensor::scalar(1.0, true);
  Adam adam({x}, {.lr = 0.1});
  set_gradient(x, 0.5);
  adam.step();
  set_gradient(x, -0.25);
  adam.step();
  // m1 = 0.05, v1 = 2.5e-4; m2 = 0.02, v2 = 3.1225e-4.
  const double x1 = 1.0 - 0.1 * (0.05 / 0.1) / (std::sqrt(2.5e-4 / 0.001) + 1e-8);
  const double x2 = x1 - 0.1 * (0.02 / 0.19) / (std::sqrt(3.1225e-4 / 0.001999) + 1e-8);
  EXPECT_NEAR(x.item(), x2, 1e-12);
}

TEST(Adam, MissingGradientIsAnError) {
  Tensor x = Tensor::scalar(1.0, true);
  Adam adam({x});
  x.clear_grad();
  EXPECT_THROW(adam.step(), mpt::Error);
}

mpt::seqio::Manifest ten_subjects() {
  mpt::seqio::Manifest m;
  m.class_names = {"a", "b", "c"};
  for (int s = 9; s >= 0; --s)
    for (std::size_t k = 0; k < 9; ++k) m.entries.push_back({"x.meseq", "s" + std::to_string(s), k % 3});
  return m;
}

TEST(Loso, FoldsPartitionTheDataset) {
  const auto m = ten_subjects();
  const auto folds = loso_split(m);
  ASSERT_EQ(folds.size(), 10u);
  std::multiset<std::size_t> tested;
  for (const auto& f : folds) {
    EXPECT_EQ(f.test.size(), 9u);
    EXPECT_EQ(f.train.size(), 81u);
    for (auto i : f.test) {
      tested.insert(i);
      EXPECT_EQ(m.entries[i].subject, f.subject);
    }
    for (auto i : f.train) EXPECT_NE(m.entries[i].subject, f.subject);
  }
  EXPECT_EQ(tested.size(), 90u);
  EXPECT_EQ(std::set<std::size_t>(tested.begin(), tested.end()).size(), 90u);
  EXPECT_TRUE(std::is_sorted(folds.begin(), folds.end(), [](auto& a, auto& b) { return a.subject < b.subject; }));
}

TEST(Loso, SingleSubjectIsRejected) {
  mpt::seqio::Manifest m;
  m.class_names = {"a", "b"};
  m.entries = {{"x", "s1", 0}, {"y", "s1", 1}};
  EXPECT_THROW(loso_split(m), mpt::DataError);
}

TEST(Metrics, WorkedExample) {
  const std::size_t pred[] = {1, 1, 0, 0}, label[] = {1, 0, 0, 0};
  const Metrics m = compute_metrics(pred, label, 2);
  EXPECT_EQ(m.accuracy, 0.75);
  EXPECT_NEAR(m.f1[0], 0.8, 1e-12);
  EXPECT_NEAR(m.f1[1], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(m.macro_f1, 0.7333333333333333, 1e-9);
  EXPECT_EQ(m.confusion, (std::vector<std::vector<std::size_t>>{{2, 1}, {0, 1}}));
}

TEST(Metrics, AllCorrect) {
  const std::size_t y[] = {0, 1, 2, 2};
  const Metrics m = compute_metrics(y, y, 3);
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.macro_f1, 1.0);
}

TEST(Metrics, AbsentClassContributesZero) {
  const std::size_t pred[] = {1, 1, 0, 0}, label[] = {1, 0, 0, 0};
  const Metrics m = compute_metrics(pred, label, 3);
  EXPECT_EQ(m.f1[2], 0.0);
  EXPECT_NEAR(m.macro_f1, (0.8 + 2.0 / 3.0) / 3.0, 1e-12);
}

TEST(Metrics, TraceOverTotalIsAccuracy) {
  const std::size_t pred[] = {0, 2, 1, 1, 0, 2, 2}, label[] = {0, 1, 1, 2, 0, 2, 0};
  const Metrics m = compute_metrics(pred, label, 3);
  std::size_t trace = 0, sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    trace += m.confusion[i][i];
    for (auto v : m.confusion[i]) sum += v;
  }
  EXPECT_EQ(sum, m.total);
  EXPECT_EQ(static_cast<double>(trace) / static_cast<double>(m.total), m.accuracy);
}

TEST(Metrics, Errors) {
  const std::size_t pred[] = {0, 3}, label[] = {0, 1};
  EXPECT_THROW(compute_metrics(pred, label, 3), mpt::DataError);
  EXPECT_THROW(compute_metrics(std::span(pred, 1), label, 4), mpt::DataError);
}

TEST(Flops, HandSummedDefaultConfig) {
  const auto f = estimate_flops(mpt::model::ModelConfig{}, Variant::FullMpt);
  EXPECT_EQ(f.embedding, 1572864u);
  EXPECT_EQ(f.prompts, 226523136u);
  EXPECT_EQ(f.attention, 14192640u);
  EXPECT_EQ(f.ffn, 18350080u);
  EXPECT_EQ(f.adapters, 24576u);
  EXPECT_EQ(f.head, 384u);
  EXPECT_EQ(f.total(), 260663680u);
}

TEST(Flops, StackTermIsLinearInDepth) {
  mpt::model::ModelConfig c;
  const auto a = estimate_flops(c);
  c.layers *= 2;
  const auto b = estimate_flops(c);
  EXPECT_EQ(b.attention, 2 * a.attention);
  EXPECT_EQ(b.ffn, 2 * a.ffn);
  EXPECT_EQ(b.adapters, 2 * a.adapters);
  EXPECT_EQ(b.embedding, a.embedding);
}

TEST(Flops, FeedForwardClosedForm) {
  mpt::model::ModelConfig c;
  c.layers = 1;
  const std::uint64_t n = token_count(c, Variant::HeadOnly), D = c.dim;
  EXPECT_EQ(n, 65u);
  EXPECT_EQ(estimate_flops(c, Variant::HeadOnly).ffn, 2 * n * (D * 4 * D + 4 * D * D));
  EXPECT_EQ(estimate_flops(c, Variant::HeadOnly).prompts, 0u);
}

TEST(ConfigFile, ParsesAndRoundTrips) {
  const auto cfg = parse_config(
      "# comment\nlr = 0.001\nbatch=8\nepochs = 5\nvariant = \"prompt-only\"\nband_low = 0.5\n"
      "adapter_mode = per-token\ndim = 32\n");
  EXPECT_EQ(cfg.lr, 0.001);
  EXPECT_EQ(cfg.batch, 8u);
  EXPECT_EQ(cfg.epochs, 5u);
  EXPECT_EQ(cfg.variant, Variant::PromptOnly);
  EXPECT_EQ(cfg.band.low_hz, 0.5);
  EXPECT_EQ(cfg.model.adapter_mode, mpt::model::AdapterMode::PerToken);
  EXPECT_EQ(cfg.model.dim, 32u);
  const auto back = parse_config(format_config(cfg));
  EXPECT_EQ(format_config(back), format_config(cfg));
}

TEST(ConfigFile, Errors) {
  EXPECT_THROW(parse_config("learning_rate = 1"), mpt::ConfigError);
  EXPECT_THROW(parse_config("lr = fast"), mpt::ConfigError);
  EXPECT_THROW(parse_config("lr = -1").validate(), mpt::ConfigError);
  EXPECT_THROW(parse_config("epochs = 0").validate(), mpt::ConfigError);
  EXPECT_THROW(parse_config("batch = 0").validate(), mpt::ConfigError);
  EXPECT_THROW(parse_config("lr"), mpt::ConfigError);
  EXPECT_THROW(parse_config("variant = best"), mpt::ConfigError);
}

// A small corpus: 3 subjects, 2 classes, 16x16 frames.
class SmallExperiment : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    mpt::seqio::SynthConfig sc;
    sc.subjects = 3;
    sc.classes = 2;
    sc.repetitions = 2;
    sc.height = sc.width = 16;
    sc.frames = 12;
    sc.region_radius = 3.0;
    sc.region_taper = 2.0;
    sc.landmark_sigma = 1.5;
    data_ = new mpt::seqio::SynthDataset(mpt::seqio::generate_synthetic(sc));
    config_ = new TrainConfig(small_config());
    samples_ = new std::vector<Sample>();
    for (const auto& s : data_->sequences) samples_->push_back(prepare_sample(s, *config_));
  }
  static void TearDownTestSuite() {
    delete data_;
    delete config_;
    delete samples_;
  }
  static TrainConfig small_config() {
    TrainConfig c;
    c.epochs = 3;
    c.batch = 4;
    c.lr = 1e-3;
    c.model.height = c.model.width = 16;
    c.model.patch = 4;
    c.model.dim = 16;
    c.model.layers = 2;
    c.model.heads = 2;
    c.model.frames = 8;
    c.model.prompts = 3;
    c.model.reduction = 4;
    c.model.classes = 2;
    return c;
  }

  static mpt::seqio::SynthDataset* data_;
  static TrainConfig* config_;
  static std::vector<Sample>* samples_;
};

mpt::seqio::SynthDataset* SmallExperiment::data_ = nullptr;
TrainConfig* SmallExperiment::config_ = nullptr;
std::vector<Sample>* SmallExperiment::samples_ = nullptr;

TEST_F(SmallExperiment, SameSeedGivesIdenticalReports) {
  const auto a = run_experiment(*config_, data_->manifest, *samples_, 1);
  const auto b = run_experiment(*config_, data_->manifest, *samples_, 3);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(format_report_kv(a), format_report_kv(b));
  EXPECT_EQ(a.folds.size(), 3u);
  EXPECT_EQ(a.metrics.total, 12u);
}

TEST_F(SmallExperiment, FoldSeedDependsOnSubjectOnly) {
  EXPECT_EQ(fold_seed(1, "s01"), fold_seed(1, "s01"));
  EXPECT_NE(fold_seed(1, "s01"), fold_seed(1, "s02"));
  EXPECT_NE(fold_seed(1, "s01"), fold_seed(2, "s01"));
}

TEST_F(SmallExperiment, FoldOrderDoesNotChangePooledMetrics) {
  const auto report = run_experiment(*config_, data_->manifest, *samples_, 1);
  auto folds = report.folds;
  std::reverse(folds.begin(), folds.end());
  EXPECT_TRUE(assemble_report(*config_, data_->manifest.class_names, folds).metrics == report.metrics);
}

// With the head still at zero every logit ties, so every prediction is the
// first class and accuracy on balanced data is 1/C.
TEST_F(SmallExperiment, UntrainedHeadPredictsUniformly) {
  const auto params = mpt::model::make_variant(config_->model, Variant::FullMpt, make_backbone(*config_), 1);
  std::vector<std::size_t> preds, labels;
  mpt::diff::NoGradGuard guard;
  for (const auto& s : *samples_) {
    const Tensor logits = mpt::model::forward(s.input, params);
    EXPECT_EQ(logits.at(0, 0), logits.at(0, 1));
    preds.push_back(mpt::model::argmax_rows(logits).front());
    labels.push_back(s.label);
  }
  EXPECT_DOUBLE_EQ(compute_metrics(preds, labels, 2).accuracy, 0.5);
}

TEST_F(SmallExperiment, VptSharesThePreprocessing) {
  TrainConfig vpt = *config_;
  vpt.variant = Variant::VptRandomPrompts;
  for (std::size_t i = 0; i < 3; ++i) {
    const Sample a = prepare_sample(data_->sequences[i], vpt);
    const Sample& b = (*samples_)[i];
    EXPECT_TRUE(std::equal(a.input.patches.data().begin(), a.input.patches.data().end(), b.input.patches.data().begin()));
    EXPECT_TRUE(std::equal(a.input.taps.data().begin(), a.input.taps.data().end(), b.input.taps.data().begin()));
  }
}

TEST_F(SmallExperiment, SampleCarriesRankPooledPatches) {
  const Sample& s = (*samples_)[0];
  EXPECT_EQ(s.input.patches.rows(), 16u);
  EXPECT_EQ(s.input.patches.cols(), 48u);
  EXPECT_EQ(s.input.taps.rows(), 8u);
  EXPECT_EQ(s.input.taps.cols(), 27u);
  EXPECT_EQ(s.label, data_->sequences[0].label);
  EXPECT_EQ(s.subject, data_->sequences[0].subject);
}

TEST_F(SmallExperiment, TrainingLossDecreases) {
  TrainConfig c = *config_;
  c.epochs = 8;
  c.lr = 3e-3;
  std::vector<const Sample*> train, test;
  for (const auto& s : *samples_) (s.subject == "s03" ? test : train).push_back(&s);
  const auto r = train_fold(c, make_backbone(c), train, test, "s03");
  ASSERT_EQ(r.epoch_losses.size(), 8u);
  EXPECT_LT(r.epoch_losses.back(), r.epoch_losses.front());
  EXPECT_EQ(r.predictions.size(), 4u);
}

TEST_F(SmallExperiment, FrozenTensorsSurviveTraining) {
  const auto backbone = make_backbone(*config_);
  const auto before = mpt::model::named_tensors(mpt::model::clone_backbone(backbone, false));
  std::vector<const Sample*> train, test;
  for (const auto& s : *samples_) (s.subject == "s01" ? test : train).push_back(&s);
  train_fold(*config_, backbone, train, test, "s01");
  const auto after = mpt::model::named_tensors(backbone);
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_TRUE(std::equal(before[i].second.data().begin(), before[i].second.data().end(),
                           after[i].second.data().begin()))
        << before[i].first;
  }
}

TEST_F(SmallExperiment, ReportFiles) {
  const auto report = run_experiment(*config_, data_->manifest, *samples_, 1);
  const auto dir = std::filesystem::temp_directory_path() / "mpt_report_test";
  write_report(report, dir);
  for (const char* f : {"report.txt", "report.kv", "confusion.csv", "predictions.tsv"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_NE(format_report_kv(report).find("accuracy="), std::string::npos);
  EXPECT_NE(format_ablation_table({report}).find("full-mpt"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_F(SmallExperiment, LabelOutsideModelClassesIsRejected) {
  TrainConfig c = *config_;
  c.model.classes = 1;
  EXPECT_THROW(prepare_sample(data_->sequences[2], c), mpt::DataError);
}

}  // namespace
