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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "mpt/diff/graph.hpp"
#include "mpt/encode/motion_prompt.hpp"
#include "mpt/encode/patch_embed.hpp"
#include "mpt/encode/rank_pool.hpp"
#include "mpt/encode/token_batch.hpp"
#include "mpt/error.hpp"
#include "test_util.hpp"

namespace {

using namespace mpt::encode;
using mpt::diff::Tensor;
using mpt::seqio::Sequence;
using mpt::testing::random_tensor;

Sequence random_sequence(std::mt19937_64& rng, std::size_t T, std::size_t H, std::size_t W, std::size_t C) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Sequence s = Sequence::zeros(T, H, W, C, 100.0);
  for (auto& v : s.data) v = dist(rng);
  return s;
}

DynamicImage random_image(std::mt19937_64& rng, std::size_t H, std::size_t W, std::size_t C) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  DynamicImage img{H, W, C, std::vector<double>(H * W * C)};
  for (auto& v : img.pixels) v = dist(rng);
  return img;
}

PatchEmbedParams random_embed(std::mt19937_64& rng, std::size_t patch, std::size_t C, std::size_t nv, std::size_t D) {
  return {patch, random_tensor(rng, {patch * patch * C, D}), random_tensor(rng, {1, D}), random_tensor(rng, {nv, D}),
          random_tensor(rng, {1, D})};
}

PromptGenParams random_prompt_gen(std::mt19937_64& rng, std::size_t C, std::size_t D, std::size_t np, std::size_t T) {
  return {random_tensor(rng, {9 * C, D}), random_tensor(rng, {1, D}), random_tensor(rng, {np, T}, -0.5, 0.5),
          random_tensor(rng, {np, T}, -0.5, 0.5), random_tensor(rng, {1, D}, 0.5, 1.5)};
}

std::size_t reflect(long i, std::size_t n) {
  if (i < 0) return static_cast<std::size_t>(-i);
  if (i >= static_cast<long>(n)) return 2 * n - 2 - static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i);
}

TEST(RankPool, Coefficients) {
  EXPECT_EQ(rank_pool_coefficients(3), (std::vector<double>{-2.0, 0.0, 2.0}));
  EXPECT_EQ(rank_pool_coefficients(4), (std::vector<double>{-3.0, -1.0, 1.0, 3.0}));
}

TEST(RankPool, MatchesWeightedSum) {
  std::mt19937_64 rng(1);
  const Sequence s = random_sequence(rng, 7, 4, 5, 3);
  const auto alpha = rank_pool_coefficients(7);
  const auto raw = rank_pool_raw(s);
  for (std::size_t p = 0; p < s.frame_size(); ++p) {
    double expected = 0.0;
    for (std::size_t t = 0; t < 7; ++t) expected += alpha[t] * s.data[t * s.frame_size() + p];
    EXPECT_NEAR(raw[p], expected, 1e-12);
  }
}

TEST(RankPool, ReversalNegatesExactly) {
  std::mt19937_64 rng(2);
  for (std::size_t T : {2u, 5u, 16u}) {
    const Sequence s = random_sequence(rng, T, 6, 6, 3);
    const auto fwd = rank_pool_raw(s);
    const auto bwd = rank_pool_raw(mpt::seqio::reversed(s));
    for (std::size_t p = 0; p < fwd.size(); ++p) EXPECT_EQ(bwd[p], -fwd[p]);
  }
}

TEST(RankPool, ConstantSequenceIsZero) {
  Sequence s = Sequence::zeros(9, 4, 4, 1, 30.0);
  std::fill(s.data.begin(), s.data.end(), 0.3);
  for (double v : rank_pool_raw(s)) EXPECT_EQ(v, 0.0);
  for (double v : rank_pool(s).pixels) EXPECT_EQ(v, 0.5);
}

TEST(RankPool, NormalisesEachChannel) {
  std::mt19937_64 rng(3);
  const DynamicImage img = rank_pool(random_sequence(rng, 6, 5, 5, 3));
  for (std::size_t c = 0; c < 3; ++c) {
    double lo = 1.0, hi = 0.0;
    for (std::size_t p = c; p < img.pixels.size(); p += 3) {
      lo = std::min(lo, img.pixels[p]);
      hi = std::max(hi, img.pixels[p]);
    }
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 1.0);
  }
}

TEST(PatchEmbed, PatchOrderMatchesNaiveLoop) {
  std::mt19937_64 rng(4);
  const DynamicImage img = random_image(rng, 64, 64, 3);
  const Tensor patches = extract_patches(img, 8);
  ASSERT_EQ(patches.rows(), 64u);
  ASSERT_EQ(patches.cols(), 192u);
  for (std::size_t py = 0; py < 8; ++py)
    for (std::size_t px = 0; px < 8; ++px)
      for (std::size_t dy = 0; dy < 8; ++dy)
        for (std::size_t dx = 0; dx < 8; ++dx)
          for (std::size_t c = 0; c < 3; ++c)
            EXPECT_EQ(patches.at(py * 8 + px, (dy * 8 + dx) * 3 + c), img.at(py * 8 + dy, px * 8 + dx, c));
}

TEST(PatchEmbed, RejectsIndivisibleImage) {
  std::mt19937_64 rng(5);
  EXPECT_THROW(extract_patches(random_image(rng, 20, 16, 1), 8), mpt::ShapeError);
}

TEST(PatchEmbed, ZeroImageGivesBiasPlusPosition) {
  std::mt19937_64 rng(6);
  const auto params = random_embed(rng, 4, 1, 16, 8);
  const DynamicImage img{16, 16, 1, std::vector<double>(256, 0.0)};
  const auto out = patch_embed(img, params);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t d = 0; d < 8; ++d) EXPECT_EQ(out.vision.at(i, d), params.bias.at(0, d) + params.positions.at(i, d));
  for (std::size_t d = 0; d < 8; ++d) EXPECT_EQ(out.cls.at(0, d), params.cls.at(0, d));
}

TEST(PatchEmbed, MatchesScalarLoop) {
  std::mt19937_64 rng(7);
  const auto params = random_embed(rng, 4, 3, 16, 8);
  const DynamicImage img = random_image(rng, 16, 16, 3);
  const auto out = patch_embed(img, params);
  for (std::size_t py = 0; py < 4; ++py) {
    for (std::size_t px = 0; px < 4; ++px) {
      const std::size_t i = py * 4 + px;
      for (std::size_t d = 0; d < 8; ++d) {
        double v = params.bias.at(0, d) + params.positions.at(i, d);
        for (std::size_t dy = 0; dy < 4; ++dy)
          for (std::size_t dx = 0; dx < 4; ++dx)
            for (std::size_t c = 0; c < 3; ++c)
              v += img.at(py * 4 + dy, px * 4 + dx, c) * params.projection.at((dy * 4 + dx) * 3 + c, d);
        EXPECT_NEAR(out.vision.at(i, d), v, 1e-10);
      }
    }
  }
}

// Dense 3x3 convolution with reflect padding at every pixel, then the spatial
// average, against the tap-mean shortcut.
TEST(MotionPrompt, EmbeddingMatchesDenseConvolution) {
  std::mt19937_64 rng(8);
  const std::size_t T = 4, H = 6, W = 5, C = 3, D = 7;
  const Sequence s = random_sequence(rng, T, H, W, C);
  const auto params = random_prompt_gen(rng, C, D, 2, T);
  const Tensor out = embed_motion(s, params);
  ASSERT_EQ(out.rows(), T);
  ASSERT_EQ(out.cols(), D);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t d = 0; d < D; ++d) {
      double total = 0.0;
      for (std::size_t y = 0; y < H; ++y) {
        for (std::size_t x = 0; x < W; ++x) {
          double v = params.conv_bias.at(0, d);
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
              for (std::size_t c = 0; c < C; ++c) {
                const std::size_t row = static_cast<std::size_t>((dy + 1) * 3 + (dx + 1)) * C + c;
                v += params.conv_weight.at(row, d) *
                     s.at(t, reflect(static_cast<long>(y) + dy, H), reflect(static_cast<long>(x) + dx, W), c);
              }
          total += v;
        }
      }
      EXPECT_NEAR(out.at(t, d), total / static_cast<double>(H * W), 1e-10);
    }
  }
}

TEST(MotionPrompt, TokenizationMatchesScalarLoop) {
  std::mt19937_64 rng(9);
  const std::size_t T = 6, D = 5, NP = 3;
  const auto params = random_prompt_gen(rng, 1, D, NP, T);
  const Tensor embedded = random_tensor(rng, {T, D});
  const Tensor out = gaussian_tokenize(embedded, params);
  ASSERT_EQ(out.rows(), NP);
  for (std::size_t i = 0; i < NP; ++i) {
    for (std::size_t d = 0; d < D; ++d) {
      double mu = 0.0, pre = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        mu += params.mean_weight.at(i, t) * embedded.at(t, d);
        pre += params.var_weight.at(i, t) * embedded.at(t, d);
      }
      const double var = std::log1p(std::exp(pre)) + kVarianceFloor;
      double density = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        const double z = embedded.at(t, d) - mu;
        density += std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
      }
      EXPECT_NEAR(out.at(i, d), params.token_scale.at(0, d) * density / static_cast<double>(T), 1e-10);
    }
  }
}

TEST(MotionPrompt, DensityPeaksAtTheMean) {
  const std::size_t D = 4;
  PromptGenParams params{Tensor::zeros({9, D}), Tensor::zeros({1, D}), Tensor::full({1, 1}, 1.0),
                         Tensor::zeros({1, 1}), Tensor::full({1, D}, 1.0)};
  const Tensor embedded = Tensor::from({1, D}, {0.3, -1.0, 2.0, 0.0});
  const Tensor out = gaussian_tokenize(embedded, params);
  const double var = std::log(2.0) + kVarianceFloor;
  for (std::size_t d = 0; d < D; ++d) EXPECT_NEAR(out.at(0, d), 1.0 / std::sqrt(2.0 * std::numbers::pi * var), 1e-14);
}

TEST(MotionPrompt, RejectsFrameMismatch) {
  std::mt19937_64 rng(10);
  const auto params = random_prompt_gen(rng, 3, 4, 2, 8);
  EXPECT_THROW(embed_motion(random_sequence(rng, 6, 4, 4, 3), params), mpt::ShapeError);
  EXPECT_THROW(embed_motion(random_sequence(rng, 8, 4, 4, 1), params), mpt::ShapeError);
}

TEST(TokenBatch, LayoutAndRanges) {
  std::mt19937_64 rng(11);
  const auto b = build_token_batch(random_tensor(rng, {1, 8}), random_tensor(rng, {64, 8}), random_tensor(rng, {5, 8}));
  EXPECT_EQ(b.rows(), 70u);
  EXPECT_EQ(b.dim(), 8u);
  EXPECT_EQ(b.cls, (GroupRange{0, 1}));
  EXPECT_EQ(b.vision, (GroupRange{1, 65}));
  EXPECT_EQ(b.prompts, (GroupRange{65, 70}));
}

TEST(TokenBatch, SplitRoundTrip) {
  std::mt19937_64 rng(12);
  const Tensor cls = random_tensor(rng, {1, 6}), vision = random_tensor(rng, {9, 6}), prompts = random_tensor(rng, {3, 6});
  const auto blocks = split_token_batch(build_token_batch(cls, vision, prompts));
  auto same = [](const Tensor& a, const Tensor& b) {
    return a.shape() == b.shape() && std::equal(a.data().begin(), a.data().end(), b.data().begin());
  };
  EXPECT_TRUE(same(blocks.cls, cls));
  EXPECT_TRUE(same(blocks.vision, vision));
  EXPECT_TRUE(same(blocks.prompts, prompts));
}

TEST(TokenBatch, EmptyPromptGroup) {
  std::mt19937_64 rng(13);
  const auto b = build_token_batch(random_tensor(rng, {1, 4}), random_tensor(rng, {4, 4}), Tensor());
  EXPECT_EQ(b.rows(), 5u);
  EXPECT_TRUE(b.prompts.empty());
  EXPECT_FALSE(split_token_batch(b).prompts);
}

TEST(TokenBatch, RejectsWidthMismatch) {
  std::mt19937_64 rng(14);
  EXPECT_THROW(build_token_batch(random_tensor(rng, {1, 4}), random_tensor(rng, {4, 5}), Tensor()), mpt::ShapeError);
  EXPECT_THROW(build_token_batch(random_tensor(rng, {1, 4}), random_tensor(rng, {4, 4}), random_tensor(rng, {2, 3})),
               mpt::ShapeError);
}

TEST(TokenDump, RoundTrip) {
  std::vector<double> v(12);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(static_cast<float>(0.1 * i - 0.5));
  const Tensor t = Tensor::from({3, 4}, v);
  const auto path = std::filesystem::temp_directory_path() / "mpt_token_dump.bin";
  write_token_dump(t, path);
  EXPECT_EQ(std::filesystem::file_size(path), 8u + 12u * 4u);
  const Tensor back = read_token_dump(path);
  EXPECT_EQ(back.shape(), t.shape());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(back.data()[i], v[i]);
  std::filesystem::resize_file(path, 20);
  EXPECT_THROW(read_token_dump(path), mpt::FormatError);
  std::filesystem::remove(path);
}

}  // namespace
