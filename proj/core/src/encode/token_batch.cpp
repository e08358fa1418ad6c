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

#include "mpt/encode/token_batch.hpp"

#include <bit>
#include <fstream>
#include <string>

#include "mpt/diff/ops.hpp"
#include "mpt/error.hpp"

namespace mpt::encode {

using diff::Tensor;

TokenBatch build_token_batch(const Tensor& cls, const Tensor& vision, const Tensor& prompts) {
  if (!cls || !vision) throw ShapeError("build_token_batch: class and vision tokens are required");
  if (cls.rank() != 2 || cls.rows() != 1) throw ShapeError("build_token_batch: class token must be 1 x D");
  const std::size_t d = cls.cols();
  if (vision.cols() != d) throw ShapeError("build_token_batch: vision tokens have a different width");
  if (prompts && prompts.cols() != d) throw ShapeError("build_token_batch: prompt tokens have a different width");

  TokenBatch b;
  b.cls = {0, 1};
  b.vision = {1, 1 + vision.rows()};
  b.prompts = {b.vision.end, b.vision.end + (prompts ? prompts.rows() : 0)};
  if (prompts) {
    const Tensor parts[] = {cls, vision, prompts};
    b.tokens = diff::concat_rows(parts);
  } else {
    const Tensor parts[] = {cls, vision};
    b.tokens = diff::concat_rows(parts);
  }
  return b;
}

TokenBlocks split_token_batch(const TokenBatch& batch) {
  TokenBlocks out;
  out.cls = diff::slice_rows(batch.tokens, batch.cls.begin, batch.cls.end);
  out.vision = diff::slice_rows(batch.tokens, batch.vision.begin, batch.vision.end);
  if (!batch.prompts.empty()) out.prompts = diff::slice_rows(batch.tokens, batch.prompts.begin, batch.prompts.end);
  return out;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw FormatError(FormatError::Kind::Truncated, "token dump truncated");
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

}  // namespace

void write_token_dump(const Tensor& tokens, const std::filesystem::path& path) {
  if (tokens.rank() != 2) throw ShapeError("write_token_dump: expected a 2-D tensor");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string());
  put_u32(out, static_cast<std::uint32_t>(tokens.rows()));
  put_u32(out, static_cast<std::uint32_t>(tokens.cols()));
  for (double v : tokens.data()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  if (!out) throw FormatError(FormatError::Kind::Io, "failed writing " + path.string());
}

Tensor read_token_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string());
  const std::uint32_t rows = get_u32(in);
  const std::uint32_t cols = get_u32(in);
  if (rows == 0 || cols == 0) throw FormatError(FormatError::Kind::ShapeMismatch, "token dump has an empty shape");
  std::vector<double> data(std::size_t{rows} * cols);
  for (auto& v : data) v = std::bit_cast<float>(get_u32(in));
  return Tensor::from({rows, cols}, std::move(data));
}

}  // namespace mpt::encode
