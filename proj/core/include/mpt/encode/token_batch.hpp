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

#include "mpt/diff/tensor.hpp"

namespace mpt::encode {

/// Half-open row range.
struct GroupRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool operator==(const GroupRange&) const = default;
};

/// Rows ordered [class | vision | prompts]; the prompt group may be empty.
struct TokenBatch {
  diff::Tensor tokens;
  GroupRange cls;
  GroupRange vision;
  GroupRange prompts;

  std::size_t rows() const { return tokens.rows(); }
  std::size_t dim() const { return tokens.cols(); }
  TokenBatch with_tokens(diff::Tensor t) const { return {std::move(t), cls, vision, prompts}; }
};

/// `prompts` may be an empty tensor.
TokenBatch build_token_batch(const diff::Tensor& cls, const diff::Tensor& vision, const diff::Tensor& prompts);

struct TokenBlocks {
  diff::Tensor cls, vision, prompts;
};

TokenBlocks split_token_batch(const TokenBatch& batch);

/// Debug dump: u32 rows, u32 D, then rows*D little-endian f32.
void write_token_dump(const diff::Tensor& tokens, const std::filesystem::path& path);
diff::Tensor read_token_dump(const std::filesystem::path& path);

}  // namespace mpt::encode
