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
#include <string_view>
#include <vector>

#include "mpt/model/params.hpp"

namespace mpt::model {

inline constexpr std::string_view kWeightsMagic{"MPTW1\0", 6};

/// Magic, then entries until end of file:
///   u32 name length, name bytes, u8 frozen, u32 rank, u32 dims[rank], f32 data.
/// All integers and floats little-endian.
void write_weights(const std::vector<NamedTensor>& tensors, const std::filesystem::path& path);

/// Copies every entry of the file into the tensor of the same name. Unknown
/// names and shape disagreements are FormatError(ShapeMismatch). Tensors not
/// present in the file keep their values. Returns the number of entries read.
std::size_t load_weights(const std::vector<NamedTensor>& tensors, const std::filesystem::path& path);

}  // namespace mpt::model
