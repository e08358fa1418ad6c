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
#include <cstdint>
#include <iosfwd>

#include "mpt/seqio/sequence.hpp"

// MESEQ container: magic "MESQ1\0", little-endian u32 T, H, W, C, f32 fps,
// then T*H*W*C little-endian f32 samples in t-major, row-major order.
namespace mpt::seqio {

inline constexpr char kMeseqMagic[6] = {'M', 'E', 'S', 'Q', '1', '\0'};
inline constexpr std::size_t kMeseqHeaderBytes = 6 + 4 * 4 + 4;

/// Payload size in bytes; throws FormatError(DimensionOverflow) if it does not fit.
std::uint64_t meseq_payload_bytes(std::uint32_t t, std::uint32_t h, std::uint32_t w, std::uint32_t c);

void write_meseq(const Sequence& s, std::ostream& out);
void write_meseq(const Sequence& s, const std::filesystem::path& path);

/// Samples are widened from f32; id defaults to the file stem.
Sequence read_meseq(std::istream& in);
Sequence read_meseq(const std::filesystem::path& path);

}  // namespace mpt::seqio
