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

#include "mpt/seqio/meseq.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "mpt/error.hpp"

namespace mpt::seqio {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f32(std::ostream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

bool get_u32(std::istream& in, std::uint32_t& v) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
  v = std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
  return true;
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError(FormatError::Kind::DimensionOverflow, std::string("MESEQ ") + what + " exceeds u32");
  }
  return static_cast<std::uint32_t>(v);
}

// Largest payload accepted on read (4 GiB of samples).
constexpr std::uint64_t kMaxPayloadBytes = std::uint64_t{1} << 32;

}  // namespace

std::uint64_t meseq_payload_bytes(std::uint32_t t, std::uint32_t h, std::uint32_t w, std::uint32_t c) {
  std::uint64_t n = 4;
  for (std::uint64_t d : {std::uint64_t{t}, std::uint64_t{h}, std::uint64_t{w}, std::uint64_t{c}}) {
    if (d != 0 && n > std::numeric_limits<std::uint64_t>::max() / d) {
      throw FormatError(FormatError::Kind::DimensionOverflow, "MESEQ dimensions overflow");
    }
    n *= d;
  }
  return n;
}

void write_meseq(const Sequence& s, std::ostream& out) {
  s.validate();
  out.write(kMeseqMagic, sizeof kMeseqMagic);
  put_u32(out, checked_u32(s.frames, "T"));
  put_u32(out, checked_u32(s.height, "H"));
  put_u32(out, checked_u32(s.width, "W"));
  put_u32(out, checked_u32(s.channels, "C"));
  put_f32(out, static_cast<float>(s.fps));
  for (double v : s.data) put_f32(out, static_cast<float>(v));
  if (!out) throw FormatError(FormatError::Kind::Io, "failed writing MESEQ stream");
}

void write_meseq(const Sequence& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string() + " for writing");
  write_meseq(s, out);
}

Sequence read_meseq(std::istream& in) {
  char magic[sizeof kMeseqMagic];
  if (!in.read(magic, sizeof magic)) {
    throw FormatError(FormatError::Kind::Truncated, "MESEQ stream shorter than its magic");
  }
  if (std::memcmp(magic, kMeseqMagic, sizeof magic) != 0) {
    throw FormatError(FormatError::Kind::BadMagic, "not a MESEQ stream (bad magic)");
  }
  std::uint32_t dims[4];
  for (auto& d : dims) {
    if (!get_u32(in, d)) throw FormatError(FormatError::Kind::Truncated, "MESEQ header truncated");
  }
  std::uint32_t fps_bits;
  if (!get_u32(in, fps_bits)) throw FormatError(FormatError::Kind::Truncated, "MESEQ header truncated");

  const std::uint64_t bytes = meseq_payload_bytes(dims[0], dims[1], dims[2], dims[3]);
  if (bytes > kMaxPayloadBytes) {
    throw FormatError(FormatError::Kind::DimensionOverflow, "MESEQ payload of " + std::to_string(bytes) +
                                                                " bytes exceeds the supported size");
  }
  Sequence s;
  s.frames = dims[0];
  s.height = dims[1];
  s.width = dims[2];
  s.channels = dims[3];
  s.fps = std::bit_cast<float>(fps_bits);

  const std::size_t count = static_cast<std::size_t>(bytes / 4);
  std::vector<unsigned char> raw(static_cast<std::size_t>(bytes));
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw FormatError(FormatError::Kind::Truncated, "MESEQ payload truncated: expected " + std::to_string(bytes) +
                                                        " bytes, got " + std::to_string(in.gcount()));
  }
  s.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned char* b = raw.data() + 4 * i;
    const std::uint32_t u =
        std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
    s.data[i] = std::bit_cast<float>(u);
  }
  s.validate();
  return s;
}

Sequence read_meseq(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::Io, "cannot open " + path.string());
  Sequence s = read_meseq(in);
  s.id = path.stem().string();
  return s;
}

}  // namespace mpt::seqio
