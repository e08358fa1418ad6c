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

#include "mpt/model/weights_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>

#include "mpt/error.hpp"

namespace mpt::model {

namespace {

using Kind = FormatError::Kind;

void put_u32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

bool get_bytes(std::istream& in, char* dst, std::size_t n) {
  return static_cast<bool>(in.read(dst, static_cast<std::streamsize>(n)));
}

std::uint32_t get_u32(std::istream& in, const std::string& what) {
  unsigned char b[4];
  if (!get_bytes(in, reinterpret_cast<char*>(b), 4)) throw FormatError(Kind::Truncated, "weights: truncated " + what);
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

}  // namespace

void write_weights(const std::vector<NamedTensor>& tensors, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(Kind::Io, "cannot open " + path.string());
  out.write(kWeightsMagic.data(), static_cast<std::streamsize>(kWeightsMagic.size()));
  for (const auto& [name, t] : tensors) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    out.put(t.requires_grad() ? '\0' : '\1');
    put_u32(out, static_cast<std::uint32_t>(t.rank()));
    for (auto d : t.shape()) put_u32(out, static_cast<std::uint32_t>(d));
    for (double v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  if (!out) throw FormatError(Kind::Io, "failed writing " + path.string());
}

std::size_t load_weights(const std::vector<NamedTensor>& tensors, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(Kind::Io, "cannot open " + path.string());
  std::string magic(kWeightsMagic.size(), '\0');
  if (!get_bytes(in, magic.data(), magic.size()) || magic != kWeightsMagic) {
    throw FormatError(Kind::BadMagic, path.string() + " is not a weights file");
  }
  std::map<std::string, diff::Tensor> by_name(tensors.begin(), tensors.end());
  std::size_t count = 0;
  while (in.peek() != std::char_traits<char>::eof()) {
    const std::uint32_t len = get_u32(in, "name length");
    if (len > 4096) throw FormatError(Kind::DimensionOverflow, "weights: name length " + std::to_string(len));
    std::string name(len, '\0');
    char frozen = 0;
    if (!get_bytes(in, name.data(), len) || !get_bytes(in, &frozen, 1)) {
      throw FormatError(Kind::Truncated, "weights: truncated entry header");
    }
    const std::uint32_t rank = get_u32(in, "rank");
    if (rank > 8) throw FormatError(Kind::DimensionOverflow, "weights: rank " + std::to_string(rank));
    diff::Shape shape(rank);
    for (auto& d : shape) d = get_u32(in, "dims");

    auto it = by_name.find(name);
    if (it == by_name.end()) throw FormatError(Kind::ShapeMismatch, "weights: unknown tensor '" + name + "'");
    diff::Tensor& t = it->second;
    if (shape != t.shape()) {
      throw FormatError(Kind::ShapeMismatch, "weights: '" + name + "' is " + diff::shape_string(shape) +
                                                 ", model expects " + diff::shape_string(t.shape()));
    }
    auto dst = t.mutable_data();
    for (auto& v : dst) {
      v = std::bit_cast<float>(get_u32(in, "data"));
      if (!std::isfinite(v)) throw DataError("weights: non-finite value in '" + name + "'");
    }
    ++count;
  }
  return count;
}

}  // namespace mpt::model
