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

#include <cstddef>
#include <vector>

namespace mpt::magnify {

/// Single-channel plane, row-major.
struct Plane {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> pixels;

  static Plane zeros(std::size_t height, std::size_t width) { return {height, width, std::vector<double>(height * width)}; }
  double& at(std::size_t y, std::size_t x) { return pixels[y * width + x]; }
  double at(std::size_t y, std::size_t x) const { return pixels[y * width + x]; }
};

/// Laplacian decomposition: bands[k] is level k at (H / 2^k) x (W / 2^k),
/// residual is the low-pass image at level K.
struct Pyramid {
  std::vector<Plane> bands;
  Plane residual;

  std::size_t levels() const { return bands.size(); }
};

/// 5-tap binomial blur then decimation by 2. Reflect padding.
Plane pyr_down(const Plane& img);
/// Zero insertion to (height x width) then 4x binomial blur. Reflect padding.
Plane pyr_up(const Plane& img, std::size_t height, std::size_t width);

/// Throws ShapeError unless H and W are divisible by 2^levels.
Pyramid laplacian_decompose(const Plane& img, std::size_t levels);
Plane laplacian_reconstruct(const Pyramid& pyr);

}  // namespace mpt::magnify
