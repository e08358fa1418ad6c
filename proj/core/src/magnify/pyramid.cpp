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

#include "mpt/magnify/pyramid.hpp"

#include <string>

#include "mpt/error.hpp"

namespace mpt::magnify {

namespace {

constexpr double kBinomial[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

// Reflect without repeating the edge sample: -1 -> 1, n -> n - 2.
std::size_t reflect(long i, std::size_t n) {
  if (n == 1) return 0;
  const long period = 2 * (static_cast<long>(n) - 1);
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<long>(n)) i = period - i;
  return static_cast<std::size_t>(i);
}

Plane blur(const Plane& img) {
  Plane tmp = Plane::zeros(img.height, img.width);
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      double s = 0.0;
      for (int k = -2; k <= 2; ++k) s += kBinomial[k + 2] * img.at(y, reflect(static_cast<long>(x) + k, img.width));
      tmp.at(y, x) = s;
    }
  }
  Plane out = Plane::zeros(img.height, img.width);
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      double s = 0.0;
      for (int k = -2; k <= 2; ++k) s += kBinomial[k + 2] * tmp.at(reflect(static_cast<long>(y) + k, img.height), x);
      out.at(y, x) = s;
    }
  }
  return out;
}

}  // namespace

Plane pyr_down(const Plane& img) {
  const Plane b = blur(img);
  Plane out = Plane::zeros((img.height + 1) / 2, (img.width + 1) / 2);
  for (std::size_t y = 0; y < out.height; ++y)
    for (std::size_t x = 0; x < out.width; ++x) out.at(y, x) = b.at(2 * y, 2 * x);
  return out;
}

Plane pyr_up(const Plane& img, std::size_t height, std::size_t width) {
  Plane z = Plane::zeros(height, width);
  for (std::size_t y = 0; y < img.height && 2 * y < height; ++y)
    for (std::size_t x = 0; x < img.width && 2 * x < width; ++x) z.at(2 * y, 2 * x) = 4.0 * img.at(y, x);
  return blur(z);
}

Pyramid laplacian_decompose(const Plane& img, std::size_t levels) {
  const std::size_t div = std::size_t{1} << levels;
  if (img.height == 0 || img.width == 0 || img.height % div != 0 || img.width % div != 0) {
    throw ShapeError("laplacian_decompose: " + std::to_string(img.height) + "x" + std::to_string(img.width) +
                     " is not divisible by 2^" + std::to_string(levels));
  }
  Pyramid pyr;
  Plane current = img;
  for (std::size_t k = 0; k < levels; ++k) {
    Plane down = pyr_down(current);
    Plane up = pyr_up(down, current.height, current.width);
    for (std::size_t i = 0; i < current.pixels.size(); ++i) current.pixels[i] -= up.pixels[i];
    pyr.bands.push_back(std::move(current));
    current = std::move(down);
  }
  pyr.residual = std::move(current);
  return pyr;
}

Plane laplacian_reconstruct(const Pyramid& pyr) {
  Plane current = pyr.residual;
  for (std::size_t k = pyr.bands.size(); k-- > 0;) {
    const Plane& band = pyr.bands[k];
    if (band.height != 2 * current.height || band.width != 2 * current.width) {
      throw ShapeError("laplacian_reconstruct: level " + std::to_string(k) + " has inconsistent size");
    }
    Plane up = pyr_up(current, band.height, band.width);
    for (std::size_t i = 0; i < up.pixels.size(); ++i) up.pixels[i] += band.pixels[i];
    current = std::move(up);
  }
  return current;
}

}  // namespace mpt::magnify
