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

#include "mpt/magnify/butterworth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mpt/error.hpp"

namespace mpt::magnify {

namespace {

using cd = std::complex<double>;

double prewarp(double hz, double fs) { return 2.0 * fs * std::tan(std::numbers::pi * hz / fs); }

cd bilinear(cd s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

Biquad from_poles(cd z1, cd z2) {
  return {1.0, 0.0, -1.0, -(z1 + z2).real(), (z1 * z2).real()};
}

cd section_response(const Biquad& q, cd zinv) {
  const cd num = q.b0 + zinv * (q.b1 + zinv * q.b2);
  const cd den = 1.0 + zinv * (q.a1 + zinv * q.a2);
  return num / den;
}

}  // namespace

void BandpassSpec::validate() const {
  if (order < 1) throw ConfigError("band-pass order must be >= 1");
  if (!(fps > 0.0)) throw ConfigError("band-pass fps must be positive");
  if (!(low_hz > 0.0 && low_hz < high_hz && high_hz < fps / 2.0)) {
    throw ConfigError("band-pass edges must satisfy 0 < low < high < fps/2 (got " + std::to_string(low_hz) + ", " +
                      std::to_string(high_hz) + " at " + std::to_string(fps) + " fps)");
  }
}

ButterworthBandpass::ButterworthBandpass(const BandpassSpec& spec) : spec_(spec) {
  spec_.validate();
  const double fs = spec_.fps;
  const double wl = prewarp(spec_.low_hz, fs);
  const double wh = prewarp(spec_.high_hz, fs);
  const double bw = wh - wl;
  const double w0sq = wl * wh;
  const int n = spec_.order;

  // Low-pass prototype poles in the upper half plane (plus the real pole for
  // odd orders); each maps to two band-pass poles.
  for (int k = 1; k <= n; ++k) {
    const cd p = std::polar(1.0, std::numbers::pi * (2.0 * k + n - 1) / (2.0 * n));
    if (p.imag() < -1e-12) continue;
    const cd pb = p * bw;
    const cd root = std::sqrt(pb * pb - 4.0 * w0sq);
    const cd s1 = 0.5 * (pb + root);
    const cd s2 = 0.5 * (pb - root);
    if (std::abs(p.imag()) <= 1e-12) {
      sections_.push_back(from_poles(bilinear(s1, fs), bilinear(s2, fs)));
    } else {
      sections_.push_back(from_poles(bilinear(s1, fs), std::conj(bilinear(s1, fs))));
      sections_.push_back(from_poles(bilinear(s2, fs), std::conj(bilinear(s2, fs))));
    }
  }

  // Unit gain at the (pre-warped) geometric centre.
  const double wc = 2.0 * std::atan(std::sqrt(w0sq) / (2.0 * fs));
  const double mag = std::abs(response(wc * fs / (2.0 * std::numbers::pi)));
  const double g = std::pow(1.0 / mag, 1.0 / static_cast<double>(sections_.size()));
  for (auto& q : sections_) {
    q.b0 = g;
    q.b2 = -g;
  }

  double carried = 1.0;
  for (const auto& q : sections_) {
    const double dc = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
    const double y = dc * carried;
    unit_state_.emplace_back(y - q.b0 * carried, q.b2 * carried - q.a2 * y);
    carried = y;
  }
}

std::complex<double> ButterworthBandpass::response(double hz) const {
  const cd zinv = std::polar(1.0, -2.0 * std::numbers::pi * hz / spec_.fps);
  cd h = 1.0;
  for (const auto& q : sections_) h *= section_response(q, zinv);
  return h;
}

void ButterworthBandpass::filter(std::span<const double> in, std::span<double> out, double initial) const {
  if (out.size() != in.size()) throw ShapeError("filter: output length differs from input");
  std::copy(in.begin(), in.end(), out.begin());
  for (std::size_t s = 0; s < sections_.size(); ++s) {
    const Biquad& q = sections_[s];
    double z1 = unit_state_[s].first * initial;
    double z2 = unit_state_[s].second * initial;
    for (double& v : out) {
      const double x = v;
      const double y = q.b0 * x + z1;
      z1 = q.b1 * x - q.a1 * y + z2;
      z2 = q.b2 * x - q.a2 * y;
      v = y;
    }
  }
}

std::size_t ButterworthBandpass::pad_length(std::size_t n) const {
  const std::size_t taps = 2 * sections_.size() + 1;
  return std::min(3 * taps, n - 1);
}

std::vector<double> ButterworthBandpass::filtfilt(std::span<const double> x) const {
  const std::size_t n = x.size();
  if (n < 4) throw DataError("temporal band-pass needs at least 4 samples, got " + std::to_string(n));
  const std::size_t pad = pad_length(n);

  std::vector<double> ext(n + 2 * pad);
  for (std::size_t j = 0; j < pad; ++j) ext[j] = 2.0 * x[0] - x[pad - j];
  std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(pad));
  for (std::size_t j = 0; j < pad; ++j) ext[pad + n + j] = 2.0 * x[n - 1] - x[n - 2 - j];

  std::vector<double> fwd(ext.size());
  filter(ext, fwd, ext.front());
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd(ext.size());
  filter(fwd, bwd, fwd.front());
  std::reverse(bwd.begin(), bwd.end());
  return {bwd.begin() + static_cast<std::ptrdiff_t>(pad), bwd.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

std::vector<double> temporal_bandpass(std::span<const double> signal, const BandpassSpec& spec) {
  return ButterworthBandpass(spec).filtfilt(signal);
}

void temporal_bandpass_batch(std::span<double> series, std::size_t count, std::size_t length,
                             const ButterworthBandpass& filter) {
  if (series.size() != count * length) throw ShapeError("temporal_bandpass_batch: size mismatch");
  for (std::size_t i = 0; i < count; ++i) {
    auto one = series.subspan(i * length, length);
    auto y = filter.filtfilt(one);
    std::copy(y.begin(), y.end(), one.begin());
  }
}

}  // namespace mpt::magnify
