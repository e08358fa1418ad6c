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

#include <complex>
#include <span>
#include <vector>

namespace mpt::magnify {

/// Temporal pass band. `order` is the order of the low-pass prototype, so
/// the digital band-pass has 2*order poles.
struct BandpassSpec {
  double low_hz = 0.4;
  double high_hz = 4.0;
  int order = 2;
  double fps = 100.0;

  /// Throws ConfigError unless 0 < low < high < fps/2 and order >= 1.
  void validate() const;
};

/// Second-order section, a0 normalised to 1.
struct Biquad {
  double b0, b1, b2, a1, a2;
};

/// Butterworth band-pass from the analog prototype via the bilinear transform
/// with pre-warped edges, realised as a cascade of biquads.
class ButterworthBandpass {
 public:
  explicit ButterworthBandpass(const BandpassSpec& spec);

  const BandpassSpec& spec() const { return spec_; }
  const std::vector<Biquad>& sections() const { return sections_; }

  /// Complex frequency response at `hz`.
  std::complex<double> response(double hz) const;

  /// Causal filtering. `initial` scales the steady-state initial conditions
  /// (step response of a constant input of that value); 0 means zero state.
  void filter(std::span<const double> in, std::span<double> out, double initial = 0.0) const;

  /// Zero-phase forward-backward filtering with odd-extension padding and
  /// steady-state initial conditions. Requires at least 4 samples.
  std::vector<double> filtfilt(std::span<const double> signal) const;

  /// Number of samples of odd extension used by filtfilt on a series of length n.
  std::size_t pad_length(std::size_t n) const;

 private:
  BandpassSpec spec_;
  std::vector<Biquad> sections_;
  // Per-section steady state for unit input: (z1, z2).
  std::vector<std::pair<double, double>> unit_state_;
};

/// Filters one per-pixel time series.
std::vector<double> temporal_bandpass(std::span<const double> signal, const BandpassSpec& spec);

/// Filters `count` series of length `length` stored contiguously, series-major.
void temporal_bandpass_batch(std::span<double> series, std::size_t count, std::size_t length,
                             const ButterworthBandpass& filter);

}  // namespace mpt::magnify
