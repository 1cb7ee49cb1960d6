// sedecomp/stft.hpp

// Copyright 2026  The sedecomp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "sedecomp/error.hpp"
#include "sedecomp/signal.hpp"

namespace sedecomp {

using Complex = std::complex<double>;

/// In-place iterative radix-2 FFT. `inverse` applies the conjugate kernel
/// without the 1/N factor.
inline void Fft(std::vector<Complex> &data, bool inverse = false) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ValidationError("FFT size must be a power of two, got " +
                          std::to_string(n));
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const double step = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex tw = std::polar(1.0, step * static_cast<double>(k));
        const Complex a = data[start + k];
        const Complex b = data[start + k + half] * tw;
        data[start + k] = a + b;
        data[start + k + half] = a - b;
      }
    }
  }
}

inline std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Periodic Hann window.
inline std::vector<double> HannWindow(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(length));
  }
  return w;
}

/// Minimum overlap-add envelope (sum of squared windows), relative to its
/// maximum, for a configuration to be invertible.
inline constexpr double kOverlapAddFloor = 1e-6;

/// Frame lengths in samples for a given sample rate.
struct StftGeometry {
  std::size_t window = 0;
  std::size_t hop = 0;
  std::size_t fft_size = 0;
  std::size_t num_bins() const { return fft_size / 2 + 1; }
};

/// Hann-windowed STFT settings. Defaults are 25 ms windows with a 10 ms
/// shift. The synthesis side divides by the summed squared window, so any
/// window/hop pair whose envelope stays above kOverlapAddFloor reconstructs
/// exactly; pairs that leave gaps (hop > window, or no overlap with a Hann
/// window) are rejected.
struct StftConfig {
  double window_ms = 25.0;
  double hop_ms = 10.0;
  std::size_t fft_size = 0;  // 0: next power of two >= window length

  StftGeometry Geometry(int sample_rate) const {
    if (sample_rate <= 0) throw ValidationError("sample rate must be positive");
    if (!(window_ms > 0.0) || !(hop_ms > 0.0)) {
      throw ValidationError("STFT window and hop must be positive");
    }
    StftGeometry g;
    g.window = static_cast<std::size_t>(
        std::lround(window_ms * sample_rate / 1000.0));
    g.hop = static_cast<std::size_t>(std::lround(hop_ms * sample_rate / 1000.0));
    if (g.window < 2 || g.hop < 1) {
      throw ValidationError("STFT window/hop too short at this sample rate");
    }
    if (g.hop > g.window) {
      throw ValidationError("non-COLA STFT configuration: hop (" +
                            std::to_string(g.hop) + ") exceeds window (" +
                            std::to_string(g.window) + ")");
    }
    g.fft_size = fft_size == 0 ? NextPowerOfTwo(g.window) : fft_size;
    if ((g.fft_size & (g.fft_size - 1)) != 0 || g.fft_size < g.window) {
      throw ValidationError(
          "FFT size must be a power of two no smaller than the window");
    }

    // Steady-state envelope over one hop period.
    const auto w = HannWindow(g.window);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t k = 0; k < g.hop; ++k) {
      double env = 0.0;
      for (std::size_t i = k; i < g.window; i += g.hop) env += w[i] * w[i];
      lo = std::min(lo, env);
      hi = std::max(hi, env);
    }
    if (!(lo >= kOverlapAddFloor * hi)) {
      throw ValidationError(
          "non-COLA STFT configuration: overlap-add envelope vanishes");
    }
    return g;
  }
};

/// One-sided complex spectrogram, frame-major. Carries the geometry needed
/// to invert it.
struct Spectrogram {
  StftGeometry geometry;
  int sample_rate = kDefaultSampleRate;
  std::size_t num_frames = 0;
  std::vector<Complex> bins;  // num_frames * geometry.num_bins()

  std::size_t num_bins() const { return geometry.num_bins(); }
  Complex &at(std::size_t frame, std::size_t bin) {
    return bins[frame * num_bins() + bin];
  }
  const Complex &at(std::size_t frame, std::size_t bin) const {
    return bins[frame * num_bins() + bin];
  }
};

namespace internal {

// Frames are centred: the signal is preceded by window/2 zeros, and frames
// continue until one starts at or beyond the last sample.
inline std::size_t NumFrames(std::size_t length, const StftGeometry &g) {
  return (length - 1 + g.hop - 1) / g.hop + 1;
}

inline std::size_t LeftPad(const StftGeometry &g) { return g.window / 2; }

}  // namespace internal

inline Spectrogram Stft(const Signal &x, const StftConfig &cfg = {}) {
  const StftGeometry g = cfg.Geometry(x.sample_rate());
  const auto w = HannWindow(g.window);
  const std::size_t pad = internal::LeftPad(g);
  Spectrogram spec;
  spec.geometry = g;
  spec.sample_rate = x.sample_rate();
  spec.num_frames = internal::NumFrames(x.size(), g);
  spec.bins.resize(spec.num_frames * g.num_bins());

  std::vector<Complex> frame(g.fft_size);
  for (std::size_t m = 0; m < spec.num_frames; ++m) {
    std::fill(frame.begin(), frame.end(), Complex{});
    for (std::size_t i = 0; i < g.window; ++i) {
      // Position in the original signal; outside [0, size) is zero padding.
      const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(m * g.hop + i) -
                               static_cast<std::ptrdiff_t>(pad);
      if (t >= 0 && t < static_cast<std::ptrdiff_t>(x.size())) {
        frame[i] = w[i] * x[static_cast<std::size_t>(t)];
      }
    }
    Fft(frame);
    std::copy_n(frame.begin(), g.num_bins(), spec.bins.begin() + m * g.num_bins());
  }
  return spec;
}

/// Weighted overlap-add inverse; returns `out_len` samples.
inline Signal Istft(const Spectrogram &spec, std::size_t out_len) {
  const StftGeometry &g = spec.geometry;
  if (out_len == 0) throw ValidationError("istft: output length must be positive");
  if (spec.num_frames == 0 || spec.bins.size() != spec.num_frames * g.num_bins()) {
    throw ValidationError("istft: malformed spectrogram");
  }
  const std::size_t pad = internal::LeftPad(g);
  const std::size_t covered = (spec.num_frames - 1) * g.hop + g.window;
  if (out_len + pad > covered) {
    throw ValidationError("istft: " + std::to_string(spec.num_frames) +
                          " frames cannot cover " + std::to_string(out_len) +
                          " samples");
  }

  const auto w = HannWindow(g.window);
  std::vector<double> acc(covered, 0.0), env(covered, 0.0);
  std::vector<Complex> frame(g.fft_size);
  const double scale = 1.0 / static_cast<double>(g.fft_size);
  const std::size_t nb = g.num_bins();
  for (std::size_t m = 0; m < spec.num_frames; ++m) {
    for (std::size_t k = 0; k < nb; ++k) frame[k] = spec.at(m, k);
    for (std::size_t k = nb; k < g.fft_size; ++k) {
      frame[k] = std::conj(frame[g.fft_size - k]);
    }
    Fft(frame, /*inverse=*/true);
    const std::size_t base = m * g.hop;
    for (std::size_t i = 0; i < g.window; ++i) {
      acc[base + i] += w[i] * frame[i].real() * scale;
      env[base + i] += w[i] * w[i];
    }
  }

  const double env_max = *std::max_element(env.begin(), env.end());
  std::vector<double> out(out_len);
  for (std::size_t t = 0; t < out_len; ++t) {
    const double e = env[t + pad];
    if (!(e >= kOverlapAddFloor * env_max)) {
      throw ValidationError(
          "non-COLA STFT configuration: overlap-add envelope vanishes at sample " +
          std::to_string(t));
    }
    out[t] = acc[t + pad] / e;
  }
  return Signal(std::move(out), spec.sample_rate);
}

}  // namespace sedecomp
