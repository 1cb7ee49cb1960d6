// sedecomp/signal.hpp

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

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sedecomp/error.hpp"

namespace sedecomp {

inline constexpr int kDefaultSampleRate = 16000;

/// A mono, finite-length waveform at a fixed sample rate.
///
/// Samples are stored in double precision whatever the on-disk encoding was;
/// float32 and PCM16 values are exactly representable, so converting back on
/// write is lossless. A Signal is never empty and never holds NaN/Inf.
class Signal {
 public:
  Signal(std::vector<double> samples, int sample_rate = kDefaultSampleRate)
      : samples_(std::move(samples)), sample_rate_(sample_rate) {
    if (samples_.empty()) throw ValidationError("signal must be non-empty");
    if (sample_rate_ <= 0) {
      throw ValidationError("sample rate must be positive, got " +
                            std::to_string(sample_rate_));
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i])) {
        throw ValidationError("non-finite sample at index " +
                              std::to_string(i));
      }
    }
  }

  std::size_t size() const noexcept { return samples_.size(); }
  int sample_rate() const noexcept { return sample_rate_; }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  const std::vector<double> &vector() const noexcept { return samples_; }

  bool operator==(const Signal &) const = default;

 private:
  std::vector<double> samples_;
  int sample_rate_;
};

namespace linalg {

inline double Dot(std::span<const double> a, std::span<const double> b) {
  // Two accumulators halve the dependency chain; the result is
  // deterministic for a given length.
  double acc0 = 0.0, acc1 = 0.0;
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 1 < n; i += 2) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
  }
  if (i < n) acc0 += a[i] * b[i];
  return acc0 + acc1;
}

inline double SquaredNorm(std::span<const double> a) { return Dot(a, a); }

inline double Norm(std::span<const double> a) {
  return std::sqrt(SquaredNorm(a));
}

// out = x + alpha * y
inline std::vector<double> Axpy(double alpha, std::span<const double> y,
                                std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * y[i];
  return out;
}

inline std::vector<double> Scaled(double alpha, std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
  return out;
}

inline std::vector<double> Sum(std::span<const double> a,
                               std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline std::vector<double> Difference(std::span<const double> a,
                                      std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace linalg

inline void RequireSameShape(const Signal &a, const Signal &b,
                             const char *what) {
  if (a.size() != b.size()) {
    throw ValidationError(std::string(what) + ": length mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (a.sample_rate() != b.sample_rate()) {
    throw ValidationError(std::string(what) + ": sample rate mismatch (" +
                          std::to_string(a.sample_rate()) + " vs " +
                          std::to_string(b.sample_rate()) + ")");
  }
}

inline Signal Scale(const Signal &x, double factor) {
  return Signal(linalg::Scaled(factor, x.samples()), x.sample_rate());
}

inline Signal Add(const Signal &a, const Signal &b) {
  RequireSameShape(a, b, "add");
  return Signal(linalg::Sum(a.samples(), b.samples()), a.sample_rate());
}

inline Signal Subtract(const Signal &a, const Signal &b) {
  RequireSameShape(a, b, "subtract");
  return Signal(linalg::Difference(a.samples(), b.samples()), a.sample_rate());
}

inline double Energy(const Signal &x) { return linalg::SquaredNorm(x.samples()); }

}  // namespace sedecomp
