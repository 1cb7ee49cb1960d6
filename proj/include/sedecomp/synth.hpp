// sedecomp/synth.hpp

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
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "sedecomp/decomposition.hpp"
#include "sedecomp/error.hpp"
#include "sedecomp/random.hpp"
#include "sedecomp/signal.hpp"
#include "sedecomp/stft.hpp"

namespace sedecomp {

// ---------------------------------------------------------------------------
// Mixing

struct Mixture {
  Signal observed;      // s + gain * n
  Signal scaled_noise;  // gain * n
  double gain = 0.0;
};

/// Scales `n` so that |s|^2 / |gain * n|^2 equals the target SNR, then adds.
inline Mixture MixAtSnr(const Signal &s, const Signal &n, double target_snr_db) {
  RequireSameShape(s, n, "mix_at_snr");
  if (!std::isfinite(target_snr_db)) {
    throw ValidationError("mix_at_snr: target SNR must be finite");
  }
  const double s_norm = linalg::Norm(s.samples());
  const double n_norm = linalg::Norm(n.samples());
  if (s_norm == 0.0) throw DegenerateError("mix_at_snr: speech has zero energy");
  if (n_norm == 0.0) throw DegenerateError("mix_at_snr: noise has zero energy");
  const double gain = s_norm / (n_norm * std::pow(10.0, target_snr_db / 20.0));
  Signal scaled = Scale(n, gain);
  Signal observed = Add(s, scaled);
  return Mixture{std::move(observed), std::move(scaled), gain};
}

/// Removes the component of `x` along `direction` (two passes).
inline Signal OrthogonalizeAgainst(const Signal &x, const Signal &direction) {
  RequireSameShape(x, direction, "orthogonalize");
  const double energy = Energy(direction);
  if (energy == 0.0) throw DegenerateError("orthogonalize: zero direction");
  std::vector<double> out(x.vector());
  const auto d = direction.samples();
  for (int pass = 0; pass < 2; ++pass) {
    const double coef = linalg::Dot(out, d) / energy;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * d[i];
  }
  if (linalg::SquaredNorm(out) == 0.0) {
    throw DegenerateError("orthogonalize: input is parallel to the direction");
  }
  return Signal(std::move(out), x.sample_rate());
}

// ---------------------------------------------------------------------------
// Test material

/// Voiced, speech-like test signal: a harmonic series on a gliding pitch,
/// amplitude-modulated at a syllabic rate, with seeded harmonic phases.
inline Signal SyntheticSpeech(std::size_t num_samples, int sample_rate,
                              std::uint64_t seed) {
  if (num_samples == 0) throw ValidationError("synthetic speech: zero length");
  Rng rng(seed);
  const double f0_start = rng.Uniform(100.0, 140.0);
  const double f0_end = rng.Uniform(150.0, 220.0);
  const double syllable_hz = rng.Uniform(3.0, 5.0);
  const double nyquist = sample_rate / 2.0;
  const int harmonics = static_cast<int>(std::min(30.0, 0.9 * nyquist / f0_end));
  std::vector<double> phase0(static_cast<std::size_t>(harmonics));
  for (auto &p : phase0) p = rng.Uniform(0.0, 2.0 * std::numbers::pi);

  const double duration = static_cast<double>(num_samples) / sample_rate;
  std::vector<double> out(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    // Integrated phase of a linear glide.
    const double cycles =
        f0_start * t + 0.5 * (f0_end - f0_start) / duration * t * t;
    const double env =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * syllable_hz * t));
    double v = 0.0;
    for (int k = 1; k <= harmonics; ++k) {
      v += std::sin(2.0 * std::numbers::pi * k * cycles +
                    phase0[static_cast<std::size_t>(k - 1)]) /
           k;
    }
    out[i] = 0.1 * env * v;
  }
  return Signal(std::move(out), sample_rate);
}

inline Signal WhiteNoise(std::size_t num_samples, int sample_rate,
                         std::uint64_t seed, double stddev = 0.05) {
  Rng rng(seed);
  std::vector<double> out = rng.GaussianVector(num_samples);
  for (auto &v : out) v *= stddev;
  return Signal(std::move(out), sample_rate);
}

// ---------------------------------------------------------------------------
// Exactly decomposable enhancer

/// Coefficients of shat = a*s + b*n + c*r, r a unit vector orthogonal to
/// span{s, n}.
struct SpanMixSpec {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
};

/// Seeded unit vector orthogonal to both references.
inline Signal ArtifactDirection(const ReferencePair &pair, std::uint64_t seed) {
  if (pair.size() < 3) {
    throw ValidationError("span_enhancer: need at least 3 samples, got " +
                          std::to_string(pair.size()));
  }
  Rng rng(seed);
  const auto s = pair.speech().samples();
  const auto q = pair.noise_perp();
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<double> r = rng.GaussianVector(pair.size());
    const double r0 = linalg::Norm(r);
    for (int pass = 0; pass < 2; ++pass) {
      const double cs = linalg::Dot(r, s) / pair.speech_energy();
      const double cq = linalg::Dot(r, q) / pair.noise_perp_energy();
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= cs * s[i] + cq * q[i];
    }
    const double norm = linalg::Norm(r);
    if (norm > 1e-6 * r0) {
      for (auto &v : r) v /= norm;
      return Signal(std::move(r), pair.sample_rate());
    }
  }
  throw DegenerateError("span_enhancer: could not draw an orthogonal direction");
}

/// Deterministic given the seed. decompose() of the result recovers
/// s_target = a*s + b*P_s n, e_noise = b*(n - P_s n), e_artif = c*r.
inline Signal SpanEnhancer(const ReferencePair &pair, const SpanMixSpec &spec,
                           std::uint64_t seed) {
  const Signal r = ArtifactDirection(pair, seed);
  const auto s = pair.speech().samples();
  const auto n = pair.noise().samples();
  std::vector<double> out(pair.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = spec.a * s[i] + spec.b * n[i] + spec.c * r[i];
  }
  return Signal(std::move(out), pair.sample_rate());
}

// ---------------------------------------------------------------------------
// STFT-domain oracle enhancers. Both see the true speech and noise spectra.

/// |S|^2 / (|S|^2 + |N|^2); a silent bin passes through (gain 1).
inline double WienerGain(double speech_power, double noise_power) {
  const double den = speech_power + noise_power;
  return den > 0.0 ? speech_power / den : 1.0;
}

/// max(|Y| - oversub*|N|, floor*|Y|)
inline double SubtractedMagnitude(double mixture_mag, double scaled_noise_mag,
                                  double floor) {
  return std::max(mixture_mag - scaled_noise_mag, floor * mixture_mag);
}

namespace internal {

template <typename GainFn>
Signal ApplyOracleGain(const Signal &y, const ReferencePair &pair,
                       const StftConfig &cfg, GainFn gain) {
  RequireSameShape(y, pair.speech(), "oracle enhancer");
  const Spectrogram S = Stft(pair.speech(), cfg);
  const Spectrogram N = Stft(pair.noise(), cfg);
  Spectrogram Y = Stft(y, cfg);
  for (std::size_t i = 0; i < Y.bins.size(); ++i) {
    Y.bins[i] *= gain(S.bins[i], N.bins[i], Y.bins[i]);
  }
  return Istft(Y, y.size());
}

}  // namespace internal

/// Oracle Wiener mask applied to the mixture spectrogram.
inline Signal WienerOracle(const Signal &y, const ReferencePair &pair,
                           const StftConfig &cfg = {}) {
  return internal::ApplyOracleGain(
      y, pair, cfg, [](Complex s, Complex n, Complex) {
        return WienerGain(std::norm(s), std::norm(n));
      });
}

/// Magnitude spectral subtraction with the true noise magnitude; keeps the
/// mixture phase. Larger `oversub` removes more noise and adds more artifacts.
inline Signal SpectralSubtract(const Signal &y, const ReferencePair &pair,
                               const StftConfig &cfg, double oversub,
                               double floor) {
  if (!(oversub >= 0.0) || !std::isfinite(oversub)) {
    throw ValidationError("spectral_subtract: oversub must be >= 0");
  }
  if (!(floor > 0.0 && floor < 1.0)) {
    throw ValidationError("spectral_subtract: floor must lie in (0, 1)");
  }
  return internal::ApplyOracleGain(
      y, pair, cfg, [oversub, floor](Complex, Complex n, Complex yb) {
        const double mag = std::abs(yb);
        if (mag == 0.0) return 0.0;
        return SubtractedMagnitude(mag, oversub * std::abs(n), floor) / mag;
      });
}

}  // namespace sedecomp
