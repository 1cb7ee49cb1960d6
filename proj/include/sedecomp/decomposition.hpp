// sedecomp/decomposition.hpp

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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sedecomp/error.hpp"
#include "sedecomp/signal.hpp"

namespace sedecomp {

/// Collinearity limit on the (unit-normalized) speech/noise Gram matrix.
inline constexpr double kMaxGramCondition = 1e12;

/// Orthogonal projection of `x` onto the line spanned by `basis`:
/// (<x, basis> / <basis, basis>) * basis. Never forms a T x T matrix.
inline Signal ProjectSpan1(const Signal &x, const Signal &basis) {
  if (x.size() != basis.size()) {
    throw ValidationError("project_span1: length mismatch (" +
                          std::to_string(x.size()) + " vs " +
                          std::to_string(basis.size()) + ")");
  }
  const double energy = Energy(basis);
  if (energy == 0.0) {
    throw DegenerateError("project_span1: basis is the all-zero vector");
  }
  const double coef = linalg::Dot(x.samples(), basis.samples()) / energy;
  return Signal(linalg::Scaled(coef, basis.samples()), x.sample_rate());
}

/// Reference speech and noise used as the basis of the decomposition.
///
/// On construction the noise is orthogonalized against the speech (two
/// Gram-Schmidt passes), so the rank-2 projection is evaluated as
/// P_s x + P_{n_perp} x. Doing it in this order keeps P_s P_{s,n} = P_s at
/// machine precision. The pair is rejected when either vector is zero or when
/// the Gram matrix of the unit-normalized vectors has condition number above
/// kMaxGramCondition.
class ReferencePair {
 public:
  ReferencePair(Signal speech, Signal noise)
      : speech_(std::move(speech)), noise_(std::move(noise)) {
    RequireSameShape(speech_, noise_, "reference pair");
    speech_energy_ = Energy(speech_);
    noise_energy_ = Energy(noise_);
    if (speech_energy_ == 0.0) {
      throw DegenerateError("reference speech is the all-zero vector");
    }
    if (noise_energy_ == 0.0) {
      throw DegenerateError("reference noise is the all-zero vector");
    }

    const auto s = speech_.samples();
    std::vector<double> perp(noise_.vector());
    for (int pass = 0; pass < 2; ++pass) {
      const double coef = linalg::Dot(perp, s) / speech_energy_;
      for (std::size_t i = 0; i < perp.size(); ++i) perp[i] -= coef * s[i];
    }
    noise_perp_energy_ = linalg::SquaredNorm(perp);
    noise_perp_ = std::move(perp);

    // Normalized Gram [[1, rho], [rho, 1]] has eigenvalues 1 +- |rho|;
    // 1 - rho^2 is read off the orthogonalized noise to avoid cancellation.
    const double sin2 = noise_perp_energy_ / noise_energy_;
    const double abs_rho = std::sqrt(std::max(0.0, 1.0 - sin2));
    condition_ = sin2 > 0.0 ? (1.0 + abs_rho) * (1.0 + abs_rho) / sin2
                            : std::numeric_limits<double>::infinity();
    if (!(condition_ <= kMaxGramCondition)) {
      throw DegenerateError(
          "speech and noise references are collinear (Gram condition number " +
          std::to_string(condition_) + " exceeds 1e12)");
    }
  }

  const Signal &speech() const noexcept { return speech_; }
  const Signal &noise() const noexcept { return noise_; }
  std::size_t size() const noexcept { return speech_.size(); }
  int sample_rate() const noexcept { return speech_.sample_rate(); }

  /// Condition number of the Gram matrix of the unit-normalized references.
  double gram_condition() const noexcept { return condition_; }

  double speech_energy() const noexcept { return speech_energy_; }
  std::span<const double> noise_perp() const noexcept { return noise_perp_; }
  double noise_perp_energy() const noexcept { return noise_perp_energy_; }

  /// The mixture s + n, which lies inside the reference subspace.
  Signal Mixture() const { return Add(speech_, noise_); }

 private:
  Signal speech_;
  Signal noise_;
  double speech_energy_ = 0.0;
  double noise_energy_ = 0.0;
  std::vector<double> noise_perp_;
  double noise_perp_energy_ = 0.0;
  double condition_ = 0.0;
};

namespace internal {

// Coordinates of P_{s,n} x in the (s, n_perp) basis, refined once so that the
// residual is orthogonal to the subspace even when x nearly lies inside it.
struct SpanCoordinates {
  double along_speech = 0.0;
  double along_noise_perp = 0.0;
};

inline SpanCoordinates Coordinates(std::span<const double> x,
                                   const ReferencePair &pair) {
  const auto s = pair.speech().samples();
  const auto q = pair.noise_perp();
  SpanCoordinates c;
  c.along_speech = linalg::Dot(x, s) / pair.speech_energy();
  c.along_noise_perp = linalg::Dot(x, q) / pair.noise_perp_energy();

  std::vector<double> residual(x.begin(), x.end());
  for (std::size_t i = 0; i < residual.size(); ++i) {
    residual[i] -= c.along_speech * s[i] + c.along_noise_perp * q[i];
  }
  c.along_speech += linalg::Dot(residual, s) / pair.speech_energy();
  c.along_noise_perp += linalg::Dot(residual, q) / pair.noise_perp_energy();
  return c;
}

inline void RequireCompatible(const Signal &x, const ReferencePair &pair,
                              const char *what) {
  RequireSameShape(x, pair.speech(), what);
}

}  // namespace internal

/// Orthogonal projection onto span{s, n}: the least-squares fit of x by the
/// two references.
inline Signal ProjectSpan2(const Signal &x, const ReferencePair &pair) {
  if (x.size() != pair.size()) {
    throw ValidationError("project_span2: length mismatch (" +
                          std::to_string(x.size()) + " vs " +
                          std::to_string(pair.size()) + ")");
  }
  const auto c = internal::Coordinates(x.samples(), pair);
  const auto s = pair.speech().samples();
  const auto q = pair.noise_perp();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = c.along_speech * s[i] + c.along_noise_perp * q[i];
  }
  return Signal(std::move(out), x.sample_rate());
}

/// The three orthogonal parts of an enhanced signal:
///   s_target = P_s shat
///   e_noise  = P_{s,n} shat - P_s shat
///   e_artif  = shat - P_{s,n} shat
struct Decomposition {
  Signal s_target;
  Signal e_noise;
  Signal e_artif;

  /// e_total = shat - s_target = e_noise + e_artif.
  Signal TotalError() const { return Add(e_noise, e_artif); }
  /// s_target + e_noise + e_artif.
  Signal Reconstruct() const { return Add(Add(s_target, e_noise), e_artif); }
};

inline Decomposition Decompose(const Signal &shat, const ReferencePair &pair) {
  internal::RequireCompatible(shat, pair, "decompose");
  const auto c = internal::Coordinates(shat.samples(), pair);
  const auto s = pair.speech().samples();
  const auto q = pair.noise_perp();
  const auto x = shat.samples();
  const std::size_t n = shat.size();

  std::vector<double> target(n), noise(n), artif(n);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = c.along_speech * s[i];
    noise[i] = c.along_noise_perp * q[i];
    artif[i] = x[i] - target[i] - noise[i];
  }
  const int rate = shat.sample_rate();
  return Decomposition{Signal(std::move(target), rate),
                       Signal(std::move(noise), rate),
                       Signal(std::move(artif), rate)};
}

/// <P_{s,n} shat, y>. When non-negative, interpolating shat towards y cannot
/// lower SAR.
inline double SubspaceCorrelation(const Signal &shat, const Signal &y,
                                  const ReferencePair &pair) {
  internal::RequireCompatible(shat, pair, "subspace correlation");
  internal::RequireCompatible(y, pair, "subspace correlation");
  return linalg::Dot(ProjectSpan2(shat, pair).samples(), y.samples());
}

}  // namespace sedecomp
