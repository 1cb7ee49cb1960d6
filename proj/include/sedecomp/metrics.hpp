// sedecomp/metrics.hpp

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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sedecomp/decomposition.hpp"
#include "sedecomp/error.hpp"
#include "sedecomp/signal.hpp"

namespace sedecomp {

/// Ratios whose denominator is below this fraction of the numerator are
/// reported as +inf (and symmetrically -inf). Finite ratios are never
/// perturbed by an epsilon.
inline constexpr double kCapRelativeThreshold = 1e-30;

/// 10 log10(numerator / denominator) with capped-infinity semantics.
/// Returns +inf / -inf as the capped markers; throws DegenerateError on 0/0.
inline double RatioToDb(double numerator, double denominator,
                        const char *what = "metric") {
  if (numerator == 0.0 && denominator == 0.0) {
    throw DegenerateError(std::string(what) +
                          " is undefined: numerator and denominator are zero");
  }
  if (denominator <= kCapRelativeThreshold * numerator) {
    return std::numeric_limits<double>::infinity();
  }
  if (numerator <= kCapRelativeThreshold * denominator) {
    return -std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(numerator / denominator);
}

/// Energies behind every metric of one signal. Kept separately from the dB
/// values so that corpus-level (pooled) scores can be formed from sums.
struct MetricEnergies {
  double target = 0.0;             // |s_target|^2
  double noise = 0.0;              // |e_noise|^2
  double artif = 0.0;              // |e_artif|^2
  double total_error = 0.0;        // |e_noise + e_artif|^2
  double target_plus_noise = 0.0;  // |s_target + e_noise|^2
  bool has_si = false;
  double si_projection = 0.0;  // SI-SNR numerator
  double si_residual = 0.0;    // SI-SNR denominator

  MetricEnergies &operator+=(const MetricEnergies &o) {
    target += o.target;
    noise += o.noise;
    artif += o.artif;
    total_error += o.total_error;
    target_plus_noise += o.target_plus_noise;
    has_si = has_si && o.has_si;
    si_projection = has_si ? si_projection + o.si_projection : 0.0;
    si_residual = has_si ? si_residual + o.si_residual : 0.0;
    return *this;
  }
};

inline MetricEnergies ComputeEnergies(const Decomposition &d) {
  MetricEnergies e;
  e.target = Energy(d.s_target);
  e.noise = Energy(d.e_noise);
  e.artif = Energy(d.e_artif);
  e.total_error = Energy(d.TotalError());
  e.target_plus_noise = Energy(Add(d.s_target, d.e_noise));
  return e;
}

inline double Sdr(const Decomposition &d) {
  return RatioToDb(Energy(d.s_target), Energy(d.TotalError()), "SDR");
}

inline double Snr(const Decomposition &d) {
  return RatioToDb(Energy(d.s_target), Energy(d.e_noise), "SNR");
}

inline double Sar(const Decomposition &d) {
  return RatioToDb(Energy(Add(d.s_target, d.e_noise)), Energy(d.e_artif),
                   "SAR");
}

struct SiSnrEnergies {
  double projection = 0.0;
  double residual = 0.0;
};

/// Both signals are made zero-mean first (unlike SDR/SNR/SAR, which use the
/// raw waveforms); then shat is projected onto s.
inline SiSnrEnergies ComputeSiSnrEnergies(const Signal &shat, const Signal &s) {
  if (shat.size() != s.size()) {
    throw ValidationError("si_snr: length mismatch (" +
                          std::to_string(shat.size()) + " vs " +
                          std::to_string(s.size()) + ")");
  }
  const std::size_t n = s.size();
  double mean_est = 0.0, mean_ref = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_est += shat[i];
    mean_ref += s[i];
  }
  mean_est /= static_cast<double>(n);
  mean_ref /= static_cast<double>(n);

  std::vector<double> est(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    est[i] = shat[i] - mean_est;
    ref[i] = s[i] - mean_ref;
  }
  const double ref_energy = linalg::SquaredNorm(ref);
  if (ref_energy == 0.0) {
    throw DegenerateError("si_snr: reference is constant");
  }
  const double coef = linalg::Dot(est, ref) / ref_energy;
  SiSnrEnergies e;
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = est[i] - coef * ref[i];
    resid += r * r;
  }
  e.projection = coef * coef * ref_energy;
  e.residual = resid;
  return e;
}

inline double SiSnr(const Signal &shat, const Signal &s) {
  const auto e = ComputeSiSnrEnergies(shat, s);
  return RatioToDb(e.projection, e.residual, "SI-SNR");
}

/// SDR/SNR/SAR (and optionally SI-SNR) of one signal, in dB. Infinite values
/// stand for the capped markers and are written as "inf" / "-inf".
struct MetricsReport {
  double sdr_db = 0.0;
  double snr_db = 0.0;
  double sar_db = 0.0;
  std::optional<double> si_snr_db;
};

inline MetricsReport ReportFromEnergies(const MetricEnergies &e) {
  MetricsReport r;
  r.sdr_db = RatioToDb(e.target, e.total_error, "SDR");
  r.snr_db = RatioToDb(e.target, e.noise, "SNR");
  r.sar_db = RatioToDb(e.target_plus_noise, e.artif, "SAR");
  if (e.has_si) {
    r.si_snr_db = RatioToDb(e.si_projection, e.si_residual, "SI-SNR");
  }
  return r;
}

struct Evaluation {
  Decomposition decomposition;
  MetricEnergies energies;
  MetricsReport report;
};

inline Evaluation Evaluate(const Signal &shat, const ReferencePair &pair,
                           bool with_si_snr = true) {
  Decomposition d = Decompose(shat, pair);
  MetricEnergies e = ComputeEnergies(d);
  if (with_si_snr) {
    const auto si = ComputeSiSnrEnergies(shat, pair.speech());
    e.has_si = true;
    e.si_projection = si.projection;
    e.si_residual = si.residual;
  }
  MetricsReport r = ReportFromEnergies(e);
  return Evaluation{std::move(d), e, r};
}

enum class Averaging {
  kPerUtterance,  // arithmetic mean of per-utterance dB values
  kPooled,        // dB of summed energies across utterances
};

/// Per-utterance mean of dB values. Capped infinities propagate.
inline MetricsReport MeanReport(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw ValidationError("cannot average zero reports");
  MetricsReport m;
  bool have_si = true;
  double si = 0.0;
  for (const auto &r : reports) {
    m.sdr_db += r.sdr_db;
    m.snr_db += r.snr_db;
    m.sar_db += r.sar_db;
    if (r.si_snr_db) {
      si += *r.si_snr_db;
    } else {
      have_si = false;
    }
  }
  const double n = static_cast<double>(reports.size());
  m.sdr_db /= n;
  m.snr_db /= n;
  m.sar_db /= n;
  if (have_si) m.si_snr_db = si / n;
  return m;
}

inline MetricsReport PooledReport(std::span<const MetricEnergies> energies) {
  if (energies.empty()) throw ValidationError("cannot pool zero utterances");
  MetricEnergies total = energies.front();
  for (std::size_t i = 1; i < energies.size(); ++i) total += energies[i];
  return ReportFromEnergies(total);
}

}  // namespace sedecomp
