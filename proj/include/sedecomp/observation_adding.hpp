// sedecomp/observation_adding.hpp

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
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sedecomp/decomposition.hpp"
#include "sedecomp/error.hpp"
#include "sedecomp/metrics.hpp"
#include "sedecomp/signal.hpp"

namespace sedecomp {

/// Interpolation weight of the observed signal, in [0, 1].
class OAWeight {
 public:
  explicit OAWeight(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError("observation-adding weight must lie in [0, 1], got " +
                            std::to_string(value));
    }
  }
  double value() const noexcept { return value_; }
  auto operator<=>(const OAWeight &) const = default;

 private:
  double value_;
};

/// (1 - w) * shat + w * y. The endpoints return the inputs unchanged.
inline Signal ObservationAdd(const Signal &shat, const Signal &y, OAWeight w) {
  RequireSameShape(shat, y, "observation_add");
  if (w.value() == 0.0) return shat;
  if (w.value() == 1.0) return y;
  const double keep = 1.0 - w.value();
  const auto a = shat.samples();
  const auto b = y.samples();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = keep * a[i] + w.value() * b[i];
  }
  return Signal(std::move(out), shat.sample_rate());
}

inline void RequireStrictlyIncreasing(const std::vector<OAWeight> &grid) {
  if (grid.empty()) throw ValidationError("weight grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw ValidationError("weight grid must be strictly increasing");
    }
  }
}

/// Parses "start:end:step". Both ends are included when the step divides the
/// range; points are snapped to 1e-12 so that 0.1 * 3 prints as 0.3.
inline std::vector<OAWeight> ParseGrid(std::string_view spec) {
  double v[3];
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t next = spec.find(':', pos);
    const bool last = (k == 2);
    if (last != (next == std::string_view::npos)) {
      throw ValidationError("grid must look like start:end:step, got '" +
                            std::string(spec) + "'");
    }
    const std::string field(spec.substr(pos, last ? spec.npos : next - pos));
    char *end = nullptr;
    v[k] = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() ||
        !std::isfinite(v[k])) {
      throw ValidationError("bad grid field '" + field + "'");
    }
    pos = next + 1;
  }
  const double start = v[0], stop = v[1], step = v[2];
  if (!(step > 0.0)) throw ValidationError("grid step must be positive");
  if (stop < start) throw ValidationError("grid end precedes start");
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<OAWeight> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double raw = start + static_cast<double>(i) * step;
    grid.emplace_back(std::round(raw * 1e12) / 1e12);
  }
  RequireStrictlyIncreasing(grid);
  return grid;
}

/// {0.0, 0.1, ..., 1.0}
inline std::vector<OAWeight> DefaultGrid() { return ParseGrid("0:1:0.1"); }

/// Arg-best over (weight, score) pairs. Ties go to the smallest weight, so
/// the result does not depend on the order of `scores`.
inline OAWeight SelectWeight(const std::vector<std::pair<OAWeight, double>> &scores,
                             bool lower_is_better = true) {
  if (scores.empty()) throw ValidationError("select_weight: no scores");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i].second)) {
      throw ValidationError("select_weight: NaN score");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (scores[i].first == scores[j].first) {
        throw ValidationError("select_weight: duplicate weight " +
                              std::to_string(scores[i].first.value()));
      }
    }
  }
  const auto *best = &scores.front();
  for (const auto &cand : scores) {
    const bool better = lower_is_better ? cand.second < best->second
                                        : cand.second > best->second;
    if (better || (cand.second == best->second && cand.first < best->first)) {
      best = &cand;
    }
  }
  return best->first;
}

struct SweepPoint {
  OAWeight omega;
  MetricsReport report;
  MetricEnergies energies;
  std::optional<double> score;
};

struct SweepResult {
  std::vector<OAWeight> grid;
  std::vector<SweepPoint> per_weight;
  std::optional<OAWeight> selected;
  std::string selection_rule;

  /// <P_{s,n} shat, y> and whether it meets the SAR monotonicity condition.
  double subspace_correlation = 0.0;
  bool monotone_condition = false;
  /// Measured: SAR never decreases along the grid.
  bool sar_nondecreasing = false;
};

/// True when values never drop by more than `slack` (absolute, in dB).
inline bool IsNondecreasing(const std::vector<double> &values,
                            double slack = 0.0) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1] - slack) return false;
  }
  return true;
}

/// Roundoff allowance for the measured SAR monotonicity flag.
inline constexpr double kSarMonotoneSlackDb = 1e-9;

/// Metrics of the interpolated signal at every grid weight. The
/// monotonicity condition is reported, not enforced.
inline SweepResult Sweep(const Signal &shat, const Signal &y,
                         const ReferencePair &pair,
                         const std::vector<OAWeight> &grid,
                         bool with_si_snr = true) {
  RequireStrictlyIncreasing(grid);
  RequireSameShape(shat, y, "sweep");
  SweepResult result;
  result.grid = grid;
  result.subspace_correlation = SubspaceCorrelation(shat, y, pair);
  result.monotone_condition = result.subspace_correlation >= 0.0;

  std::vector<double> sar;
  for (const OAWeight w : grid) {
    const Signal mixed = ObservationAdd(shat, y, w);
    Evaluation ev = Evaluate(mixed, pair, with_si_snr);
    sar.push_back(ev.report.sar_db);
    result.per_weight.push_back(SweepPoint{w, ev.report, ev.energies, {}});
  }
  result.sar_nondecreasing = IsNondecreasing(sar, kSarMonotoneSlackDb);
  return result;
}

/// Binds external scores (e.g. development-set WERs) to the grid and selects
/// the weight. Every scored weight must be a grid point (to 1e-9).
inline void AttachScores(SweepResult &result,
                         const std::vector<std::pair<OAWeight, double>> &scores,
                         bool lower_is_better = true) {
  std::vector<std::pair<OAWeight, double>> on_grid;
  for (const auto &[w, score] : scores) {
    bool found = false;
    for (auto &point : result.per_weight) {
      if (std::abs(point.omega.value() - w.value()) <= 1e-9) {
        point.score = score;
        on_grid.emplace_back(point.omega, score);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ValidationError("scored weight " + std::to_string(w.value()) +
                            " is not on the sweep grid");
    }
  }
  result.selected = SelectWeight(on_grid, lower_is_better);
  result.selection_rule = std::string(lower_is_better ? "min" : "max") +
                          "-score, ties toward smallest omega";
}

}  // namespace sedecomp
