// tests/acceptance/acceptance_main.cpp

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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sedecomp/sedecomp.hpp"
#include "sedecomp_cli.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/published_rows.hpp"

namespace sedecomp {
namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::size_t kSuiteSize = 1000;
constexpr std::uint64_t kSuiteSeed = 900001;

// Instance i of the shared random suite, T in [8, 4096].
testing::RandomInstance SuiteInstance(std::size_t i) {
  Rng rng(kSuiteSeed + i);
  return testing::MakeRandomInstance(rng, 8, 4096);
}

class Verdict {
 public:
  void Require(bool ok, const std::string &what) {
    if (!ok && failures_++ < 5) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const {
    if (failures_ <= 5) return notes_;
    return notes_ + "; +" + std::to_string(failures_ - 5) + " more";
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double NormalizedDot(const Signal &a, const Signal &b) {
  const double na = linalg::Norm(a.samples()), nb = linalg::Norm(b.samples());
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(linalg::Dot(a.samples(), b.samples())) / (na * nb);
}

double NormDiff(const Signal &a, std::span<const double> b) {
  return linalg::Norm(linalg::Difference(a.samples(), b));
}

// ---------------------------------------------------------------------------

Verdict DecompositionSuite(std::string &detail) {
  Verdict v;
  double worst_recon = 0, worst_pyth = 0, worst_orth = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < kSuiteSize; ++i) {
    const auto inst = SuiteInstance(i);
    const ReferencePair pair(inst.s, inst.n);
    const Decomposition d = Decompose(inst.shat, pair);
    const double norm = linalg::Norm(inst.shat.samples());
    const double recon = NormDiff(d.Reconstruct(), inst.shat.samples()) / norm;
    const double pyth = std::abs(Energy(d.s_target) + Energy(d.e_noise) +
                                 Energy(d.e_artif) - Energy(inst.shat)) /
                        Energy(inst.shat);
    const double orth = std::max({NormalizedDot(d.s_target, d.e_noise),
                                  NormalizedDot(d.e_artif, inst.s),
                                  NormalizedDot(d.e_artif, inst.n)});
    worst_recon = std::max(worst_recon, recon);
    worst_pyth = std::max(worst_pyth, pyth);
    worst_orth = std::max(worst_orth, orth);
    v.Require(recon <= 1e-9, "reconstruction #" + std::to_string(i));
    v.Require(pyth <= 1e-8, "energy split #" + std::to_string(i));
    v.Require(orth <= 1e-8, "orthogonality #" + std::to_string(i));
  }
  const double elapsed = Seconds(start);
  v.Require(elapsed < 5.0, "runtime " + Fmt(elapsed) + " s");

  double worst_oracle = 0;
  Rng rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = testing::MakeRandomInstance(rng, 8, 16);
    const ReferencePair pair(inst.s, inst.n);
    const Decomposition d = Decompose(inst.shat, pair);
    const auto oracle = testing::LeastSquaresDecompose(
        inst.shat.vector(), inst.s.vector(), inst.n.vector());
    const double err = std::max({testing::MaxAbsDiff(d.s_target.samples(), oracle.s_target),
                                 testing::MaxAbsDiff(d.e_noise.samples(), oracle.e_noise),
                                 testing::MaxAbsDiff(d.e_artif.samples(), oracle.e_artif)});
    worst_oracle = std::max(worst_oracle, err);
    v.Require(err <= 1e-10, "least-squares oracle T=" + std::to_string(inst.s.size()));
  }
  detail = "recon " + Fmt(worst_recon) + ", energy " + Fmt(worst_pyth) + ", orth " +
           Fmt(worst_orth) + ", oracle " + Fmt(worst_oracle) + ", " + Fmt(elapsed) +
           " s";
  return v;
}

Verdict MetricOrdering(std::string &detail) {
  Verdict v;
  std::size_t finite = 0;
  for (std::size_t i = 0; i < kSuiteSize; ++i) {
    const auto inst = SuiteInstance(i);
    const ReferencePair pair(inst.s, inst.n);
    const Decomposition d = Decompose(inst.shat, pair);
    const double sdr = Sdr(d), snr = Snr(d), sar = Sar(d);
    if (!std::isfinite(sdr) || !std::isfinite(snr) || !std::isfinite(sar)) continue;
    ++finite;
    v.Require(sdr <= snr + 1e-6 && sdr <= sar + 1e-6, "instance #" + std::to_string(i));
  }
  for (const auto &r : testing::kPublishedRows) {
    v.Require(r.sdr_db <= std::min(r.snr_db, r.sar_db), std::string("row ") + r.label);
  }
  detail = std::to_string(finite) + " finite instances, " +
           std::to_string(std::size(testing::kPublishedRows)) + " published rows";
  return v;
}

Verdict ObservationAddingLaws(std::string &detail) {
  Verdict v;
  const auto grid = DefaultGrid();
  std::size_t monotone_checked = 0;
  double worst = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < kSuiteSize; ++i) {
    const auto inst = SuiteInstance(i);
    const ReferencePair pair(inst.s, inst.n);
    const Signal y = pair.Mixture();
    const Signal base = Decompose(inst.shat, pair).e_artif;
    const double scale = linalg::Norm(base.samples());
    std::vector<double> sar;
    for (const OAWeight w : grid) {
      const Decomposition d = Decompose(ObservationAdd(inst.shat, y, w), pair);
      const Signal want = Scale(base, 1.0 - w.value());
      const double err = testing::MaxAbsDiff(d.e_artif.samples(), want.samples()) / scale;
      worst = std::max(worst, err);
      v.Require(err <= 1e-12, "artifact law #" + std::to_string(i) + " omega " +
                                  Fmt(w.value()));
      sar.push_back(Sar(d));
    }
    v.Require(sar.back() == kInf, "SAR at omega 1 #" + std::to_string(i));
    if (SubspaceCorrelation(inst.shat, y, pair) >= 0.0) {
      ++monotone_checked;
      bool ok = true;
      for (std::size_t k = 1; k < sar.size(); ++k) ok = ok && sar[k] >= sar[k - 1];
      v.Require(ok, "SAR monotone #" + std::to_string(i));
    }
  }
  const double elapsed = Seconds(start);
  v.Require(elapsed < 10.0, "runtime " + Fmt(elapsed) + " s");
  v.Require(monotone_checked > 0, "no instance met the monotone condition");
  detail = "worst artifact deviation " + Fmt(worst) + ", " +
           std::to_string(monotone_checked) + " monotone curves, " + Fmt(elapsed) + " s";
  return v;
}

Verdict ScaleInvariance(std::string &detail) {
  Verdict v;
  double worst = 0;
  for (std::size_t i = 0; i < kSuiteSize; ++i) {
    const auto inst = SuiteInstance(i);
    const ReferencePair pair(inst.s, inst.n);
    const MetricsReport base = Evaluate(inst.shat, pair).report;
    for (const double c : {1e-3, 0.5, 7.0, 1e3}) {
      const MetricsReport r = Evaluate(Scale(inst.shat, c), pair).report;
      const double dev = std::max({std::abs(r.sdr_db - base.sdr_db),
                                   std::abs(r.snr_db - base.snr_db),
                                   std::abs(r.sar_db - base.sar_db),
                                   std::abs(*r.si_snr_db - *base.si_snr_db)});
      worst = std::max(worst, dev);
      v.Require(dev <= 1e-9, "instance #" + std::to_string(i) + " c=" + Fmt(c));
    }
  }
  detail = "worst deviation " + Fmt(worst) + " dB over " + std::to_string(kSuiteSize) + " instances x 4 scales";
  return v;
}

Verdict SyntheticOracle(std::string &detail) {
  Verdict v;
  Rng rng(777);
  double worst = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto inst = SuiteInstance(i);
    const ReferencePair pair(inst.s, inst.n);
    const SpanMixSpec spec{rng.Uniform(-2, 2), rng.Uniform(-2, 2), rng.Uniform(-2, 2)};
    const std::uint64_t seed = 5000 + i;
    const Signal shat = SpanEnhancer(pair, spec, seed);
    const Decomposition d = Decompose(shat, pair);
    const Signal ps_n = ProjectSpan1(inst.n, inst.s);
    const Signal target = Add(Scale(inst.s, spec.a), Scale(ps_n, spec.b));
    const Signal noise = Scale(Subtract(inst.n, ps_n), spec.b);
    const Signal artif = Scale(ArtifactDirection(pair, seed), spec.c);
    const double scale = linalg::Norm(shat.samples());
    const double err = std::max({testing::MaxAbsDiff(d.s_target.samples(), target.samples()),
                                 testing::MaxAbsDiff(d.e_noise.samples(), noise.samples()),
                                 testing::MaxAbsDiff(d.e_artif.samples(), artif.samples())}) /
                       scale;
    worst = std::max(worst, err);
    v.Require(err <= 1e-10, "span instance #" + std::to_string(i));
  }

  // Orthonormal references: SNR = 10 log10(1 / b^2), SAR = 10 log10((1 + b^2) / c^2).
  const Signal s0 = SyntheticSpeech(4000, 16000, 3);
  const Signal s = Scale(s0, 1.0 / linalg::Norm(s0.samples()));
  const Signal n0 = OrthogonalizeAgainst(WhiteNoise(4000, 16000, 4), s);
  const Signal n = Scale(n0, 1.0 / linalg::Norm(n0.samples()));
  const ReferencePair pair(s, n);
  const Decomposition d = Decompose(SpanEnhancer(pair, {1.0, 0.5, 0.2}, 1), pair);
  const double snr = Snr(d), sar = Sar(d);
  v.Require(std::abs(snr - 10 * std::log10(4.0)) <= 1e-6, "worked SNR " + Fmt(snr));
  v.Require(std::abs(sar - 10 * std::log10(1.25 / 0.04)) <= 1e-6, "worked SAR " + Fmt(sar));
  char buf[96];
  std::snprintf(buf, sizeof buf, ", worked example SNR %.6f dB SAR %.6f dB", snr, sar);
  detail = "worst component deviation " + Fmt(worst) + buf;
  return v;
}

Verdict DirectionalTrend(std::string &detail) {
  Verdict v;
  const Signal s = SyntheticSpeech(16000, 16000, 1);
  const Mixture mix = MixAtSnr(s, WhiteNoise(16000, 16000, 1001), 5.0);
  const ReferencePair pair(s, mix.scaled_noise);
  std::vector<MetricsReport> by_oversub;
  for (const double oversub : {0.5, 1.0, 2.0}) {
    const Signal shat = SpectralSubtract(mix.observed, pair, {}, oversub, 0.05);
    const SweepResult r = Sweep(shat, mix.observed, pair, DefaultGrid(), false);
    for (std::size_t k = 1; k < r.per_weight.size(); ++k) {
      const auto &prev = r.per_weight[k - 1].report, &cur = r.per_weight[k].report;
      v.Require(cur.snr_db < prev.snr_db, "SNR not falling at oversub " + Fmt(oversub));
      v.Require(cur.sar_db > prev.sar_db, "SAR not rising at oversub " + Fmt(oversub));
    }
    by_oversub.push_back(r.per_weight.front().report);
  }
  for (std::size_t k = 1; k < by_oversub.size(); ++k) {
    v.Require(by_oversub[k].snr_db > by_oversub[k - 1].snr_db, "oversub SNR trend");
    v.Require(by_oversub[k].sar_db < by_oversub[k - 1].sar_db, "oversub SAR trend");
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "oversub 0.5/1/2: SNR %.1f/%.1f/%.1f dB, SAR %.1f/%.1f/%.1f dB",
                by_oversub[0].snr_db, by_oversub[1].snr_db, by_oversub[2].snr_db,
                by_oversub[0].sar_db, by_oversub[1].sar_db, by_oversub[2].sar_db);
  detail = buf;
  return v;
}

Verdict MixerCalibration(std::string &detail) {
  Verdict v;
  double worst_snr = 0, worst_artif = 0;
  for (const std::uint64_t seed : {1u, 2u, 3u}) {
    const Signal s = SyntheticSpeech(16000, 16000, seed);
    const Signal n = OrthogonalizeAgainst(WhiteNoise(16000, 16000, seed + 1000), s);
    for (const double target : {-5.0, 0.0, 5.0, 20.0}) {
      const Mixture mix = MixAtSnr(s, n, target);
      const ReferencePair pair(s, mix.scaled_noise);
      const Decomposition d = Decompose(mix.observed, pair);
      const double dev = std::abs(Snr(d) - target);
      const double artif = linalg::Norm(d.e_artif.samples()) /
                           linalg::Norm(mix.observed.samples());
      worst_snr = std::max(worst_snr, dev);
      worst_artif = std::max(worst_artif, artif);
      v.Require(dev <= 1e-6, "SNR at " + Fmt(target) + " dB");
      v.Require(artif <= 1e-9, "artifact at " + Fmt(target) + " dB");
    }
  }
  detail = "worst SNR deviation " + Fmt(worst_snr) + " dB, artifact ratio " +
           Fmt(worst_artif);
  return v;
}

Verdict StftRoundTrip(std::string &detail) {
  Verdict v;
  const StftConfig cfg;
  const std::size_t window = cfg.Geometry(16000).window;
  std::vector<double> sine(16000);
  for (std::size_t i = 0; i < sine.size(); ++i) {
    sine[i] = std::sin(2.0 * std::numbers::pi * 440.0 * static_cast<double>(i) / 16000.0);
  }
  std::vector<double> impulse(16000, 0.0);
  impulse[8000] = 1.0;
  const std::vector<std::pair<std::string, Signal>> cases = {
      {"sine", Signal(sine)},
      {"impulse", Signal(impulse)},
      {"noise", WhiteNoise(16000, 16000, 9, 1.0)}};
  std::string worst;
  for (const auto &[name, x] : cases) {
    const Signal back = Istft(Stft(x, cfg), x.size());
    double peak = 0, err = 0;
    for (std::size_t i = window; i + window < x.size(); ++i) {
      peak = std::max(peak, std::abs(x[i]));
      err = std::max(err, std::abs(back[i] - x[i]));
    }
    v.Require(err <= 1e-6 * peak, name + " error " + Fmt(err / peak));
    worst += (worst.empty() ? "" : ", ") + name + " " + Fmt(err / peak);
  }
  detail = "relative interior error: " + worst;
  return v;
}

Verdict WerOracle(std::string &detail) {
  Verdict v;
  Rng rng(31337);
  std::size_t exhaustive = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto ref = testing::RandomTokens(rng, 12, 4);
    const auto hyp = testing::RandomTokens(rng, 12, 4);
    const std::size_t d = EditDistance(ref, hyp);
    v.Require(d == testing::MemoEditDistance(ref, hyp), "pair #" + std::to_string(trial));
    if (ref.size() + hyp.size() <= 16) {
      ++exhaustive;
      v.Require(d == testing::ExhaustiveEditDistance(ref, 0, hyp, 0),
                "exhaustive pair #" + std::to_string(trial));
    }
  }
  for (int corpus = 0; corpus < 50; ++corpus) {
    WerCounts pooled;
    std::size_t errors = 0, tokens = 0;
    const std::size_t count = rng.Integer(1, 20);
    for (std::size_t u = 0; u < count; ++u) {
      auto ref = testing::RandomTokens(rng, 12, 5);
      if (ref.empty()) ref.push_back("w0");
      const auto hyp = testing::RandomTokens(rng, 12, 5);
      pooled.Add(ref, hyp);
      errors += testing::MemoEditDistance(ref, hyp);
      tokens += ref.size();
    }
    v.Require(pooled.errors == errors && pooled.ref_tokens == tokens &&
                  pooled.Rate() == static_cast<double>(errors) / static_cast<double>(tokens),
              "corpus #" + std::to_string(corpus));
  }
  detail = "200 pairs (" + std::to_string(exhaustive) +
           " also checked exhaustively), 50 pooled corpora";
  return v;
}

Verdict CliDeterminism(std::string &detail) {
  Verdict v;
  const auto start = Clock::now();
  testing::TempDir dir("acceptance");
  const auto corpus = testing::WriteSyntheticCorpus(
      dir.path(), {.utterances = 50, .samples = 16000, .seed = 7});
  const std::string manifest = corpus.manifest.string();

  auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "sedecomp");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
    v.Require(code == 0, "exit " + std::to_string(code) + ": " + err.str());
    return out.str();
  };
  auto file = [&](const std::string &name) { return testing::ReadFile(dir / name); };

  std::size_t compared = 0;
  for (const std::string jobs : {"1", "8"}) {
    const std::string tag = "_j" + jobs;
    run({"--jobs", jobs, "decompose", manifest, "--out", (dir / ("dec" + tag + ".csv")).string()});
    run({"--jobs", jobs, "decompose", manifest, "--pooled", "--out",
         (dir / ("dec" + tag + ".json")).string()});
    run({"--jobs", jobs, "oa", manifest, "--sweep", "--out",
         (dir / ("sweep" + tag + ".csv")).string(), "--summary",
         (dir / ("sweep" + tag + ".json")).string()});
    run({"--jobs", jobs, "oa", manifest, "--omega", "0.4", "--out",
         (dir / ("fixed" + tag + ".md")).string(), "--emit-audio",
         (dir / ("audio" + tag)).string()});
  }
  for (const std::string name :
       {"dec_j1.csv", "dec_j1.json", "sweep_j1.csv", "sweep_j1.json", "fixed_j1.md"}) {
    std::string other = name;
    other.replace(other.find("_j1"), 3, "_j8");
    const std::string a = file(name);
    v.Require(!a.empty() && a == file(other), name + " differs");
    ++compared;
  }
  for (const auto &id : corpus.ids) {
    v.Require(file("audio_j1/" + id + ".wav") == file("audio_j8/" + id + ".wav"),
              "audio " + id + " differs");
    ++compared;
  }
  const double elapsed = Seconds(start);
  v.Require(elapsed < 30.0, "runtime " + Fmt(elapsed) + " s");
  detail = std::to_string(compared) + " outputs identical, " + Fmt(elapsed) + " s";
  return v;
}

struct Criterion {
  const char *name;
  std::function<Verdict(std::string &)> run;
};

}  // namespace
}  // namespace sedecomp

int main() {
  using namespace sedecomp;
  const Criterion criteria[] = {
      {"AC1 decomposition invariants and least-squares oracle", DecompositionSuite},
      {"AC2 SDR <= min(SNR, SAR)", MetricOrdering},
      {"AC3 observation adding laws", ObservationAddingLaws},
      {"AC4 scale invariance", ScaleInvariance},
      {"AC5 span enhancer closed forms", SyntheticOracle},
      {"AC6 spectral subtraction trade-off direction", DirectionalTrend},
      {"AC7 mixer calibration", MixerCalibration},
      {"AC8 STFT round trip", StftRoundTrip},
      {"AC9 WER against edit-distance oracle", WerOracle},
      {"AC10 CLI determinism across --jobs", CliDeterminism},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    std::string detail;
    Verdict v;
    try {
      v = c.run(detail);
    } catch (const std::exception &e) {
      v.Require(false, std::string("exception: ") + e.what());
    }
    if (!v.ok()) ++failed;
    std::printf("[%s] %s: %s\n", v.ok() ? "PASS" : "FAIL", c.name,
                v.ok() ? detail.c_str() : v.notes().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
