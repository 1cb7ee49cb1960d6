// tools/sedecomp_cli.hpp

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

// Command-line front end. Kept in a header so the test suite can run
// commands in-process; tools/sedecomp_main.cpp is the executable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sedecomp/sedecomp.hpp"

namespace sedecomp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // validation or usage error
  kNumerical = 2,   // degenerate basis / undefined metric
  kIoFailure = 3,
};

inline int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return kUsage;
    case ErrorKind::kDegenerate: return kNumerical;
    case ErrorKind::kIo: return kIoFailure;
  }
  return kUsage;
}

inline constexpr const char *kJobsEnv = "SEDECOMP_JOBS";

inline unsigned DefaultJobs() {
  if (const char *env = std::getenv(kJobsEnv)) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

struct GlobalOptions {
  bool json_diagnostics = false;
  unsigned jobs = 1;
  std::uint64_t seed = kDefaultSeed;
};

// ---------------------------------------------------------------------------
// Shared helpers

struct RecordAudio {
  std::optional<Signal> speech, noise, observed, enhanced;
  WavEncoding enhanced_encoding = WavEncoding::kFloat32;
};

inline RecordAudio LoadRecordAudio(const Manifest &m, const UtteranceRecord &r,
                                   bool need_observed, bool need_enhanced,
                                   bool trim) {
  if (need_observed && !r.observed) {
    throw ValidationError("record has no 'y' (observed) path");
  }
  if (need_enhanced && !r.enhanced) {
    throw ValidationError("record has no 'shat' (enhanced) path");
  }
  RecordAudio a;
  a.speech = ReadWav(m.Resolve(r.speech));
  a.noise = ReadWav(m.Resolve(r.noise));
  if (need_observed) a.observed = ReadWav(m.Resolve(*r.observed));
  if (need_enhanced) {
    WavFile f = ReadWavFile(m.Resolve(*r.enhanced));
    a.enhanced_encoding = f.encoding;
    a.enhanced = std::move(f.signal);
  }
  std::vector<Signal *> all;
  for (auto *s : {&a.speech, &a.noise, &a.observed, &a.enhanced}) {
    if (*s) all.push_back(&**s);
  }
  for (const Signal *s : all) {
    if (s->sample_rate() != all.front()->sample_rate()) {
      throw ValidationError("sample rate mismatch between record files (" +
                            std::to_string(s->sample_rate()) + " vs " +
                            std::to_string(all.front()->sample_rate()) + ")");
    }
  }
  if (trim) {
    TrimToShortest(all);
  } else {
    for (const Signal *s : all) {
      if (s->size() != all.front()->size()) {
        throw ValidationError("length mismatch between record files (" +
                              std::to_string(s->size()) + " vs " +
                              std::to_string(all.front()->size()) +
                              " samples); pass --trim to cut to the shortest");
      }
    }
  }
  return a;
}

inline Manifest LoadNonEmptyManifest(const std::string &path) {
  Manifest m = LoadManifest(path);
  if (m.records.empty()) throw ValidationError("manifest '" + path + "' is empty");
  return m;
}

// Runs fn over every record; errors are tagged with the record id.
template <typename Fn>
auto ForEachRecord(const Manifest &m, unsigned jobs, Fn fn) {
  return OrderedParallelMap(m.records.size(), jobs, [&](std::size_t i) {
    try {
      return fn(m.records[i]);
    } catch (Error &e) {
      if (e.context().empty()) e.set_context(m.records[i].id);
      throw;
    }
  });
}

inline void EmitRows(const std::vector<ReportRow> &rows,
                     const std::optional<std::string> &out_path,
                     const std::optional<std::string> &format, std::ostream &out) {
  std::optional<ReportFormat> f;
  if (format) {
    if (*format == "csv") f = ReportFormat::kCsv;
    else if (*format == "json") f = ReportFormat::kJson;
    else if (*format == "md" || *format == "markdown") f = ReportFormat::kMarkdown;
    else throw ValidationError("unknown report format '" + *format + "'");
  }
  if (out_path) {
    WriteReportFile(*out_path, rows, f);
  } else {
    WriteReport(out, rows, f.value_or(ReportFormat::kCsv));
  }
}

inline void WriteJsonFile(const std::filesystem::path &path,
                          const nlohmann::ordered_json &j) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << j.dump(2) << '\n';
  if (!f) throw IoError("write failure on '" + path.string() + "'");
}

inline nlohmann::ordered_json MetricsJson(const MetricsReport &m) {
  nlohmann::ordered_json j;
  j["sdr_db"] = report_internal::JsonNumber(m.sdr_db);
  j["snr_db"] = report_internal::JsonNumber(m.snr_db);
  j["sar_db"] = report_internal::JsonNumber(m.sar_db);
  if (m.si_snr_db) j["si_snr_db"] = report_internal::JsonNumber(*m.si_snr_db);
  return j;
}

inline MetricsReport Summarize(const std::vector<MetricsReport> &reports,
                               const std::vector<MetricEnergies> &energies,
                               Averaging averaging) {
  return averaging == Averaging::kPooled ? PooledReport(energies)
                                         : MeanReport(reports);
}

inline std::string SummaryId(Averaging averaging) {
  return std::string(averaging == Averaging::kPooled ? kPooledRowId : kMeanRowId);
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeOptions {
  std::string manifest;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool pooled = false;
  bool trim = false;
  bool no_si_snr = false;
};

inline int RunDecompose(const DecomposeOptions &o, const GlobalOptions &g,
                        std::ostream &out) {
  const Manifest m = LoadNonEmptyManifest(o.manifest);
  const Averaging avg = o.pooled ? Averaging::kPooled : Averaging::kPerUtterance;
  auto evals = ForEachRecord(m, g.jobs, [&](const UtteranceRecord &r) {
    RecordAudio a = LoadRecordAudio(m, r, false, true, o.trim);
    const ReferencePair pair(std::move(*a.speech), std::move(*a.noise));
    Evaluation ev = Evaluate(*a.enhanced, pair, !o.no_si_snr);
    return std::make_pair(ev.report, ev.energies);
  });

  std::vector<ReportRow> rows;
  std::vector<MetricsReport> reports;
  std::vector<MetricEnergies> energies;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    rows.push_back(ReportRow{m.records[i].id, evals[i].first, {}, {}, {}});
    reports.push_back(evals[i].first);
    energies.push_back(evals[i].second);
  }
  rows.push_back(ReportRow{SummaryId(avg), Summarize(reports, energies, avg), {}, {}, {}});
  EmitRows(rows, o.out, o.format, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// oa

struct OaOptions {
  std::string manifest;
  std::optional<double> omega;
  bool sweep = false;
  std::string grid = "0:1:0.1";
  std::optional<std::string> scores;
  bool higher_is_better = false;
  std::optional<std::string> emit_audio;
  std::optional<std::string> encoding;  // default: encoding of the shat file
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> summary;
  bool pooled = false;
  bool trim = false;
  bool no_si_snr = false;
};

inline int RunOaFixed(const OaOptions &o, const GlobalOptions &g,
                      std::ostream &out, std::ostream &err) {
  const OAWeight w(*o.omega);
  const Manifest m = LoadNonEmptyManifest(o.manifest);
  const Averaging avg = o.pooled ? Averaging::kPooled : Averaging::kPerUtterance;
  const std::optional<WavEncoding> forced =
      o.encoding ? std::optional(ParseWavEncoding(*o.encoding)) : std::nullopt;
  if (o.emit_audio) std::filesystem::create_directories(*o.emit_audio);

  struct Result {
    Evaluation before, after;
    std::size_t clipped = 0;
  };
  auto results = ForEachRecord(m, g.jobs, [&](const UtteranceRecord &r) {
    RecordAudio a = LoadRecordAudio(m, r, true, true, o.trim);
    const ReferencePair pair(std::move(*a.speech), std::move(*a.noise));
    const Signal mixed = ObservationAdd(*a.enhanced, *a.observed, w);
    Result res{Evaluate(*a.enhanced, pair, !o.no_si_snr),
               Evaluate(mixed, pair, !o.no_si_snr), 0};
    if (o.emit_audio) {
      const auto path = std::filesystem::path(*o.emit_audio) / (r.id + ".wav");
      res.clipped = WriteWav(path, mixed, forced.value_or(a.enhanced_encoding)).clipped;
    }
    return res;
  });

  std::vector<ReportRow> rows;
  std::vector<MetricsReport> rb, ra;
  std::vector<MetricEnergies> eb, ea;
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto &res = results[i];
    rows.push_back(ReportRow{m.records[i].id, res.before.report, w.value(),
                             res.after.report, {}});
    rb.push_back(res.before.report);
    ra.push_back(res.after.report);
    eb.push_back(res.before.energies);
    ea.push_back(res.after.energies);
    if (res.clipped > 0) {
      err << "warning: " << res.clipped << " samples clipped writing '"
          << m.records[i].id << "'\n";
    }
    clipped += res.clipped;
  }
  rows.push_back(ReportRow{SummaryId(avg), Summarize(rb, eb, avg), w.value(),
                           Summarize(ra, ea, avg), {}});
  EmitRows(rows, o.out, o.format, out);

  if (o.summary) {
    nlohmann::ordered_json s;
    s["mode"] = "omega";
    s["omega"] = w.value();
    s["records"] = m.records.size();
    s["averaging"] = avg == Averaging::kPooled ? "pooled" : "per-utterance";
    s["before"] = MetricsJson(rows.back().before);
    s["after"] = MetricsJson(*rows.back().after);
    s["clipped_samples"] = clipped;
    WriteJsonFile(*o.summary, s);
  }
  return kOk;
}

inline int RunOaSweep(const OaOptions &o, const GlobalOptions &g,
                      std::ostream &out) {
  const std::vector<OAWeight> grid = ParseGrid(o.grid);
  std::vector<std::pair<OAWeight, double>> scores;
  if (o.scores) scores = ReadScores(*o.scores);
  const Manifest m = LoadNonEmptyManifest(o.manifest);
  const Averaging avg = o.pooled ? Averaging::kPooled : Averaging::kPerUtterance;

  struct Result {
    Evaluation enhanced;
    SweepResult sweep;
  };
  auto results = ForEachRecord(m, g.jobs, [&](const UtteranceRecord &r) {
    RecordAudio a = LoadRecordAudio(m, r, true, true, o.trim);
    const ReferencePair pair(std::move(*a.speech), std::move(*a.noise));
    return Result{Evaluate(*a.enhanced, pair, !o.no_si_snr),
                  Sweep(*a.enhanced, *a.observed, pair, grid, !o.no_si_snr)};
  });

  std::vector<ReportRow> rows;
  std::vector<MetricsReport> enhanced_reports;
  std::vector<MetricEnergies> enhanced_energies;
  for (std::size_t i = 0; i < results.size(); ++i) {
    enhanced_reports.push_back(results[i].enhanced.report);
    enhanced_energies.push_back(results[i].enhanced.energies);
    for (const auto &p : results[i].sweep.per_weight) {
      rows.push_back(ReportRow{m.records[i].id, results[i].enhanced.report,
                               p.omega.value(), p.report, {}});
    }
  }
  const MetricsReport enhanced_summary =
      Summarize(enhanced_reports, enhanced_energies, avg);

  // Corpus-level curve, one point per weight.
  SweepResult corpus;
  corpus.grid = grid;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<MetricsReport> reports;
    std::vector<MetricEnergies> energies;
    for (const auto &res : results) {
      reports.push_back(res.sweep.per_weight[k].report);
      energies.push_back(res.sweep.per_weight[k].energies);
    }
    corpus.per_weight.push_back(
        SweepPoint{grid[k], Summarize(reports, energies, avg), {}, {}});
    rows.push_back(ReportRow{SummaryId(avg), enhanced_summary, grid[k].value(),
                             corpus.per_weight[k].report, {}});
  }
  if (!scores.empty()) AttachScores(corpus, scores, !o.higher_is_better);

  EmitRows(rows, o.out, o.format, out);

  nlohmann::ordered_json s;
  s["mode"] = "sweep";
  auto jgrid = nlohmann::ordered_json::array();
  for (const auto w : grid) jgrid.push_back(w.value());
  s["grid"] = jgrid;
  s["averaging"] = avg == Averaging::kPooled ? "pooled" : "per-utterance";
  auto curve = nlohmann::ordered_json::array();
  for (const auto &p : corpus.per_weight) {
    nlohmann::ordered_json c;
    c["omega"] = p.omega.value();
    const auto metrics = MetricsJson(p.report);
    for (const auto &[k, v] : metrics.items()) c[k] = v;
    if (p.score) c["score"] = report_internal::JsonNumber(*p.score);
    curve.push_back(c);
  }
  s["curve"] = curve;
  auto recs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    nlohmann::ordered_json r;
    r["id"] = m.records[i].id;
    r["subspace_correlation"] = results[i].sweep.subspace_correlation;
    r["monotone_condition"] = results[i].sweep.monotone_condition;
    r["sar_nondecreasing"] = results[i].sweep.sar_nondecreasing;
    recs.push_back(r);
  }
  s["records"] = recs;
  if (corpus.selected) {
    s["selected_omega"] = corpus.selected->value();
    s["selection_rule"] = corpus.selection_rule;
  } else {
    s["selected_omega"] = nullptr;
  }
  if (o.summary) {
    WriteJsonFile(*o.summary, s);
  } else if (o.out) {
    out << s.dump(2) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// mix / enhance

struct MixOptions {
  std::string speech, noise, out;
  double snr_db = 0.0;
  std::optional<std::string> noise_out;
  bool orthogonalize = false;
  bool trim = false;
  std::string encoding = "float32";
};

inline std::filesystem::path SidecarPath(const std::string &out) {
  return std::filesystem::path(out + ".json");
}

inline int RunMix(const MixOptions &o, const GlobalOptions &g, std::ostream &err) {
  const WavEncoding enc = ParseWavEncoding(o.encoding);
  Signal s = ReadWav(o.speech);
  Signal n = ReadWav(o.noise);
  if (o.trim) TrimToShortest({&s, &n});
  if (o.orthogonalize) n = OrthogonalizeAgainst(n, s);
  const Mixture mix = MixAtSnr(s, n, o.snr_db);

  std::size_t clipped = WriteWav(o.out, mix.observed, enc).clipped;
  if (o.noise_out) clipped += WriteWav(*o.noise_out, mix.scaled_noise, enc).clipped;
  if (clipped > 0) err << "warning: " << clipped << " samples clipped\n";

  nlohmann::ordered_json j;
  j["command"] = "mix";
  j["speech"] = o.speech;
  j["noise"] = o.noise;
  j["snr_db"] = o.snr_db;
  j["orthogonalize"] = o.orthogonalize;
  j["gain"] = mix.gain;
  j["encoding"] = std::string(WavEncodingName(enc));
  j["seed"] = g.seed;
  j["clipped_samples"] = clipped;
  if (o.noise_out) j["noise_out"] = *o.noise_out;
  WriteJsonFile(SidecarPath(o.out), j);
  return kOk;
}

struct EnhanceOptions {
  std::string method;
  std::string speech, noise, out;
  std::optional<std::string> mixture;
  double a = 1.0, b = 0.0, c = 0.0;
  double oversub = 1.0;
  double floor = 0.05;
  double window_ms = 25.0, hop_ms = 10.0;
  bool trim = false;
  std::string encoding = "float32";
};

inline int RunEnhance(const EnhanceOptions &o, const GlobalOptions &g,
                      std::ostream &err) {
  const WavEncoding enc = ParseWavEncoding(o.encoding);
  Signal s = ReadWav(o.speech);
  Signal n = ReadWav(o.noise);
  std::optional<Signal> y;
  if (o.mixture) y = ReadWav(*o.mixture);
  if (o.trim) {
    std::vector<Signal *> all{&s, &n};
    if (y) all.push_back(&*y);
    TrimToShortest(all);
  }
  const ReferencePair pair(s, n);
  const StftConfig cfg{o.window_ms, o.hop_ms, 0};

  nlohmann::ordered_json j;
  j["command"] = "enhance";
  j["method"] = o.method;
  j["speech"] = o.speech;
  j["noise"] = o.noise;
  if (o.mixture) j["mixture"] = *o.mixture;

  std::optional<Signal> shat;
  if (o.method == "span") {
    shat = SpanEnhancer(pair, SpanMixSpec{o.a, o.b, o.c}, g.seed);
    j["a"] = o.a;
    j["b"] = o.b;
    j["c"] = o.c;
  } else if (o.method == "wiener" || o.method == "specsub") {
    const Signal observed = y ? *y : pair.Mixture();
    if (o.method == "wiener") {
      shat = WienerOracle(observed, pair, cfg);
    } else {
      shat = SpectralSubtract(observed, pair, cfg, o.oversub, o.floor);
      j["oversub"] = o.oversub;
      j["floor"] = o.floor;
    }
    j["window_ms"] = o.window_ms;
    j["hop_ms"] = o.hop_ms;
  } else {
    throw ValidationError("unknown method '" + o.method +
                          "' (expected wiener, specsub or span)");
  }
  const std::size_t clipped = WriteWav(o.out, *shat, enc).clipped;
  if (clipped > 0) err << "warning: " << clipped << " samples clipped\n";
  j["encoding"] = std::string(WavEncodingName(enc));
  j["seed"] = g.seed;
  j["clipped_samples"] = clipped;
  WriteJsonFile(SidecarPath(o.out), j);
  return kOk;
}

// ---------------------------------------------------------------------------
// wer

struct WerOptions {
  std::string ref, hyp;
  bool by_id = false;
  bool lowercase = false;
  std::optional<std::string> out;
};

// Reads "<id> tokens..." lines (by_id) or plain lines keyed by line number.
inline std::vector<std::pair<std::string, Tokens>> ReadTranscripts(
    const std::string &path, bool by_id, bool lowercase) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transcript file '" + path + "'");
  std::vector<std::pair<std::string, Tokens>> out;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Tokens toks = Tokenize(line, false);
    std::string id;
    if (by_id) {
      if (toks.empty()) continue;
      id = toks.front();
      toks.erase(toks.begin());
      if (!seen.emplace(id, line_no).second) {
        throw ValidationError(path + ":" + std::to_string(line_no) +
                              ": duplicate id '" + id + "'");
      }
    } else {
      id = std::to_string(line_no);
    }
    if (lowercase) {
      std::string joined;
      for (const auto &t : toks) joined += t + ' ';
      toks = Tokenize(joined, true);
    }
    out.emplace_back(std::move(id), std::move(toks));
  }
  return out;
}

inline int RunWer(const WerOptions &o, std::ostream &out) {
  const auto refs = ReadTranscripts(o.ref, o.by_id, o.lowercase);
  const auto hyps = ReadTranscripts(o.hyp, o.by_id, o.lowercase);
  std::map<std::string, const Tokens *> hyp_by_id;
  for (const auto &[id, toks] : hyps) hyp_by_id[id] = &toks;
  if (refs.size() != hyps.size()) {
    throw ValidationError("reference and hypothesis files have " +
                          std::to_string(refs.size()) + " and " +
                          std::to_string(hyps.size()) + " utterances");
  }
  if (refs.empty()) throw ValidationError("no utterances in '" + o.ref + "'");

  std::ostringstream csv;
  csv << "id,errors,ref_tokens,wer\n";
  WerCounts corpus;
  for (const auto &[id, ref] : refs) {
    const auto it = hyp_by_id.find(id);
    if (it == hyp_by_id.end()) {
      throw ValidationError("id '" + id + "' missing from hypothesis file");
    }
    if (ref.empty()) {
      throw ValidationError("utterance '" + id + "' has an empty reference");
    }
    WerCounts one;
    one.Add(ref, *it->second);
    corpus.errors += one.errors;
    corpus.ref_tokens += one.ref_tokens;
    csv << report_internal::CsvField(id) << ',' << one.errors << ','
        << one.ref_tokens << ',' << FormatNumber(one.Rate()) << '\n';
  }
  csv << "__corpus__," << corpus.errors << ',' << corpus.ref_tokens << ','
      << FormatNumber(corpus.Rate()) << '\n';
  if (o.out) {
    std::ofstream f(*o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + *o.out + "' for writing");
    f << csv.str();
  } else {
    out << csv.str();
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Entry point

inline std::string OneLine(std::string s) {
  for (char &c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

inline void ReportError(std::ostream &err, bool json, int code,
                        const std::string &kind, const std::string &context,
                        const std::string &message) {
  if (json) {
    nlohmann::ordered_json j;
    j["error"]["code"] = code;
    j["error"]["kind"] = kind;
    if (!context.empty()) j["error"]["id"] = context;
    j["error"]["message"] = message;
    err << j.dump() << '\n';
  } else {
    err << "sedecomp: error[" << kind << "]: "
        << (context.empty() ? "" : context + ": ") << OneLine(message) << '\n';
  }
}

inline int RunCli(int argc, const char *const *argv, std::ostream &out,
                  std::ostream &err) {
  CLI::App app{"Noise/artifact error decomposition and observation adding for "
               "speech enhancement outputs"};
  app.name("sedecomp");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  g.jobs = DefaultJobs();
  app.add_flag("--json", g.json_diagnostics, "Emit errors as single-line JSON");
  app.add_option("--jobs,-j", g.jobs,
                 std::string("Parallel utterances (default $") + kJobsEnv + " or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for all randomness")
      ->default_val(kDefaultSeed);

  DecomposeOptions dec;
  auto *c_dec = app.add_subcommand(
      "decompose", "SDR/SNR/SAR/SI-SNR of every enhanced signal in a manifest");
  c_dec->add_option("manifest", dec.manifest, "JSON-lines manifest")->required();
  c_dec->add_option("--out,-o", dec.out, "Report path (.csv, .json or .md)");
  c_dec->add_option("--format", dec.format, "csv, json or md (default: by extension)");
  auto *pooled = c_dec->add_flag("--pooled", dec.pooled, "Summary from pooled energies");
  c_dec->add_flag("--per-utt", "Summary as mean of per-utterance dB (default)")
      ->excludes(pooled);
  c_dec->add_flag("--trim", dec.trim, "Trim record files to the shortest");
  c_dec->add_flag("--no-si-snr", dec.no_si_snr, "Skip SI-SNR");

  OaOptions oa;
  auto *c_oa = app.add_subcommand("oa", "Observation adding at one weight or over a grid");
  c_oa->add_option("manifest", oa.manifest, "JSON-lines manifest")->required();
  auto *opt_omega = c_oa->add_option("--omega", oa.omega, "Interpolation weight in [0, 1]");
  auto *opt_sweep = c_oa->add_flag("--sweep", oa.sweep, "Sweep the weight grid");
  opt_omega->excludes(opt_sweep);
  c_oa->add_option("--grid", oa.grid, "start:end:step (inclusive)")->default_val("0:1:0.1");
  c_oa->add_option("--scores", oa.scores, "CSV 'omega,score' for weight selection");
  c_oa->add_flag("--higher-is-better", oa.higher_is_better,
                 "Select the maximum score instead of the minimum");
  c_oa->add_option("--emit-audio", oa.emit_audio, "Directory for interpolated WAVs");
  c_oa->add_option("--encoding", oa.encoding,
                   "pcm16 or float32 (default: that of the enhanced input)");
  c_oa->add_option("--out,-o", oa.out, "Report path (.csv, .json or .md)");
  c_oa->add_option("--format", oa.format, "csv, json or md");
  c_oa->add_option("--summary", oa.summary, "JSON summary path");
  auto *oa_pooled = c_oa->add_flag("--pooled", oa.pooled, "Summary from pooled energies");
  c_oa->add_flag("--per-utt", "Summary as mean of per-utterance dB (default)")
      ->excludes(oa_pooled);
  c_oa->add_flag("--trim", oa.trim, "Trim record files to the shortest");
  c_oa->add_flag("--no-si-snr", oa.no_si_snr, "Skip SI-SNR");

  MixOptions mix;
  auto *c_mix = app.add_subcommand("mix", "Mix speech and noise at a target SNR");
  c_mix->add_option("speech", mix.speech, "Speech WAV")->required();
  c_mix->add_option("noise", mix.noise, "Noise WAV")->required();
  c_mix->add_option("--snr-db", mix.snr_db, "Target SNR in dB")->required();
  c_mix->add_option("--out,-o", mix.out, "Mixture WAV")->required();
  c_mix->add_option("--noise-out", mix.noise_out, "Write the scaled noise here");
  c_mix->add_flag("--orthogonalize", mix.orthogonalize,
                  "Remove the speech component from the noise first");
  c_mix->add_flag("--trim", mix.trim, "Trim inputs to the shortest");
  c_mix->add_option("--encoding", mix.encoding, "pcm16 or float32")->default_val("float32");

  EnhanceOptions enh;
  auto *c_enh = app.add_subcommand("enhance", "Oracle enhancers for test material");
  c_enh->add_option("--method", enh.method, "wiener, specsub or span")
      ->required()
      ->check(CLI::IsMember({"wiener", "specsub", "span"}));
  c_enh->add_option("--speech,-s", enh.speech, "Reference speech WAV")->required();
  c_enh->add_option("--noise,-n", enh.noise, "Reference noise WAV")->required();
  c_enh->add_option("--mixture,-y", enh.mixture, "Observed WAV (default: speech + noise)");
  c_enh->add_option("--out,-o", enh.out, "Enhanced WAV")->required();
  c_enh->add_option("--a", enh.a, "span: speech coefficient")->default_val(1.0);
  c_enh->add_option("--b", enh.b, "span: noise coefficient")->default_val(0.0);
  c_enh->add_option("--c", enh.c, "span: artifact coefficient")->default_val(0.0);
  c_enh->add_option("--oversub", enh.oversub, "specsub: over-subtraction factor")
      ->default_val(1.0);
  c_enh->add_option("--floor", enh.floor, "specsub: spectral floor in (0, 1)")
      ->default_val(0.05);
  c_enh->add_option("--window-ms", enh.window_ms, "STFT window")->default_val(25.0);
  c_enh->add_option("--hop-ms", enh.hop_ms, "STFT shift")->default_val(10.0);
  c_enh->add_flag("--trim", enh.trim, "Trim inputs to the shortest");
  c_enh->add_option("--encoding", enh.encoding, "pcm16 or float32")->default_val("float32");

  WerOptions wer;
  auto *c_wer = app.add_subcommand("wer", "Word error rate of transcript files");
  c_wer->add_option("--ref", wer.ref, "Reference transcripts")->required();
  c_wer->add_option("--hyp", wer.hyp, "Hypothesis transcripts")->required();
  c_wer->add_flag("--by-id", wer.by_id, "Lines start with an utterance id");
  c_wer->add_flag("--lowercase", wer.lowercase, "Case-insensitive scoring");
  c_wer->add_option("--out,-o", wer.out, "CSV output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    ReportError(err, g.json_diagnostics, kUsage, "usage", "", e.what());
    return kUsage;
  }

  try {
    if (c_dec->parsed()) return RunDecompose(dec, g, out);
    if (c_oa->parsed()) {
      if (oa.omega.has_value() == oa.sweep) {
        throw ValidationError("oa needs exactly one of --omega or --sweep");
      }
      return oa.sweep ? RunOaSweep(oa, g, out) : RunOaFixed(oa, g, out, err);
    }
    if (c_mix->parsed()) return RunMix(mix, g, err);
    if (c_enh->parsed()) return RunEnhance(enh, g, err);
    if (c_wer->parsed()) return RunWer(wer, out);
  } catch (const Error &e) {
    const int code = ExitCodeFor(e.kind());
    ReportError(err, g.json_diagnostics, code, ErrorKindName(e.kind()),
                e.context(), e.what());
    return code;
  } catch (const std::filesystem::filesystem_error &e) {
    ReportError(err, g.json_diagnostics, kIoFailure, "io", "", e.what());
    return kIoFailure;
  } catch (const std::exception &e) {
    ReportError(err, g.json_diagnostics, kUsage, "internal", "", e.what());
    return kUsage;
  }
  return kUsage;
}

}  // namespace sedecomp::cli
