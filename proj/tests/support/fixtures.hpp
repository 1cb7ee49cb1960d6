// tests/support/fixtures.hpp

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

// On-disk synthetic corpora for the CLI and acceptance tests.
//
// Samples are snapped to multiples of 2^-15 before writing, so float32 files
// hold them exactly and the stored mixture equals stored speech + stored
// noise bit for bit.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sedecomp/sedecomp.hpp"

namespace sedecomp::testing {

inline Signal Quantize(const Signal &x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::nearbyint(x[i] * 32768.0) / 32768.0;
  }
  return Signal(std::move(v), x.sample_rate());
}

struct CorpusOptions {
  std::size_t utterances = 4;
  std::size_t samples = 8000;
  double snr_db = 5.0;
  std::uint64_t seed = 1;
  bool orthogonal_noise = false;
  // Spectral subtraction strength cycles through these values.
  std::vector<double> oversub = {0.5, 1.0, 2.0};
};

struct CorpusFiles {
  std::filesystem::path manifest;
  std::vector<std::string> ids;
};

/// Writes s, n, y = s + n and a spectral-subtraction output per utterance,
/// plus a manifest with relative paths.
inline CorpusFiles WriteSyntheticCorpus(const std::filesystem::path &dir,
                                        const CorpusOptions &opt) {
  std::filesystem::create_directories(dir / "wav");
  CorpusFiles files;
  files.manifest = dir / "manifest.jsonl";
  std::ofstream manifest(files.manifest);
  for (std::size_t u = 0; u < opt.utterances; ++u) {
    const std::uint64_t seed = opt.seed * 1000 + u;
    const Signal s = Quantize(SyntheticSpeech(opt.samples, kDefaultSampleRate, seed));
    Signal raw_noise = WhiteNoise(opt.samples, kDefaultSampleRate, seed + 500000);
    if (opt.orthogonal_noise) raw_noise = OrthogonalizeAgainst(raw_noise, s);
    const Signal n = Quantize(MixAtSnr(s, raw_noise, opt.snr_db).scaled_noise);
    const ReferencePair pair(s, n);
    const Signal y = pair.Mixture();
    const double oversub = opt.oversub[u % opt.oversub.size()];
    const Signal shat = Quantize(SpectralSubtract(y, pair, {}, oversub, 0.05));

    const std::string id = "utt" + std::to_string(u);
    WriteWav(dir / "wav" / (id + "_s.wav"), s);
    WriteWav(dir / "wav" / (id + "_n.wav"), n);
    WriteWav(dir / "wav" / (id + "_y.wav"), y);
    WriteWav(dir / "wav" / (id + "_shat.wav"), shat);
    UtteranceRecord r;
    r.id = id;
    r.speech = "wav/" + id + "_s.wav";
    r.noise = "wav/" + id + "_n.wav";
    r.observed = "wav/" + id + "_y.wav";
    r.enhanced = "wav/" + id + "_shat.wav";
    WriteManifest(manifest, {r});
    files.ids.push_back(id);
  }
  return files;
}

inline std::string ReadFile(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

/// Splits CSV text (no quoted fields) into rows of cells.
inline std::vector<std::vector<std::string>> ParseCsv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace sedecomp::testing
