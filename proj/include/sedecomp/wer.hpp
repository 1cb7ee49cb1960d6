// sedecomp/wer.hpp

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
#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sedecomp/error.hpp"

namespace sedecomp {

using Tokens = std::vector<std::string>;

/// Whitespace tokenization. Case is preserved unless `lowercase` is set.
inline Tokens Tokenize(std::string_view text, bool lowercase = false) {
  Tokens out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (lowercase) {
      std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
      });
    }
    out.push_back(std::move(tok));
  }
  return out;
}

/// Minimum number of unit-cost substitutions, deletions and insertions
/// turning `ref` into `hyp`.
inline std::size_t EditDistance(const Tokens &ref, const Tokens &hyp) {
  std::vector<std::size_t> prev(hyp.size() + 1), cur(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[hyp.size()];
}

inline double Wer(const Tokens &ref, const Tokens &hyp) {
  if (ref.empty()) throw ValidationError("wer: empty reference");
  return static_cast<double>(EditDistance(ref, hyp)) /
         static_cast<double>(ref.size());
}

/// Accumulates errors and reference lengths; the corpus WER is the ratio of
/// the totals, not the mean of per-utterance rates.
struct WerCounts {
  std::size_t errors = 0;
  std::size_t ref_tokens = 0;

  void Add(const Tokens &ref, const Tokens &hyp) {
    if (ref.empty()) throw ValidationError("wer: empty reference");
    errors += EditDistance(ref, hyp);
    ref_tokens += ref.size();
  }
  double Rate() const {
    if (ref_tokens == 0) throw ValidationError("wer: empty reference");
    return static_cast<double>(errors) / static_cast<double>(ref_tokens);
  }
};

}  // namespace sedecomp
