// sedecomp/manifest.hpp

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

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sedecomp/error.hpp"

namespace sedecomp {

/// One line of a JSON-lines manifest. Paths are stored as written; use
/// Manifest::Resolve to interpret relative paths.
struct UtteranceRecord {
  std::string id;
  std::string speech;                   // "s"
  std::string noise;                    // "n"
  std::optional<std::string> observed;  // "y"
  std::optional<std::string> enhanced;  // "shat"
  std::optional<std::string> ref_text;
  std::optional<std::string> hyp_text;

  bool operator==(const UtteranceRecord &) const = default;
};

struct Manifest {
  std::filesystem::path base_dir;  // relative paths resolve against this
  std::vector<UtteranceRecord> records;

  std::filesystem::path Resolve(const std::string &p) const {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  }
};

namespace manifest_internal {

inline const char *const kKeys[] = {"id", "s", "n", "y", "shat", "ref_text",
                                    "hyp_text"};

inline std::optional<std::string> OptionalString(const nlohmann::json &obj,
                                                 const char *key,
                                                 const std::string &where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_string()) {
    throw ValidationError(where + ": key '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace manifest_internal

/// Parses JSON-lines records, one object per non-blank line, keys
/// id, s, n, y, shat, ref_text, hyp_text. Each record needs id, s, n and at
/// least one of y / shat; ids must be unique. When `check_files` is set,
/// every referenced audio path must exist.
inline Manifest ParseManifest(std::istream &in, const std::filesystem::path &base_dir,
                              const std::string &source = "<manifest>",
                              bool check_files = true) {
  using manifest_internal::OptionalString;
  Manifest m;
  m.base_dir = base_dir;
  std::map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ValidationError(where + ": parse error: " + e.what());
    }
    if (!obj.is_object()) throw ValidationError(where + ": record is not an object");
    for (const auto &[key, value] : obj.items()) {
      bool known = false;
      for (const char *k : manifest_internal::kKeys) known = known || key == k;
      if (!known) throw ValidationError(where + ": unknown key '" + key + "'");
    }

    UtteranceRecord r;
    auto required = [&](const char *key) {
      auto v = OptionalString(obj, key, where);
      if (!v) throw ValidationError(where + ": missing key '" + key + "'");
      return *v;
    };
    r.id = required("id");
    r.speech = required("s");
    r.noise = required("n");
    r.observed = OptionalString(obj, "y", where);
    r.enhanced = OptionalString(obj, "shat", where);
    r.ref_text = OptionalString(obj, "ref_text", where);
    r.hyp_text = OptionalString(obj, "hyp_text", where);
    if (!r.observed && !r.enhanced) {
      throw ValidationError(where + ": record '" + r.id +
                            "' needs at least one of 'y' or 'shat'");
    }
    if (const auto it = seen.find(r.id); it != seen.end()) {
      throw ValidationError(where + ": duplicate id '" + r.id +
                            "' (first on line " + std::to_string(it->second) +
                            ")");
    }
    seen.emplace(r.id, line_no);

    if (check_files) {
      for (const auto *p : {&r.speech, &r.noise}) {
        if (!std::filesystem::exists(m.Resolve(*p))) {
          throw IoError(where + ": missing file '" + m.Resolve(*p).string() + "'");
        }
      }
      for (const auto *p : {&r.observed, &r.enhanced}) {
        if (*p && !std::filesystem::exists(m.Resolve(**p))) {
          throw IoError(where + ": missing file '" + m.Resolve(**p).string() + "'");
        }
      }
    }
    m.records.push_back(std::move(r));
  }
  return m;
}

inline Manifest LoadManifest(const std::filesystem::path &path,
                             bool check_files = true) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  return ParseManifest(in, path.parent_path(), path.string(), check_files);
}

inline nlohmann::ordered_json RecordToJson(const UtteranceRecord &r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["s"] = r.speech;
  j["n"] = r.noise;
  if (r.observed) j["y"] = *r.observed;
  if (r.enhanced) j["shat"] = *r.enhanced;
  if (r.ref_text) j["ref_text"] = *r.ref_text;
  if (r.hyp_text) j["hyp_text"] = *r.hyp_text;
  return j;
}

inline void WriteManifest(std::ostream &out,
                          const std::vector<UtteranceRecord> &records) {
  for (const auto &r : records) out << RecordToJson(r).dump() << '\n';
}

}  // namespace sedecomp
