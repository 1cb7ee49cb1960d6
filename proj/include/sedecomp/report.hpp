// sedecomp/report.hpp

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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sedecomp/error.hpp"
#include "sedecomp/metrics.hpp"
#include "sedecomp/observation_adding.hpp"

namespace sedecomp {

inline constexpr std::string_view kMeanRowId = "__mean__";
inline constexpr std::string_view kPooledRowId = "__pooled__";

/// Shortest representation that parses back to the same double. Capped
/// infinities are written as "inf" / "-inf".
inline std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// One decimal, as in human-facing tables.
inline std::string FormatDb1(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  // "-0.0" reads oddly in a table.
  if (std::string_view(buf) == "-0.0") return "0.0";
  return buf;
}

inline double ParseNumber(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

/// One line of a report: metrics of the enhanced signal, and optionally of
/// its observation-added version and a WER.
struct ReportRow {
  std::string id;
  MetricsReport before;
  std::optional<double> omega;
  std::optional<MetricsReport> after;
  std::optional<double> wer;
};

enum class ReportFormat { kCsv, kJson, kMarkdown };

inline ReportFormat FormatFromPath(const std::filesystem::path &path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return ReportFormat::kCsv;
  if (ext == ".json") return ReportFormat::kJson;
  if (ext == ".md" || ext == ".markdown") return ReportFormat::kMarkdown;
  throw ValidationError("cannot infer report format from '" + path.string() +
                        "' (use .csv, .json or .md)");
}

namespace report_internal {

struct Columns {
  bool si = false;
  bool omega = false;
  bool after = false;
  bool after_si = false;
  bool wer = false;

  static Columns Of(const ReportRow &r) {
    Columns c;
    c.si = r.before.si_snr_db.has_value();
    c.omega = r.omega.has_value();
    c.after = r.after.has_value();
    c.after_si = r.after && r.after->si_snr_db.has_value();
    c.wer = r.wer.has_value();
    return c;
  }
  bool operator==(const Columns &) const = default;
};

inline Columns CheckHomogeneous(const std::vector<ReportRow> &rows) {
  if (rows.empty()) return {};
  const Columns c = Columns::Of(rows.front());
  for (const auto &r : rows) {
    if (!(Columns::Of(r) == c)) {
      throw ValidationError("report rows have different column sets (row '" +
                            r.id + "')");
    }
  }
  return c;
}

inline std::string CsvField(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline nlohmann::ordered_json JsonNumber(double v) {
  if (std::isfinite(v)) return v;
  return FormatNumber(v);
}

inline void AddMetrics(nlohmann::ordered_json &j, const MetricsReport &m,
                       const std::string &prefix) {
  j[prefix + "sdr_db"] = JsonNumber(m.sdr_db);
  j[prefix + "snr_db"] = JsonNumber(m.snr_db);
  j[prefix + "sar_db"] = JsonNumber(m.sar_db);
  if (m.si_snr_db) j[prefix + "si_snr_db"] = JsonNumber(*m.si_snr_db);
}

}  // namespace report_internal

inline std::vector<std::string> ReportHeader(const ReportRow &first) {
  const auto c = report_internal::Columns::Of(first);
  std::vector<std::string> h = {"id", "sdr_db", "snr_db", "sar_db"};
  if (c.si) h.push_back("si_snr_db");
  if (c.omega) h.push_back("omega");
  if (c.after) {
    h.insert(h.end(), {"oa_sdr_db", "oa_snr_db", "oa_sar_db"});
    if (c.after_si) h.push_back("oa_si_snr_db");
  }
  if (c.wer) h.push_back("wer");
  return h;
}

inline nlohmann::ordered_json RowToJson(const ReportRow &r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  report_internal::AddMetrics(j, r.before, "");
  if (r.omega) j["omega"] = *r.omega;
  if (r.after) report_internal::AddMetrics(j, *r.after, "oa_");
  if (r.wer) j["wer"] = report_internal::JsonNumber(*r.wer);
  return j;
}

/// Writes rows in the requested format. CSV and JSON carry full precision;
/// markdown mirrors the usual results-table layout with one decimal in dB
/// and WER in percent.
inline void WriteReport(std::ostream &out, const std::vector<ReportRow> &rows,
                        ReportFormat format) {
  using namespace report_internal;
  const Columns c = CheckHomogeneous(rows);
  switch (format) {
    case ReportFormat::kCsv: {
      if (rows.empty()) return;
      const auto header = ReportHeader(rows.front());
      for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
      }
      out << '\n';
      for (const auto &r : rows) {
        out << CsvField(r.id) << ',' << FormatNumber(r.before.sdr_db) << ','
            << FormatNumber(r.before.snr_db) << ',' << FormatNumber(r.before.sar_db);
        if (c.si) out << ',' << FormatNumber(*r.before.si_snr_db);
        if (c.omega) out << ',' << FormatNumber(*r.omega);
        if (c.after) {
          out << ',' << FormatNumber(r.after->sdr_db) << ','
              << FormatNumber(r.after->snr_db) << ','
              << FormatNumber(r.after->sar_db);
          if (c.after_si) out << ',' << FormatNumber(*r.after->si_snr_db);
        }
        if (c.wer) out << ',' << FormatNumber(*r.wer);
        out << '\n';
      }
      break;
    }
    case ReportFormat::kJson: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto &r : rows) arr.push_back(RowToJson(r));
      out << arr.dump(2) << '\n';
      break;
    }
    case ReportFormat::kMarkdown: {
      std::vector<std::string> head = {"ID", "SDR↑", "SNR↑", "SAR↑"};
      if (c.si) head.push_back("SI-SNR↑");
      if (c.omega) head.push_back("ω_obs");
      if (c.after) {
        head.insert(head.end(), {"SDR↑ (OA)", "SNR↑ (OA)", "SAR↑ (OA)"});
        if (c.after_si) head.push_back("SI-SNR↑ (OA)");
      }
      if (c.wer) head.push_back("WER↓ (%)");
      out << '|';
      for (const auto &h : head) out << ' ' << h << " |";
      out << "\n|";
      for (std::size_t i = 0; i < head.size(); ++i) out << (i ? " ---: |" : " --- |");
      out << '\n';
      for (const auto &r : rows) {
        out << "| " << r.id << " | " << FormatDb1(r.before.sdr_db) << " | "
            << FormatDb1(r.before.snr_db) << " | " << FormatDb1(r.before.sar_db)
            << " |";
        if (c.si) out << ' ' << FormatDb1(*r.before.si_snr_db) << " |";
        if (c.omega) out << ' ' << FormatDb1(*r.omega) << " |";
        if (c.after) {
          out << ' ' << FormatDb1(r.after->sdr_db) << " | "
              << FormatDb1(r.after->snr_db) << " | "
              << FormatDb1(r.after->sar_db) << " |";
          if (c.after_si) out << ' ' << FormatDb1(*r.after->si_snr_db) << " |";
        }
        if (c.wer) out << ' ' << FormatDb1(100.0 * *r.wer) << " |";
        out << '\n';
      }
      break;
    }
  }
}

inline void WriteReportFile(const std::filesystem::path &path,
                            const std::vector<ReportRow> &rows,
                            std::optional<ReportFormat> format = std::nullopt) {
  const ReportFormat f = format.value_or(FormatFromPath(path));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  WriteReport(out, rows, f);
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Score files: CSV with header "omega,score", one weight per line.

inline std::vector<std::pair<OAWeight, double>> ParseScores(
    std::istream &in, const std::string &source = "<scores>") {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<std::pair<OAWeight, double>> out;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header) {
      if (line != "omega,score") {
        throw ValidationError(where + ": expected header 'omega,score'");
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ValidationError(where + ": expected two fields");
    }
    try {
      const double w = ParseNumber(trim(line.substr(0, comma)));
      const double score = ParseNumber(trim(line.substr(comma + 1)));
      out.emplace_back(OAWeight(w), score);
    } catch (const ValidationError &e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!header) throw ValidationError(source + ": empty score file");
  return out;
}

inline std::vector<std::pair<OAWeight, double>> ReadScores(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score file '" + path.string() + "'");
  return ParseScores(in, path.string());
}

}  // namespace sedecomp
