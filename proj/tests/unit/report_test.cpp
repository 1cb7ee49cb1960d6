// tests/unit/report_test.cpp

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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "sedecomp/random.hpp"
#include "sedecomp/report.hpp"
#include "support/fixtures.hpp"

namespace sedecomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Render(const std::vector<ReportRow> &rows, ReportFormat f) {
  std::ostringstream out;
  WriteReport(out, rows, f);
  return out.str();
}

TEST(ReportTest, CsvSingleRow) {
  const ReportRow row{"u1", {1.5, 2.5, kInf, std::nullopt}, {}, {}, {}};
  EXPECT_EQ(Render({row}, ReportFormat::kCsv),
            "id,sdr_db,snr_db,sar_db\nu1,1.5,2.5,inf\n");
}

TEST(ReportTest, CsvAllColumns) {
  const ReportRow row{"u1", {1, 2, 3, 4}, 0.25, MetricsReport{-kInf, 6, 7, 8}, 0.5};
  const auto rows = testing::ParseCsv(Render({row}, ReportFormat::kCsv));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"id", "sdr_db", "snr_db", "sar_db",
                                               "si_snr_db", "omega", "oa_sdr_db",
                                               "oa_snr_db", "oa_sar_db",
                                               "oa_si_snr_db", "wer"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"u1", "1", "2", "3", "4", "0.25",
                                               "-inf", "6", "7", "8", "0.5"}));
  const ReportRow quoted{"a,\"b\"", {1, 2, 3, std::nullopt}, {}, {}, {}};
  EXPECT_EQ(Render({quoted}, ReportFormat::kCsv),
            "id,sdr_db,snr_db,sar_db\n\"a,\"\"b\"\"\",1,2,3\n");
}

TEST(ReportTest, CsvPreservesFullPrecision) {
  Rng rng(5);
  std::vector<ReportRow> rows;
  for (int i = 0; i < 200; ++i) {
    rows.push_back({"r" + std::to_string(i),
                    {rng.Gaussian() * 30, rng.Uniform(-1e-300, 1e-300),
                     rng.Gaussian() * 1e6, std::nullopt},
                    {}, {}, {}});
  }
  const auto cells = testing::ParseCsv(Render(rows, ReportFormat::kCsv));
  ASSERT_EQ(cells.size(), rows.size() + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(ParseNumber(cells[i + 1][1]), rows[i].before.sdr_db);
    EXPECT_EQ(ParseNumber(cells[i + 1][2]), rows[i].before.snr_db);
    EXPECT_EQ(ParseNumber(cells[i + 1][3]), rows[i].before.sar_db);
  }
  EXPECT_EQ(ParseNumber("inf"), kInf);
  EXPECT_EQ(ParseNumber("-inf"), -kInf);
  EXPECT_THROW(ParseNumber("1.5x"), ValidationError);
}

TEST(ReportTest, JsonUsesStringsForInfinities) {
  const ReportRow row{"u", {kInf, 1, -kInf, std::nullopt}, {}, {}, {}};
  const auto j = nlohmann::json::parse(Render({row}, ReportFormat::kJson));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["sdr_db"], "inf");
  EXPECT_EQ(j[0]["snr_db"], 1.0);
  EXPECT_EQ(j[0]["sar_db"], "-inf");
  EXPECT_FALSE(j[0].contains("si_snr_db"));
}

TEST(ReportTest, MarkdownTable) {
  const ReportRow row{"u", {10.04, -0.04, 12.25, std::nullopt}, {}, {}, 0.123};
  const std::string md = Render({row}, ReportFormat::kMarkdown);
  EXPECT_NE(md.find("SAR↑"), std::string::npos);
  EXPECT_NE(md.find("WER↓"), std::string::npos);
  EXPECT_NE(md.find("| u | 10.0 | 0.0 | 12.2 | 12.3 |"), std::string::npos) << md;
}

TEST(ReportTest, RejectsMixedColumns) {
  const ReportRow a{"a", {1, 2, 3, std::nullopt}, {}, {}, {}};
  const ReportRow b{"b", {1, 2, 3, 4.0}, {}, {}, {}};
  EXPECT_THROW(Render({a, b}, ReportFormat::kCsv), ValidationError);
}

TEST(ReportTest, FormatFromExtension) {
  EXPECT_EQ(FormatFromPath("x.csv"), ReportFormat::kCsv);
  EXPECT_EQ(FormatFromPath("x.json"), ReportFormat::kJson);
  EXPECT_EQ(FormatFromPath("x.md"), ReportFormat::kMarkdown);
  EXPECT_THROW(FormatFromPath("x.txt"), ValidationError);
}

TEST(ReportTest, Numbers) {
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(kInf), "inf");
  EXPECT_EQ(FormatNumber(-kInf), "-inf");
  EXPECT_EQ(FormatDb1(-0.04), "0.0");
  EXPECT_EQ(FormatDb1(kInf), "inf");
}

TEST(ReportTest, ParsesScores) {
  std::istringstream in("omega,score\n0,5\n 0.1 , 4.5\n\n1,6\n");
  const auto s = ParseScores(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1].first.value(), 0.1);
  EXPECT_EQ(s[1].second, 4.5);

  auto error_of = [](const std::string &text) {
    std::istringstream bad(text);
    try {
      ParseScores(bad, "s.csv");
    } catch (const ValidationError &e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(error_of("w,s\n").find("s.csv:1"), std::string::npos);
  EXPECT_NE(error_of("omega,score\n0,1\n1.5,2\n").find("s.csv:3"), std::string::npos);
  EXPECT_NE(error_of("omega,score\n0,1,2\n").find("two fields"), std::string::npos);
  EXPECT_NE(error_of("").find("empty"), std::string::npos);
}

}  // namespace
}  // namespace sedecomp
