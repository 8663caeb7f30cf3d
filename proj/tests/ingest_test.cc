// Copyright 2026 The Bizfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bizfair/ingest.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bizfair/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace bizfair {
namespace {

RawLicenceRow row(std::string name, std::string trade, std::string type) {
  return {std::move(name), std::move(trade), std::move(type)};
}

std::vector<Record> numbered(std::size_t n, const std::string& label = "Plumber") {
  std::vector<Record> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({"Business " + std::to_string(i), label});
  return out;
}

TEST(SelectName, PrefersTradeName) {
  EXPECT_EQ(select_name(row("Acme Ltd", "Fotojo Studios", "Studio")), "Fotojo Studios");
}

TEST(SelectName, FallsBackToLegalName) {
  EXPECT_EQ(select_name(row("Acme Ltd", "", "Studio")), "Acme Ltd");
  EXPECT_EQ(select_name(row("Acme Ltd", "   ", "Studio")), "Acme Ltd");
}

TEST(SelectName, SkipsParenthesizedAndBlank) {
  EXPECT_EQ(select_name(row("(Gerald Gionco)", "", "Painter")), std::nullopt);
  EXPECT_EQ(select_name(row("", "", "Painter")), std::nullopt);
}

TEST(LabelSpace, MergeRules) {
  const LabelSpace space = LabelSpace::vancouver();
  EXPECT_EQ(space.merge("Restaurant Class 1"), "Restaurant");
  EXPECT_EQ(space.merge("Motel"), "Hotel");
  EXPECT_EQ(space.merge("Short-Term Rental"), "Hotel");
  EXPECT_EQ(space.merge("Contractor - Special Trades"), "Contractor");
  EXPECT_EQ(space.merge("Artist Live/Work Studio"), "Studio");
  EXPECT_EQ(space.merge("Office"), std::nullopt);
  EXPECT_TRUE(space.is_dropped("Office"));
  EXPECT_EQ(space.merge("Plumber"), "Plumber");
  EXPECT_EQ(space.merge("No Such Type"), std::nullopt);
  EXPECT_FALSE(space.is_dropped("No Such Type"));
}

TEST(LabelSpace, VancouverHas66Labels) {
  const LabelSpace space = LabelSpace::vancouver();
  EXPECT_EQ(space.labels().size(), 66u);
  const std::set<std::string> distinct(space.labels().begin(), space.labels().end());
  EXPECT_EQ(distinct.size(), 66u);
  for (const std::string& label : space.labels()) EXPECT_NO_THROW(space.high_level(label));
}

TEST(LabelSpace, HighLevelMapping) {
  const LabelSpace space = LabelSpace::vancouver();
  EXPECT_EQ(map_high_level("Plumber", space), HighLevelClass::kB2BC);
  EXPECT_EQ(map_high_level("Restaurant", space), HighLevelClass::kB2C);
  EXPECT_EQ(map_high_level("Educational", space), HighLevelClass::kPUB);
  EXPECT_THROW(map_high_level("Nope", space), UsageError);
}

TEST(LabelSpace, SaveLoadRoundTrip) {
  testing::TempDir dir;
  const LabelSpace space = LabelSpace::vancouver().restricted_to({"Plumber", "Restaurant"});
  space.save(dir / "labels.tsv");
  const LabelSpace back = LabelSpace::load(dir / "labels.tsv");
  EXPECT_EQ(back.labels(), space.labels());
  EXPECT_EQ(back.high_level("Restaurant"), HighLevelClass::kB2C);
}

TEST(BuildDataset, DropsLabelsBelowThreshold) {
  std::vector<RawLicenceRow> rows;
  for (int i = 0; i < 99; ++i) rows.push_back(row("P" + std::to_string(i), "", "Plumber"));
  for (int i = 0; i < 100; ++i) rows.push_back(row("R" + std::to_string(i), "", "Roofer"));
  const Dataset data = build_dataset(rows, LabelSpace::vancouver(), 100);
  EXPECT_EQ(data.records.size(), 100u);
  EXPECT_EQ(data.space.labels(), std::vector<std::string>{"Roofer"});
  EXPECT_EQ(data.stats.rare_label_records, 99u);
}

TEST(BuildDataset, RemovesDuplicates) {
  const std::vector<RawLicenceRow> rows = {row("Acme", "", "Plumber"),
                                           row("Acme", "", "Plumber"),
                                           row("Acme", "", "Roofer")};
  const Dataset data = build_dataset(rows, LabelSpace::vancouver(), 1);
  EXPECT_EQ(data.records.size(), 2u);
  EXPECT_EQ(data.stats.duplicates, 1u);
}

TEST(BuildDataset, CountsSkipsDropsAndUnknowns) {
  const std::vector<RawLicenceRow> rows = {
      row("(Gerald Gionco)", "", "Painter"), row("Desk Co", "", "Office"),
      row("Who Knows", "", "Time Travel"), row("Gems", "Daniel's Gems", "Jeweller"),
      row("Motel 8", "", "Motel")};
  const Dataset data = build_dataset(rows, LabelSpace::vancouver(), 1);
  EXPECT_EQ(data.stats.skipped_names, 1u);
  EXPECT_EQ(data.stats.dropped_labels, 1u);
  EXPECT_EQ(data.stats.unknown_labels, 1u);
  EXPECT_EQ(data.stats.unknown_label_counts.at("Time Travel"), 1u);
  const std::vector<Record> expected = {{"Daniel's Gems", "Jeweller"}, {"Motel 8", "Hotel"}};
  EXPECT_EQ(data.records, expected);
}

TEST(BuildDataset, EmptyResultIsAnError) {
  const std::vector<RawLicenceRow> rows = {row("Desk Co", "", "Office")};
  try {
    build_dataset(rows, LabelSpace::vancouver(), 1);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_STREQ(e.what(), "dataset empty after preprocessing");
  }
}

TEST(BuildDataset, IsIdempotent) {
  std::vector<RawLicenceRow> rows;
  for (int i = 0; i < 120; ++i) rows.push_back(row("R" + std::to_string(i % 110), "", "Roofer"));
  for (int i = 0; i < 50; ++i) rows.push_back(row("P" + std::to_string(i), "", "Plumber"));
  const LabelSpace space = LabelSpace::vancouver();
  const Dataset once = build_dataset(rows, space, 100);
  const Dataset twice = build_dataset(once.records, space, 100);
  EXPECT_EQ(twice.records, once.records);
  EXPECT_EQ(twice.space.labels(), once.space.labels());
}

TEST(Split, TenRecords) {
  auto [train, test] = split(numbered(10), {0.1, 42});
  EXPECT_EQ(train.size(), 9u);
  EXPECT_EQ(test.size(), 1u);
}

TEST(Split, TestSizeForFullDataset) {
  auto [train, test] = split(numbered(70'870), {0.1, 1});
  EXPECT_EQ(test.size(), 7'087u);
  EXPECT_EQ(train.size(), 63'783u);
}

TEST(Split, DeterministicPartition) {
  const std::vector<Record> records = numbered(200);
  auto [train1, test1] = split(records, {0.25, 7});
  auto [train2, test2] = split(records, {0.25, 7});
  EXPECT_EQ(train1, train2);
  EXPECT_EQ(test1, test2);

  std::vector<std::string> all;
  for (const auto* part : {&train1, &test1}) {
    for (const Record& r : *part) all.push_back(r.name);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::string> expected;
  for (const Record& r : records) expected.push_back(r.name);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(all, expected);

  auto [train3, test3] = split(records, {0.25, 8});
  EXPECT_NE(test1, test3);
}

TEST(Split, RejectsBadFraction) {
  EXPECT_THROW(split(numbered(10), {0.0, 1}), UsageError);
  EXPECT_THROW(split(numbered(10), {1.0, 1}), UsageError);
}

TEST(ReadLicences, QuotedFieldsAndExtraColumns) {
  std::istringstream in(
      "\xEF\xBB\xBF" "LicenceRSN,businessname,BusinessTradeName,BusinessType\n"
      "1,\"Smith, Jones & Co\",,Plumber\n"
      "2,Acme Ltd,\"Fotojo \"\"The\"\" Studios\",Studio\n"
      "3,\"multi\nline\",,Roofer\n");
  const LicenceTable table = read_licences(in);
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.rows[0].business_name, "Smith, Jones & Co");
  EXPECT_EQ(table.rows[1].business_trade_name, "Fotojo \"The\" Studios");
  EXPECT_EQ(table.rows[2].business_name, "multi\nline");
  EXPECT_EQ(table.parse_failures, 0u);
}

TEST(ReadLicences, SemicolonDelimiter) {
  std::istringstream in("BusinessName;BusinessTradeName;BusinessType\nA;B;Plumber\n");
  const LicenceTable table = read_licences(in, ';');
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0].business_trade_name, "B");
}

TEST(ReadLicences, MissingColumnIsNamed) {
  std::istringstream in("BusinessName,BusinessType\nA,Plumber\n");
  try {
    read_licences(in);
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_EQ(std::string(e.what()), "missing column BusinessTradeName");
  }
}

TEST(ReadLicences, CountsMalformedRows) {
  std::istringstream in(
      "BusinessName,BusinessTradeName,BusinessType\n"
      "A,,Plumber\n"
      "B,Plumber\n"
      "C,,Roofer\n");
  const LicenceTable table = read_licences(in);
  EXPECT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.parse_failures, 1u);
}

TEST(Records, TsvRoundTrip) {
  testing::TempDir dir;
  const std::vector<Record> records = {{"Daniel's Gems", "Jeweller"},
                                       {"Café Olé", "Restaurant"}};
  write_records(dir / "r.tsv", records);
  EXPECT_EQ(read_records(dir / "r.tsv"), records);
}

}  // namespace
}  // namespace bizfair
