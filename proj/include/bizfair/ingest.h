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

#ifndef BIZFAIR_INGEST_H_
#define BIZFAIR_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bizfair {

// A (business name, business type) pair. The label is the canonical label
// name; the name keeps its original casing.
struct Record {
  std::string name;
  std::string label;

  friend bool operator==(const Record&, const Record&) = default;
};

// One row of the municipal licence export.
struct RawLicenceRow {
  std::string business_name;
  std::string business_trade_name;
  std::string business_type;
};

enum class HighLevelClass { kB2B, kB2C, kB2BC, kPUB };

inline constexpr HighLevelClass kHighLevelClasses[] = {
    HighLevelClass::kB2B, HighLevelClass::kB2C, HighLevelClass::kB2BC,
    HighLevelClass::kPUB};

std::string_view to_string(HighLevelClass c);
std::optional<HighLevelClass> parse_high_level(std::string_view s);

// Canonical labels, the raw-label merge rules and the high-level mapping.
//
// merge() resolves a raw licence type: explicitly merged labels map to their
// general label, canonical labels map to themselves, "Office" and any label
// the space does not know map to nullopt (dropped).
class LabelSpace {
 public:
  LabelSpace() = default;

  // The 66 business types and the merge rules for the Vancouver licence
  // dataset.
  static LabelSpace vancouver();

  // Reads `<label>\t<class>` lines (the labels.tsv written by prepare).
  static LabelSpace load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  void add_label(std::string label, HighLevelClass cls);
  void add_merge(std::string raw, std::string canonical);
  void add_drop(std::string raw);

  std::optional<std::string> merge(std::string_view raw_label) const;
  HighLevelClass high_level(std::string_view label) const;
  bool contains(std::string_view label) const;
  bool is_dropped(std::string_view raw_label) const;

  // Keeps only the given labels (in their existing order).
  LabelSpace restricted_to(const std::vector<std::string>& keep) const;

  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, HighLevelClass, std::less<>> high_level_;
  std::map<std::string, std::string, std::less<>> merges_;
  std::map<std::string, bool, std::less<>> drops_;
};

struct IngestStats {
  std::size_t rows = 0;
  std::size_t parse_failures = 0;
  std::size_t skipped_names = 0;  // blank or parenthesized
  std::size_t dropped_labels = 0;  // Office and friends
  std::size_t unknown_labels = 0;
  std::size_t duplicates = 0;
  std::size_t rare_label_records = 0;
  std::map<std::string, std::size_t> unknown_label_counts;
};

struct LicenceTable {
  std::vector<RawLicenceRow> rows;
  std::size_t parse_failures = 0;
};

// Reads a licence export. Columns BusinessName, BusinessTradeName and
// BusinessType are located by header name (case-insensitive); other columns
// are ignored. A missing column throws UsageError naming it.
LicenceTable read_licences(std::istream& in, char delimiter = ',');
LicenceTable read_licences(const std::filesystem::path& path,
                           char delimiter = ',');

// Trade name unless blank, else the legal name. nullopt for blank names and
// names wrapped in round braces.
std::optional<std::string> select_name(const RawLicenceRow& row);

struct Dataset {
  std::vector<Record> records;
  LabelSpace space;
  IngestStats stats;
};

Dataset build_dataset(const std::vector<RawLicenceRow>& rows,
                      const LabelSpace& space, std::size_t min_samples = 100);

// Re-applies dedupe and the sample threshold to canonical records.
Dataset build_dataset(const std::vector<Record>& records,
                      const LabelSpace& space, std::size_t min_samples = 100);

struct SplitSpec {
  double test_fraction = 0.1;
  std::uint64_t seed = 0;
};

// Seeded shuffle, then the first ceil(test_fraction * n) records form the
// test set (clamped to [1, n-1]).
std::pair<std::vector<Record>, std::vector<Record>> split(
    const std::vector<Record>& records, const SplitSpec& spec);

HighLevelClass map_high_level(std::string_view label, const LabelSpace& space);

// `<label>\t<name>` per line.
void write_records(const std::filesystem::path& path,
                   const std::vector<Record>& records);
std::vector<Record> read_records(const std::filesystem::path& path);

}  // namespace bizfair

#endif  // BIZFAIR_INGEST_H_
