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
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bizfair/error.h"
#include "csv.h"

namespace bizfair {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct LabelGroup {
  HighLevelClass cls;
  std::vector<const char*> labels;
};

// The 66 business types, grouped by high-level class.
const std::vector<LabelGroup>& vancouver_groups() {
  static const std::vector<LabelGroup> groups = {
      {HighLevelClass::kB2BC,
       {"Auto Dealer", "Caterer", "Computer Services", "Contractor",
        "Electrical Contractor", "Electrical-Security Alarm Installation",
        "Employment Agency", "Entertainment Services",
        "Exhibitions/Shows/Concerts", "Financial Services", "Gas Contractor",
        "Hotel", "Instruction", "Landscape Gardener", "Money Services",
        "Moving/Transfer Service", "Painter", "Photographer", "Plumber",
        "Plumber & Gas Contractor", "Printing Services", "Production Company",
        "Real Estate Dealer", "Referral Services", "Rentals",
        "Repair/ Service/Maintenance", "Residential/Commercial", "Roofer",
        "Scavenging", "Security Services", "Sprinkler Contractor", "Studio",
        "Travel Agent"}},
      {HighLevelClass::kB2C,
       {"Animal Services", "Auto Detailing", "Auto Parking Lot/Parkade",
        "Auto Repairs", "Beauty Services", "Cosmetologist", "ESL Instruction",
        "Fitness Centre", "Health Services", "Health and Beauty", "Homecraft",
        "Jeweller", "Liquor Establishment", "Massage Therapist",
        "Personal Services", "Physical Therapist", "Restaurant",
        "Retail Dealer", "Retail Dealer - Food", "Seamstress/Tailor",
        "Secondhand Dealer", "Tattoo Parlour", "Therapeutic Touch Technique"}},
      {HighLevelClass::kB2B,
       {"Janitorial Services", "Laboratory", "Manufacturer",
        "Manufacturer - Food", "Electrical-Temporary (Filming)",
        "Wholesale Dealer", "Wholesale Dealer - Food"}},
      {HighLevelClass::kPUB,
       {"Community Association", "Educational", "School (Private)"}},
  };
  return groups;
}

}  // namespace

std::string_view to_string(HighLevelClass c) {
  switch (c) {
    case HighLevelClass::kB2B:
      return "B2B";
    case HighLevelClass::kB2C:
      return "B2C";
    case HighLevelClass::kB2BC:
      return "B2BC";
    case HighLevelClass::kPUB:
      return "PUB";
  }
  return "?";
}

std::optional<HighLevelClass> parse_high_level(std::string_view s) {
  for (HighLevelClass c : kHighLevelClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

LabelSpace LabelSpace::vancouver() {
  LabelSpace space;
  for (const LabelGroup& group : vancouver_groups()) {
    for (const char* label : group.labels) space.add_label(label, group.cls);
  }

  for (const char* raw :
       {"Apartment House", "Pre-1956 Dwelling", "Non-profit Housing",
        "Apartment House Strata", "Secondary Suite - Permanent",
        "Multiple Dwelling", "Duplex", "One-Family Dwelling"})
    space.add_merge(raw, "Residential/Commercial");
  for (const char* raw :
       {"Temp Liquor Licence Amendment", "Liquor Establishment Standard",
        "Liquor Establishment Extended", "Liquor License Application",
        "Liquor Retail Store"})
    space.add_merge(raw, "Liquor Establishment");
  space.add_merge("U-Brew/U-Vin", "Liquor Equipment");
  for (const char* raw : {"Laundry-Coin Operated Services", "Laundry Depot",
                          "Laundry (w/equipment)"})
    space.add_merge(raw, "Laundry");
  for (const char* raw : {"Ltd Service Food Establishment",
                          "Restaurant Class 1", "Restaurant Class 2"})
    space.add_merge(raw, "Restaurant");
  space.add_merge("Short-Term Rental", "Hotel");
  space.add_merge("Motel", "Hotel");
  space.add_merge("Contractor - Special Trades", "Contractor");
  space.add_merge("School (Business & Trade)", "School (Private)");
  space.add_merge("Artist Live/Work Studio", "Studio");
  space.add_drop("Office");
  return space;
}

void LabelSpace::add_label(std::string label, HighLevelClass cls) {
  if (!high_level_.contains(label)) labels_.push_back(label);
  high_level_[std::move(label)] = cls;
}

void LabelSpace::add_merge(std::string raw, std::string canonical) {
  merges_[std::move(raw)] = std::move(canonical);
}

void LabelSpace::add_drop(std::string raw) { drops_[std::move(raw)] = true; }

std::optional<std::string> LabelSpace::merge(std::string_view raw_label) const {
  const std::string_view key = trim(raw_label);
  if (drops_.contains(key)) return std::nullopt;
  if (auto it = merges_.find(key); it != merges_.end()) return it->second;
  if (high_level_.contains(key)) return std::string(key);
  // A merge target outside the canonical set (e.g. "Laundry") is a valid
  // label that is expected to fall under the sample threshold.
  for (const auto& [raw, target] : merges_) {
    if (target == key) return std::string(key);
  }
  return std::nullopt;
}

HighLevelClass LabelSpace::high_level(std::string_view label) const {
  auto it = high_level_.find(label);
  if (it == high_level_.end()) {
    throw UsageError("label has no high-level class: " + std::string(label));
  }
  return it->second;
}

bool LabelSpace::is_dropped(std::string_view raw_label) const {
  return drops_.contains(trim(raw_label));
}

bool LabelSpace::contains(std::string_view label) const {
  return high_level_.contains(label);
}

LabelSpace LabelSpace::restricted_to(const std::vector<std::string>& keep) const {
  const std::set<std::string, std::less<>> wanted(keep.begin(), keep.end());
  LabelSpace out;
  out.merges_ = merges_;
  out.drops_ = drops_;
  for (const std::string& label : labels_) {
    if (wanted.contains(label)) out.add_label(label, high_level_.at(label));
  }
  return out;
}

LabelSpace LabelSpace::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read labels file " + path.string());
  LabelSpace space;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected <label>\\t<class>");
    }
    const auto cls = parse_high_level(trim(std::string_view(line).substr(tab + 1)));
    if (!cls) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": unknown high-level class");
    }
    space.add_label(std::string(trim(std::string_view(line).substr(0, tab))), *cls);
  }
  if (space.labels().empty()) throw DataError("labels file is empty: " + path.string());
  return space;
}

void LabelSpace::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (const std::string& label : labels_) {
    out << label << '\t' << to_string(high_level_.at(label)) << '\n';
  }
}

LicenceTable read_licences(std::istream& in, char delimiter) {
  LicenceTable table;
  bool malformed = false;
  auto header = csv::read_record(in, delimiter, &malformed);
  if (!header) throw UsageError("licence file is empty");
  if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF"))
    header->front().erase(0, 3);

  const auto find_column = [&](std::string_view name) -> std::size_t {
    const std::string wanted = lower_ascii(name);
    for (std::size_t i = 0; i < header->size(); ++i) {
      if (lower_ascii(trim((*header)[i])) == wanted) return i;
    }
    throw UsageError("missing column " + std::string(name));
  };
  const std::size_t name_col = find_column("BusinessName");
  const std::size_t trade_col = find_column("BusinessTradeName");
  const std::size_t type_col = find_column("BusinessType");
  const std::size_t needed = std::max({name_col, trade_col, type_col}) + 1;

  while (auto fields = csv::read_record(in, delimiter, &malformed)) {
    if (fields->size() == 1 && fields->front().empty()) continue;
    if (malformed || fields->size() < needed) {
      ++table.parse_failures;
      continue;
    }
    RawLicenceRow row{(*fields)[name_col], (*fields)[trade_col],
                      (*fields)[type_col]};
    if (trim(row.business_type).empty()) {
      ++table.parse_failures;
      continue;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

LicenceTable read_licences(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return read_licences(in, delimiter);
}

std::optional<std::string> select_name(const RawLicenceRow& row) {
  std::string_view chosen = trim(row.business_trade_name);
  if (chosen.empty()) chosen = trim(row.business_name);
  if (chosen.empty()) return std::nullopt;
  if (chosen.front() == '(' && chosen.back() == ')') return std::nullopt;
  return std::string(chosen);
}

namespace {

Dataset finish_dataset(std::vector<Record> merged, const LabelSpace& space,
                       std::size_t min_samples, IngestStats stats) {
  if (min_samples < 1) throw UsageError("min_samples must be >= 1");

  std::set<std::pair<std::string, std::string>> seen;
  std::vector<Record> unique;
  unique.reserve(merged.size());
  for (Record& r : merged) {
    if (!seen.emplace(r.name, r.label).second) {
      ++stats.duplicates;
      continue;
    }
    unique.push_back(std::move(r));
  }

  std::map<std::string, std::size_t, std::less<>> counts;
  for (const Record& r : unique) ++counts[r.label];

  Dataset out;
  std::vector<std::string> kept;
  for (const auto& [label, count] : counts) {
    if (count >= min_samples) kept.push_back(label);
  }
  for (const std::string& label : kept) {
    // Throws for merge targets without a high-level class.
    (void)space.high_level(label);
  }
  const std::set<std::string, std::less<>> keep(kept.begin(), kept.end());
  for (Record& r : unique) {
    if (keep.contains(r.label)) {
      out.records.push_back(std::move(r));
    } else {
      ++stats.rare_label_records;
    }
  }
  if (out.records.empty()) throw DataError("dataset empty after preprocessing");
  out.space = space.restricted_to(kept);
  out.stats = std::move(stats);
  return out;
}

}  // namespace

Dataset build_dataset(const std::vector<RawLicenceRow>& rows,
                      const LabelSpace& space, std::size_t min_samples) {
  IngestStats stats;
  stats.rows = rows.size();
  std::vector<Record> merged;
  merged.reserve(rows.size());
  for (const RawLicenceRow& row : rows) {
    auto name = select_name(row);
    if (!name) {
      ++stats.skipped_names;
      continue;
    }
    auto label = space.merge(row.business_type);
    if (!label) {
      const std::string raw(trim(row.business_type));
      if (space.is_dropped(raw)) {
        ++stats.dropped_labels;
      } else {
        ++stats.unknown_labels;
        ++stats.unknown_label_counts[raw];
      }
      continue;
    }
    merged.push_back({std::move(*name), std::move(*label)});
  }
  return finish_dataset(std::move(merged), space, min_samples, std::move(stats));
}

Dataset build_dataset(const std::vector<Record>& records,
                      const LabelSpace& space, std::size_t min_samples) {
  IngestStats stats;
  stats.rows = records.size();
  std::vector<Record> merged;
  merged.reserve(records.size());
  for (const Record& r : records) {
    auto label = space.merge(r.label);
    if (!label || trim(r.name).empty()) {
      ++stats.unknown_labels;
      continue;
    }
    merged.push_back({r.name, std::move(*label)});
  }
  return finish_dataset(std::move(merged), space, min_samples, std::move(stats));
}

std::pair<std::vector<Record>, std::vector<Record>> split(
    const std::vector<Record>& records, const SplitSpec& spec) {
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
    throw UsageError("test fraction must be in (0, 1)");
  }
  const std::size_t n = records.size();
  if (n < 2) throw UsageError("need at least 2 records to split");

  std::size_t n_test = static_cast<std::size_t>(
      std::ceil(spec.test_fraction * static_cast<double>(n) - 1e-9));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(spec.seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Record> train, test;
  test.reserve(n_test);
  train.reserve(n - n_test);
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_test ? test : train).push_back(records[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

HighLevelClass map_high_level(std::string_view label, const LabelSpace& space) {
  return space.high_level(label);
}

void write_records(const std::filesystem::path& path,
                   const std::vector<Record>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const Record& r : records) out << r.label << '\t' << r.name << '\n';
}

std::vector<Record> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected <label>\\t<name>");
    }
    records.push_back({line.substr(tab + 1), line.substr(0, tab)});
  }
  return records;
}

}  // namespace bizfair
