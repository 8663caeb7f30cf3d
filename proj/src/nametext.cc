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

#include "bizfair/nametext.h"

#include <fstream>
#include <random>
#include <sstream>

#include "bizfair/error.h"
#include "text.h"

namespace bizfair {

TokenSeq tokenize(std::string_view input) {
  TokenSeq tokens;
  std::size_t start = std::string_view::npos;
  std::size_t i = 0;
  while (i < input.size()) {
    std::size_t len = 0;
    const char32_t cp = text::decode(input, i, &len);
    if (text::is_space(cp)) {
      if (start != std::string_view::npos) {
        tokens.emplace_back(input.substr(start, i - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i += len;
  }
  if (start != std::string_view::npos) tokens.emplace_back(input.substr(start));
  return tokens;
}

std::string join(const TokenSeq& tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

namespace {

void trim_non_letters(std::string_view token, std::size_t* begin,
                      std::size_t* end) {
  while (*begin < *end) {
    std::size_t len = 0;
    if (text::is_letter(text::decode(token, *begin, &len))) break;
    *begin += len;
  }
  while (*end > *begin) {
    const std::size_t prev = text::previous_boundary(token, *end);
    std::size_t len = 0;
    if (text::is_letter(text::decode(token, prev, &len))) break;
    *end = prev;
  }
}

}  // namespace

NameKey name_key(std::string_view token, bool strip_possessive) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  trim_non_letters(token, &begin, &end);
  if (strip_possessive && end > begin) {
    const std::string_view core = token.substr(begin, end - begin);
    for (std::string_view suffix : {"'s", "'S", "’s", "’S"}) {
      if (core.size() > suffix.size() && core.ends_with(suffix)) {
        end -= suffix.size();
        break;
      }
    }
    trim_non_letters(token, &begin, &end);
  }
  return {text::fold_case(token.substr(begin, end - begin)), begin, end};
}

void NameLexicon::add(std::string_view name, Gender gender, double frequency) {
  std::string key = text::fold_case(name);
  if (key.empty()) return;
  auto& names = gender == Gender::kMale ? male_ : female_;
  auto& freq = gender == Gender::kMale ? male_freq_ : female_freq_;
  names.insert(key);
  auto [it, inserted] = freq.emplace(std::move(key), frequency);
  if (!inserted && frequency > it->second) it->second = frequency;
}

bool NameLexicon::contains(std::string_view key) const {
  return male_.contains(key) || female_.contains(key);
}

bool NameLexicon::contains(std::string_view key, Gender gender) const {
  return gender == Gender::kMale ? male_.contains(key) : female_.contains(key);
}

std::optional<Gender> NameLexicon::gender_of(std::string_view key) const {
  const auto m = male_freq_.find(key);
  const auto f = female_freq_.find(key);
  if (m == male_freq_.end() && f == female_freq_.end()) return std::nullopt;
  if (f == female_freq_.end()) return Gender::kMale;
  if (m == male_freq_.end()) return Gender::kFemale;
  return m->second >= f->second ? Gender::kMale : Gender::kFemale;
}

std::vector<std::string> NameLexicon::names_of(Gender gender) const {
  std::vector<std::string> out;
  for (const std::string& key : gender == Gender::kMale ? male_ : female_) {
    if (gender_of(key) == gender) out.push_back(key);
  }
  return out;
}

namespace {

void load_census_file(const std::filesystem::path& path, Gender gender,
                      NameLexicon* lex) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read census name file " + path.string());
  std::string line;
  std::size_t count = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    double frequency = 0.0;
    if (!(fields >> frequency)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected NAME FREQ CUMFREQ RANK");
    }
    lex->add(name, gender, frequency);
    ++count;
  }
  if (count == 0) throw DataError("census name file is empty: " + path.string());
}

}  // namespace

NameLexicon load_census_names(const std::filesystem::path& male_file,
                              const std::filesystem::path& female_file) {
  NameLexicon lex;
  load_census_file(male_file, Gender::kMale, &lex);
  load_census_file(female_file, Gender::kFemale, &lex);
  return lex;
}

NameLists default_name_lists() {
  // "Chloc" and "Amilia" are kept as published.
  return {
      {"canadian_female",
       {"Olivia", "Emma", "Charlotte", "Sophia", "Aria", "Ava", "Chloc",
        "Zoey", "Abigail", "Amilia"}},
      {"canadian_male",
       {"Noah", "Liam", "Jackson", "Lucas", "Logan", "Benjamin", "Jacob",
        "William", "Oliver", "James"}},
      {"mexican_female",
       {"Ximena", "Valentina", "María", "Fernanda", "Sofía", "María José",
        "Martina", "Emilia", "Zoe", "Mia", "Dulce"}},
      {"mexican_male",
       {"Santiago", "Mateo", "Matías", "Diego", "Sebastián", "Nicolás",
        "Miguel", "Ángel", "Iker", "Alejandro", "Samuel"}},
  };
}

NameLists load_name_lists(const std::filesystem::path& path, NameLists base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read name lists " + path.string());
  NameLists from_file;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab + 1 == line.size()) {
      throw DataError("expected <list-name>\\t<Name> in " + path.string());
    }
    from_file[line.substr(0, tab)].push_back(line.substr(tab + 1));
  }
  for (auto& [list, names] : from_file) base[list] = std::move(names);
  return base;
}

void validate(const MaskPolicy& policy, const NameLexicon& lex) {
  if (policy.placeholder.empty()) throw UsageError("mask placeholder is empty");
  if (tokenize(policy.placeholder).size() != 1 ||
      tokenize(policy.placeholder).front() != policy.placeholder) {
    throw UsageError("mask placeholder must be a single token");
  }
  if (lex.contains(name_key(policy.placeholder, policy.strip_possessive).key)) {
    throw UsageError("mask placeholder is itself a lexicon name");
  }
}

std::string mask_names(std::string_view input, const NameLexicon& lex,
                       const MaskPolicy& policy) {
  TokenSeq tokens = tokenize(input);
  for (std::string& token : tokens) {
    const NameKey key = name_key(token, policy.strip_possessive);
    if (!key.key.empty() && lex.contains(key.key)) token = policy.placeholder;
  }
  return join(tokens);
}

namespace {

std::string match_casing(std::string_view original, const std::string& name) {
  const std::string upper = text::upper_case(original);
  const std::string lower = text::fold_case(original);
  if (original == upper && upper != lower && original.size() > 1)
    return text::upper_case(name);
  if (original == lower) return name;
  return text::capitalize(name);
}

}  // namespace

std::vector<Record> gender_swap_augment(const std::vector<Record>& records,
                                        const NameLexicon& lex,
                                        std::uint64_t seed) {
  const std::vector<std::string> male = lex.names_of(Gender::kMale);
  const std::vector<std::string> female = lex.names_of(Gender::kFemale);

  std::vector<Record> out = records;
  for (std::size_t index = 0; index < records.size(); ++index) {
    const Record& record = records[index];
    TokenSeq tokens = tokenize(record.name);
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(std::uint64_t{index} >> 32)};
    std::mt19937_64 rng(seq);

    bool swapped = false;
    for (std::string& token : tokens) {
      const NameKey key = name_key(token);
      if (key.key.empty()) continue;
      const auto gender = lex.gender_of(key.key);
      if (!gender) continue;
      const auto& pool = *gender == Gender::kMale ? female : male;
      if (pool.empty()) {
        throw UsageError("name lexicon needs both male and female names to augment");
      }
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const std::string_view core =
          std::string_view(token).substr(key.begin, key.end - key.begin);
      token = token.substr(0, key.begin) + match_casing(core, pool[pick(rng)]) +
              token.substr(key.end);
      swapped = true;
    }
    if (swapped) out.push_back({join(tokens), record.label});
  }
  return out;
}

}  // namespace bizfair
