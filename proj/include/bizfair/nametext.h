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

#ifndef BIZFAIR_NAMETEXT_H_
#define BIZFAIR_NAMETEXT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bizfair/ingest.h"

namespace bizfair {

using TokenSeq = std::vector<std::string>;

// Splits on Unicode whitespace. Casing and punctuation are kept.
TokenSeq tokenize(std::string_view text);

// Joins with single spaces.
std::string join(const TokenSeq& tokens);

// The lookup form of a token: the case-folded name core plus the byte range
// of that core inside the token, so callers can rebuild the token around a
// different name.
struct NameKey {
  std::string key;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Trims non-letters from both ends, strips one possessive ('s, ’s, ', ’)
// when `strip_possessive` is set, trims again and case-folds.
NameKey name_key(std::string_view token, bool strip_possessive = true);

enum class Gender { kMale, kFemale };

// Case-folded given names by gender.
//
// A name may appear in both sets (the census files share a few hundred).
// gender_of() resolves such names to the gender with the larger frequency;
// masking only cares about membership in either set.
class NameLexicon {
 public:
  void add(std::string_view name, Gender gender, double frequency = 0.0);

  bool contains(std::string_view key) const;
  bool contains(std::string_view key, Gender gender) const;
  std::optional<Gender> gender_of(std::string_view key) const;

  // Keys whose resolved gender is `gender`, sorted.
  std::vector<std::string> names_of(Gender gender) const;

  const std::set<std::string, std::less<>>& male() const { return male_; }
  const std::set<std::string, std::less<>>& female() const { return female_; }
  bool empty() const { return male_.empty() && female_.empty(); }

 private:
  std::set<std::string, std::less<>> male_;
  std::set<std::string, std::less<>> female_;
  std::map<std::string, double, std::less<>> male_freq_;
  std::map<std::string, double, std::less<>> female_freq_;
};

// 1990 census name files: `NAME freq cumfreq rank` per line.
NameLexicon load_census_names(const std::filesystem::path& male_file,
                              const std::filesystem::path& female_file);

// Named given-name lists for bias probes (canadian_female, canadian_male,
// mexican_female, mexican_male), original casing.
using NameLists = std::map<std::string, std::vector<std::string>>;

NameLists default_name_lists();

// `<list-name>\t<Name>` lines; lists present in the file replace the
// defaults, others are kept.
NameLists load_name_lists(const std::filesystem::path& path,
                          NameLists base = default_name_lists());

struct MaskPolicy {
  std::string placeholder = "_";
  bool strip_possessive = true;
};

// Throws UsageError when the placeholder is empty, contains whitespace or is
// itself a lexicon name.
void validate(const MaskPolicy& policy, const NameLexicon& lex);

// Replaces every whole token whose name key is in the lexicon with the
// placeholder. Token count is preserved.
std::string mask_names(std::string_view text, const NameLexicon& lex,
                       const MaskPolicy& policy = {});

// Returns `records` followed by one gender-swapped copy of every record that
// contains a gendered token. Replacement names are drawn uniformly from the
// opposite gender with an RNG keyed on (seed, record index).
std::vector<Record> gender_swap_augment(const std::vector<Record>& records,
                                        const NameLexicon& lex,
                                        std::uint64_t seed);

}  // namespace bizfair

#endif  // BIZFAIR_NAMETEXT_H_
