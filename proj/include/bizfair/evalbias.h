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

#ifndef BIZFAIR_EVALBIAS_H_
#define BIZFAIR_EVALBIAS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bizfair/classifier.h"
#include "bizfair/ingest.h"
#include "bizfair/nametext.h"

namespace bizfair {

struct PrecisionRecall {
  double precision = 0.0;  // percent
  double recall = 0.0;     // percent
};

// 0-based rank of each record's true label in the model's ranking;
// labels unknown to the model get rank |labels| (never a hit).
std::vector<std::size_t> true_label_ranks(const Model& model,
                                          std::span<const Record> test);

// hits = #(rank < k); precision = 100 hits / (k n), recall = 100 hits / n.
PrecisionRecall precision_recall_at_k(std::span<const std::size_t> ranks, int k);
PrecisionRecall precision_recall_at_k(const Model& model,
                                      std::span<const Record> test, int k);

// One-vs-rest top-1 precision/recall per high-level class. A value is
// nullopt when its denominator is zero (no predictions of the class for
// precision, class absent from the truth for recall).
struct ClassPR {
  std::optional<double> precision;
  std::optional<double> recall;
};
using PerClassPR = std::map<HighLevelClass, ClassPR>;

PerClassPR per_class_pr(std::span<const std::string> truth,
                        std::span<const std::string> predicted,
                        const LabelSpace& space);
PerClassPR per_class_pr(const Model& model, std::span<const Record> test,
                        const LabelSpace& space);

struct EvalReport {
  std::size_t n = 0;
  std::map<int, PrecisionRecall> at_k;
  PerClassPR per_class;
};

EvalReport evaluate(const Model& model, std::span<const Record> test,
                    std::span<const int> ks, const LabelSpace* space);

struct RunStats {
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one value
};

RunStats aggregate_runs(std::span<const double> values);

// Paired probe texts: side_a[i] and side_b[i] differ only in the leading
// given name.
struct PairedSampleSet {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;
  std::string list_a;
  std::string list_b;
};

// n pairs of "<NameA>'s <Word>" / "<NameB>'s <Word>", the word lowercased then
// capitalized and shared by both sides.
PairedSampleSet gen_approach1(const std::vector<std::string>& list_a,
                              const std::vector<std::string>& list_b,
                              const std::vector<std::string>& dictionary,
                              std::size_t n, std::uint64_t seed);

// One pair "<NameA>'s <text>" / "<NameB>'s <text>" per test text.
PairedSampleSet gen_approach2(const std::vector<std::string>& list_a,
                              const std::vector<std::string>& list_b,
                              const std::vector<std::string>& test_texts,
                              std::uint64_t seed);

// 100 * sum_c d(c) / n with d(c) = |a(c) - b(c)|, zeroed when below
// min_count. Both count vectors must total n.
double bias_imbalance(std::span<const std::size_t> counts_a,
                      std::span<const std::size_t> counts_b, std::size_t n,
                      std::size_t min_count = 5);

struct ListPair {
  std::string list_a;
  std::string list_b;
};

// The six list pairs reported for each approach.
std::vector<ListPair> default_list_pairs();

struct BiasAuditOptions {
  int approach = 1;
  std::size_t n = 10'000;  // approach 1 pairs
  std::size_t min_count = 5;
  std::uint64_t seed = 0;
  std::vector<ListPair> pairs = default_list_pairs();
  NameLists lists = default_name_lists();
  std::vector<std::string> dictionary;  // approach 1
};

struct BiasRow {
  std::string list_a;
  std::string list_b;
  RunStats imbalance;
  std::size_t n = 0;  // samples per side (last model)
};

struct BiasReport {
  int approach = 1;
  std::size_t min_count = 5;
  std::vector<BiasRow> rows;
  BiasRow average;  // per-model mean over pairs, then aggregated
};

// Classifies both sides of each pair set with every model (top-1, through
// the model's own preprocessing) and aggregates imbalance across models.
// For approach 2, `test_texts[m]` holds model m's held-out texts (a single
// entry is shared by all models).
BiasReport bias_audit(std::span<const Model> models,
                      const BiasAuditOptions& options,
                      const std::vector<std::vector<std::string>>& test_texts = {});

// One line per word, blank lines skipped.
std::vector<std::string> load_dictionary(const std::filesystem::path& path);

}  // namespace bizfair

#endif  // BIZFAIR_EVALBIAS_H_
