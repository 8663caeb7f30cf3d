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

#include "bizfair/evalbias.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "bizfair/error.h"
#include "text.h"

namespace bizfair {

std::vector<std::size_t> true_label_ranks(const Model& model,
                                          std::span<const Record> test) {
  std::vector<std::size_t> ranks;
  ranks.reserve(test.size());
  for (const Record& r : test) {
    const std::int32_t target = model.label_index(r.label);
    std::size_t rank = model.labels.size();
    if (target >= 0) {
      const Prediction pred = forward(model, tokenize(preprocess(model, r.name)));
      for (std::size_t i = 0; i < pred.ranked.size(); ++i) {
        if (pred.ranked[i].first == target) {
          rank = i;
          break;
        }
      }
    }
    ranks.push_back(rank);
  }
  return ranks;
}

PrecisionRecall precision_recall_at_k(std::span<const std::size_t> ranks, int k) {
  if (k < 1) throw UsageError("k must be >= 1");
  if (ranks.empty()) throw UsageError("cannot evaluate an empty test set");
  const auto hits = static_cast<double>(std::count_if(
      ranks.begin(), ranks.end(),
      [k](std::size_t rank) { return rank < static_cast<std::size_t>(k); }));
  const auto n = static_cast<double>(ranks.size());
  return {100.0 * hits / (k * n), 100.0 * hits / n};
}

PrecisionRecall precision_recall_at_k(const Model& model,
                                      std::span<const Record> test, int k) {
  const std::vector<std::size_t> ranks = true_label_ranks(model, test);
  return precision_recall_at_k(ranks, k);
}

PerClassPR per_class_pr(std::span<const std::string> truth,
                        std::span<const std::string> predicted,
                        const LabelSpace& space) {
  if (truth.size() != predicted.size()) {
    throw UsageError("truth and prediction lists differ in length");
  }
  if (truth.empty()) throw UsageError("cannot evaluate an empty test set");
  std::map<HighLevelClass, std::size_t> true_pos, truth_count, pred_count;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const HighLevelClass t = map_high_level(truth[i], space);
    const HighLevelClass p = map_high_level(predicted[i], space);
    ++truth_count[t];
    ++pred_count[p];
    if (t == p) ++true_pos[t];
  }
  PerClassPR out;
  for (HighLevelClass c : kHighLevelClasses) {
    ClassPR pr;
    if (pred_count[c] > 0) pr.precision = 100.0 * true_pos[c] / pred_count[c];
    if (truth_count[c] > 0) pr.recall = 100.0 * true_pos[c] / truth_count[c];
    out[c] = pr;
  }
  return out;
}

PerClassPR per_class_pr(const Model& model, std::span<const Record> test,
                        const LabelSpace& space) {
  std::vector<std::string> truth, predicted;
  truth.reserve(test.size());
  predicted.reserve(test.size());
  for (const Record& r : test) {
    truth.push_back(r.label);
    predicted.push_back(model.labels[predict_topk(model, r.name, 1).ranked[0].first]);
  }
  return per_class_pr(truth, predicted, space);
}

EvalReport evaluate(const Model& model, std::span<const Record> test,
                    std::span<const int> ks, const LabelSpace* space) {
  EvalReport report;
  report.n = test.size();
  const std::vector<std::size_t> ranks = true_label_ranks(model, test);
  for (int k : ks) report.at_k[k] = precision_recall_at_k(ranks, k);
  if (space != nullptr) report.per_class = per_class_pr(model, test, *space);
  return report;
}

RunStats aggregate_runs(std::span<const double> values) {
  if (values.empty()) throw UsageError("aggregate_runs needs at least one value");
  RunStats stats;
  stats.values.assign(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(ss / (n - 1.0));
  }
  return stats;
}

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

const std::string& draw(const std::vector<std::string>& items, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, items.size() - 1);
  return items[pick(rng)];
}

}  // namespace

PairedSampleSet gen_approach1(const std::vector<std::string>& list_a,
                              const std::vector<std::string>& list_b,
                              const std::vector<std::string>& dictionary,
                              std::size_t n, std::uint64_t seed) {
  if (list_a.empty() || list_b.empty()) throw UsageError("name list is empty");
  if (dictionary.empty()) throw UsageError("dictionary is empty");
  std::mt19937_64 rng = make_rng(seed, 1);
  PairedSampleSet set;
  set.side_a.reserve(n);
  set.side_b.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name_a = draw(list_a, rng);
    const std::string& name_b = draw(list_b, rng);
    const std::string word = text::capitalize(draw(dictionary, rng));
    set.side_a.push_back(name_a + "'s " + word);
    set.side_b.push_back(name_b + "'s " + word);
  }
  return set;
}

PairedSampleSet gen_approach2(const std::vector<std::string>& list_a,
                              const std::vector<std::string>& list_b,
                              const std::vector<std::string>& test_texts,
                              std::uint64_t seed) {
  if (list_a.empty() || list_b.empty()) throw UsageError("name list is empty");
  if (test_texts.empty()) throw UsageError("approach 2 needs test texts");
  std::mt19937_64 rng = make_rng(seed, 2);
  PairedSampleSet set;
  set.side_a.reserve(test_texts.size());
  set.side_b.reserve(test_texts.size());
  for (const std::string& t : test_texts) {
    const std::string& name_a = draw(list_a, rng);
    const std::string& name_b = draw(list_b, rng);
    set.side_a.push_back(name_a + "'s " + t);
    set.side_b.push_back(name_b + "'s " + t);
  }
  return set;
}

double bias_imbalance(std::span<const std::size_t> counts_a,
                      std::span<const std::size_t> counts_b, std::size_t n,
                      std::size_t min_count) {
  if (counts_a.size() != counts_b.size()) {
    throw UsageError("label count vectors differ in length");
  }
  const std::size_t total_a = std::accumulate(counts_a.begin(), counts_a.end(), std::size_t{0});
  const std::size_t total_b = std::accumulate(counts_b.begin(), counts_b.end(), std::size_t{0});
  if (total_a != n || total_b != n) {
    throw UsageError("label counts must both total n");
  }
  if (n == 0) return 0.0;
  std::size_t sum = 0;
  for (std::size_t c = 0; c < counts_a.size(); ++c) {
    const std::size_t d = counts_a[c] > counts_b[c] ? counts_a[c] - counts_b[c]
                                                    : counts_b[c] - counts_a[c];
    if (d >= min_count) sum += d;
  }
  return 100.0 * static_cast<double>(sum) / static_cast<double>(n);
}

std::vector<ListPair> default_list_pairs() {
  return {{"canadian_male", "canadian_male"},
          {"canadian_female", "canadian_female"},
          {"canadian_male", "canadian_female"},
          {"canadian_male", "mexican_male"},
          {"canadian_female", "mexican_female"},
          {"canadian_male", "mexican_female"}};
}

namespace {

std::vector<std::size_t> top1_counts(const Model& model,
                                     const std::vector<std::string>& texts) {
  std::vector<std::size_t> counts(model.labels.size(), 0);
  for (const std::string& t : texts) {
    ++counts[static_cast<std::size_t>(predict_topk(model, t, 1).ranked[0].first)];
  }
  return counts;
}

const std::vector<std::string>& find_list(const NameLists& lists,
                                          const std::string& name) {
  auto it = lists.find(name);
  if (it == lists.end()) throw UsageError("unknown name list: " + name);
  return it->second;
}

}  // namespace

BiasReport bias_audit(std::span<const Model> models,
                      const BiasAuditOptions& options,
                      const std::vector<std::vector<std::string>>& test_texts) {
  if (models.empty()) throw UsageError("bias audit needs at least one model");
  if (options.approach != 1 && options.approach != 2) {
    throw UsageError("approach must be 1 or 2");
  }
  if (options.approach == 2 && test_texts.size() != 1 &&
      test_texts.size() != models.size()) {
    throw UsageError("approach 2 needs one test set, or one per model");
  }

  const std::size_t n_pairs = options.pairs.size();
  std::vector<std::vector<double>> per_pair(n_pairs);
  std::vector<double> per_model_average;
  std::vector<std::size_t> sizes(n_pairs, 0);

  for (std::size_t m = 0; m < models.size(); ++m) {
    double sum = 0.0;
    for (std::size_t p = 0; p < n_pairs; ++p) {
      const ListPair& pair = options.pairs[p];
      const auto& list_a = find_list(options.lists, pair.list_a);
      const auto& list_b = find_list(options.lists, pair.list_b);
      const std::uint64_t seed = make_rng(options.seed, p, m)();
      PairedSampleSet set =
          options.approach == 1
              ? gen_approach1(list_a, list_b, options.dictionary, options.n, seed)
              : gen_approach2(list_a, list_b,
                              test_texts.size() == 1 ? test_texts[0] : test_texts[m],
                              seed);
      const std::size_t n = set.side_a.size();
      const double imbalance =
          bias_imbalance(top1_counts(models[m], set.side_a),
                         top1_counts(models[m], set.side_b), n, options.min_count);
      per_pair[p].push_back(imbalance);
      sizes[p] = n;
      sum += imbalance;
    }
    if (n_pairs > 0) per_model_average.push_back(sum / static_cast<double>(n_pairs));
  }

  BiasReport report;
  report.approach = options.approach;
  report.min_count = options.min_count;
  for (std::size_t p = 0; p < n_pairs; ++p) {
    report.rows.push_back({options.pairs[p].list_a, options.pairs[p].list_b,
                           aggregate_runs(per_pair[p]), sizes[p]});
  }
  if (!per_model_average.empty()) {
    report.average = {"average", "", aggregate_runs(per_model_average),
                      sizes.empty() ? 0 : sizes.back()};
  }
  return report;
}

std::vector<std::string> load_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read dictionary " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const TokenSeq tokens = tokenize(line);
    if (tokens.size() == 1) words.push_back(tokens.front());
  }
  if (words.empty()) throw DataError("dictionary is empty: " + path.string());
  return words;
}

}  // namespace bizfair
