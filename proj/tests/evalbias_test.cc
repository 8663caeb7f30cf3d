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
#include <random>
#include <string>
#include <vector>

#include "bizfair/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace bizfair {
namespace {

std::vector<Record> separable_corpus() {
  return {{"alpha beta", "Plumber"}, {"gamma delta", "Restaurant"},
          {"epsilon zeta", "Educational"}, {"beta alpha", "Plumber"},
          {"delta", "Restaurant"}, {"zeta eta", "Educational"}};
}

TEST(PrecisionRecall, PerfectRanks) {
  const std::vector<std::size_t> ranks(7, 0);
  const PrecisionRecall at1 = precision_recall_at_k(ranks, 1);
  const PrecisionRecall at2 = precision_recall_at_k(ranks, 2);
  EXPECT_EQ(at1.precision, 100.0);
  EXPECT_EQ(at1.recall, 100.0);
  EXPECT_EQ(at2.precision, 50.0);
  EXPECT_EQ(at2.recall, 100.0);
}

TEST(PrecisionRecall, MixedRanks) {
  // Hits: one at k=1, two at k=2, out of four records.
  const std::vector<std::size_t> ranks = {0, 1, 2, 5};
  EXPECT_EQ(precision_recall_at_k(ranks, 1).precision, 25.0);
  EXPECT_EQ(precision_recall_at_k(ranks, 1).recall, 25.0);
  EXPECT_EQ(precision_recall_at_k(ranks, 2).precision, 25.0);
  EXPECT_EQ(precision_recall_at_k(ranks, 2).recall, 50.0);
}

TEST(PrecisionRecall, PerfectModel) {
  const std::vector<Record> data = separable_corpus();
  const Model model = train(data, Hyperparams{});
  const PrecisionRecall at1 = precision_recall_at_k(model, data, 1);
  const PrecisionRecall at2 = precision_recall_at_k(model, data, 2);
  EXPECT_EQ(at1.precision, 100.0);
  EXPECT_EQ(at1.recall, 100.0);
  EXPECT_EQ(at2.precision, 50.0);
  EXPECT_EQ(at2.recall, 100.0);
}

TEST(PrecisionRecall, UnknownLabelNeverHits) {
  const Model model = train(separable_corpus(), Hyperparams{});
  const std::vector<Record> test = {{"alpha", "Roofer"}};
  EXPECT_EQ(true_label_ranks(model, test), std::vector<std::size_t>{3});
  EXPECT_EQ(precision_recall_at_k(model, test, 3).recall, 0.0);
}

TEST(PerClass, AllCorrect) {
  const LabelSpace space = LabelSpace::vancouver();
  const std::vector<std::string> labels = {"Plumber", "Restaurant", "Educational"};
  const PerClassPR pr = per_class_pr(labels, labels, space);
  for (HighLevelClass c : {HighLevelClass::kB2BC, HighLevelClass::kB2C, HighLevelClass::kPUB}) {
    EXPECT_EQ(pr.at(c).precision, 100.0);
    EXPECT_EQ(pr.at(c).recall, 100.0);
  }
  EXPECT_EQ(pr.at(HighLevelClass::kB2B).precision, std::nullopt);
  EXPECT_EQ(pr.at(HighLevelClass::kB2B).recall, std::nullopt);
}

TEST(PerClass, DisjointPredictions) {
  const LabelSpace space = LabelSpace::vancouver();
  const std::vector<std::string> truth = {"Restaurant", "Jeweller"};
  const std::vector<std::string> predicted = {"Manufacturer", "Wholesale Dealer"};
  const PerClassPR pr = per_class_pr(truth, predicted, space);
  EXPECT_EQ(pr.at(HighLevelClass::kB2B).precision, 0.0);
  EXPECT_EQ(pr.at(HighLevelClass::kB2B).recall, std::nullopt);
  EXPECT_EQ(pr.at(HighLevelClass::kB2C).recall, 0.0);
  EXPECT_EQ(pr.at(HighLevelClass::kB2C).precision, std::nullopt);
}

TEST(PerClass, ThreeClassConfusion) {
  // truth      B2BC B2BC B2BC B2C B2C PUB
  // predicted  B2BC B2BC B2C  B2C PUB PUB
  // B2BC: P 2/2, R 2/3.  B2C: P 1/2, R 1/2.  PUB: P 1/2, R 1/1.
  const LabelSpace space = LabelSpace::vancouver();
  const std::vector<std::string> truth = {"Plumber", "Roofer", "Painter",
                                          "Restaurant", "Jeweller", "Educational"};
  const std::vector<std::string> predicted = {"Roofer", "Roofer", "Restaurant",
                                              "Jeweller", "Educational", "School (Private)"};
  const PerClassPR pr = per_class_pr(truth, predicted, space);
  EXPECT_EQ(pr.at(HighLevelClass::kB2BC).precision, 100.0);
  EXPECT_EQ(pr.at(HighLevelClass::kB2BC).recall, 100.0 * 2 / 3);
  EXPECT_EQ(pr.at(HighLevelClass::kB2C).precision, 50.0);
  EXPECT_EQ(pr.at(HighLevelClass::kB2C).recall, 50.0);
  EXPECT_EQ(pr.at(HighLevelClass::kPUB).precision, 50.0);
  EXPECT_EQ(pr.at(HighLevelClass::kPUB).recall, 100.0);
}

TEST(Imbalance, WorkedExamples) {
  const std::vector<std::size_t> a = {100, 0};
  EXPECT_EQ(bias_imbalance(a, a, 100), 0.0);
  EXPECT_EQ(bias_imbalance(a, std::vector<std::size_t>{90, 10}, 100, 5), 20.0);
  EXPECT_EQ(bias_imbalance(a, std::vector<std::size_t>{96, 4}, 100, 5), 0.0);
  EXPECT_EQ(bias_imbalance(a, std::vector<std::size_t>{96, 4}, 100, 1), 8.0);
  EXPECT_THROW(bias_imbalance(a, std::vector<std::size_t>{90, 9}, 100), UsageError);
}

TEST(Imbalance, SymmetricAndBounded) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t labels = 2 + rng() % 5;
    const std::size_t n = 1 + rng() % 50;
    std::vector<std::size_t> a(labels, 0), b(labels, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++a[rng() % labels];
      ++b[rng() % labels];
    }
    const std::size_t min_count = rng() % 4;
    const double ab = bias_imbalance(a, b, n, min_count);
    EXPECT_EQ(ab, bias_imbalance(b, a, n, min_count));
    EXPECT_EQ(bias_imbalance(a, a, n, min_count), 0.0);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 200.0);
  }
}

TEST(Aggregate, Examples) {
  const RunStats flat = aggregate_runs(std::vector<double>{60, 60, 60});
  EXPECT_EQ(flat.mean, 60.0);
  EXPECT_EQ(flat.stddev, 0.0);
  const RunStats ramp = aggregate_runs(std::vector<double>{1, 2, 3});
  EXPECT_EQ(ramp.mean, 2.0);
  EXPECT_EQ(ramp.stddev, 1.0);
  const RunStats one = aggregate_runs(std::vector<double>{5});
  EXPECT_EQ(one.mean, 5.0);
  EXPECT_EQ(one.stddev, 0.0);
}

TEST(Probes, ApproachOneFormat) {
  const PairedSampleSet set = gen_approach1({"Daniel"}, {"Mary"}, {"mirror"}, 3, 1);
  ASSERT_EQ(set.side_a.size(), 3u);
  EXPECT_EQ(set.side_a[0], "Daniel's Mirror");
  EXPECT_EQ(set.side_b[0], "Mary's Mirror");
}

TEST(Probes, ApproachOneSidesShareSuffix) {
  const NameLists lists = default_name_lists();
  const std::vector<std::string> dict = {"mirror", "TABLE", "window", "gem"};
  const PairedSampleSet set =
      gen_approach1(lists.at("canadian_male"), lists.at("mexican_female"), dict, 200, 9);
  for (std::size_t i = 0; i < set.side_a.size(); ++i) {
    const std::string& a = set.side_a[i];
    const std::string& b = set.side_b[i];
    EXPECT_EQ(a.substr(a.find("'s ")), b.substr(b.find("'s "))) << a << " / " << b;
  }
  EXPECT_EQ(set.side_a, gen_approach1(lists.at("canadian_male"), lists.at("mexican_female"),
                                      dict, 200, 9).side_a);
}

TEST(Probes, ApproachTwoFormat) {
  const PairedSampleSet set = gen_approach2({"Daniel"}, {"Mary"}, {"Bob's Grocery Store"}, 1);
  ASSERT_EQ(set.side_a.size(), 1u);
  EXPECT_EQ(set.side_a[0], "Daniel's Bob's Grocery Store");
  EXPECT_EQ(set.side_b[0], "Mary's Bob's Grocery Store");
  EXPECT_THROW(gen_approach2({"Daniel"}, {"Mary"}, {}, 1), UsageError);
}

TEST(Audit, MaskedSidesGiveZero) {
  NameLexicon lex = testing::census();
  for (const auto& [list, names] : default_name_lists()) {
    const Gender g = list.ends_with("female") ? Gender::kFemale : Gender::kMale;
    for (const std::string& name : names) lex.add(name, g);
  }
  std::vector<Record> data;
  for (const char* name : {"Olivia", "Emma", "Noah", "Liam", "Mary", "Daniel"}) {
    data.push_back({std::string(name) + "'s Mirror Shop", "Retail Dealer"});
    data.push_back({std::string(name) + "'s Table Cafe", "Restaurant"});
  }
  const Model model = train_model(data, Hyperparams{}, TrainingMode::kMask, lex);

  BiasAuditOptions options;
  options.n = 300;
  options.dictionary = {"mirror", "table", "window"};
  const std::vector<Model> models = {model};
  const BiasReport report = bias_audit(models, options);
  ASSERT_EQ(report.rows.size(), 6u);
  for (const BiasRow& row : report.rows) EXPECT_EQ(row.imbalance.mean, 0.0) << row.list_a;
  EXPECT_EQ(report.average.imbalance.mean, 0.0);
}

TEST(Audit, AverageRowIsMeanOfPairs) {
  std::mt19937_64 rng(4);
  std::vector<Model> models;
  for (int m = 0; m < 3; ++m) {
    Model model = testing::random_model(4, 3, 6, rng);
    NameLists lists = default_name_lists();
    for (const auto& [list, names] : lists) {
      for (const std::string& name : names) model.vocab.add(name + "'s");
    }
    model.params.input = RowMatrix<float>::Random(model.vocab.size(), 6) * 3;
    models.push_back(std::move(model));
  }
  BiasAuditOptions options;
  options.n = 200;
  options.min_count = 0;
  options.dictionary = {"t0", "t1", "t2", "t3"};
  const BiasReport report = bias_audit(models, options);
  std::vector<double> per_model(models.size(), 0.0);
  for (const BiasRow& row : report.rows) {
    ASSERT_EQ(row.imbalance.values.size(), models.size());
    for (std::size_t m = 0; m < models.size(); ++m) per_model[m] += row.imbalance.values[m];
  }
  for (std::size_t m = 0; m < models.size(); ++m) {
    EXPECT_NEAR(report.average.imbalance.values[m], per_model[m] / report.rows.size(), 1e-12);
  }
  EXPECT_GT(report.average.imbalance.mean, 0.0);
}

TEST(Evaluate, SingleLabelIdentities) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Model model = testing::random_model(6, 2 + static_cast<int>(rng() % 5), 5, rng);
    std::vector<Record> test;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 40); i < n; ++i) {
      test.push_back({testing::random_text(model, 1 + rng() % 3, rng),
                      model.labels[rng() % model.labels.size()]});
    }
    const std::vector<int> ks = {1, 2};
    const EvalReport report = evaluate(model, test, ks, nullptr);
    EXPECT_EQ(report.at_k.at(1).precision, report.at_k.at(1).recall);
    EXPECT_LE(report.at_k.at(2).precision, 50.0);
    EXPECT_GE(report.at_k.at(2).recall, report.at_k.at(1).recall);
  }
}

TEST(Dictionary, BundledWords) {
  const std::vector<std::string> words =
      load_dictionary(std::filesystem::path(BIZFAIR_DATA_DIR) / "words.txt");
  EXPECT_GE(words.size(), 200u);
  EXPECT_NE(std::find(words.begin(), words.end(), "mirror"), words.end());
}

}  // namespace
}  // namespace bizfair
