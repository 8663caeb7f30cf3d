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

#include "bizfair/classifier.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "bizfair/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace bizfair {
namespace {

using testing::random_model;

// Written without Eigen: mean of embedding rows, dot products, softmax.
std::vector<double> naive_probabilities(const Model& model, const TokenSeq& tokens) {
  const int dim = static_cast<int>(model.params.input.cols());
  std::vector<double> hidden(dim, 0.0);
  int found = 0;
  for (const std::string& token : tokens) {
    for (std::size_t id = 0; id < model.vocab.size(); ++id) {
      if (model.vocab.token(static_cast<std::int32_t>(id)) != token) continue;
      for (int j = 0; j < dim; ++j) hidden[j] += model.params.input(id, j);
      ++found;
    }
  }
  if (found > 0) {
    for (double& h : hidden) h /= found;
  }
  std::vector<double> scores;
  for (std::size_t l = 0; l < model.labels.size(); ++l) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += model.params.output(l, j) * hidden[j];
    scores.push_back(s);
  }
  const double max = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double& s : scores) sum += (s = std::exp(s - max));
  for (double& s : scores) s /= sum;
  return scores;
}

std::vector<double> by_label(const Prediction& pred, std::size_t n_labels) {
  std::vector<double> out(n_labels, -1.0);
  for (const auto& [label, prob] : pred.ranked) out[label] = prob;
  return out;
}

std::vector<Record> separable_corpus() {
  return {{"alpha beta", "A"}, {"gamma delta", "B"}, {"beta alpha alpha", "A"},
          {"delta", "B"}};
}

TEST(Vocab, BuildExamples) {
  const std::vector<Record> records = {{"a b", "X"}, {"b c", "Y"}};
  Hyperparams hp;
  const Vocab v = build_vocab(records, hp);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v.find("a"), 0);
  EXPECT_EQ(v.find("b"), 1);
  EXPECT_EQ(v.find("c"), 2);
  EXPECT_EQ(v.count(1), 2u);
  EXPECT_EQ(v.find("d"), -1);
  EXPECT_EQ(build_vocab(records, hp), v);

  hp.min_count = 2;
  const Vocab pruned = build_vocab(records, hp);
  ASSERT_EQ(pruned.size(), 1u);
  EXPECT_EQ(pruned.token(0), "b");

  hp.min_count = 3;
  EXPECT_THROW(build_vocab(records, hp), DataError);
}

TEST(Vocab, NoCaseFolding) {
  const Vocab v = build_vocab({{"Roofing roofing", "X"}}, Hyperparams{});
  EXPECT_EQ(v.size(), 2u);
  EXPECT_NE(v.find("Roofing"), v.find("roofing"));
}

TEST(Forward, AllOovIsUniform) {
  std::mt19937_64 rng(1);
  const Model model = random_model(5, 4, 8, rng);
  const Prediction pred = forward(model, {"zzz", "yyy"});
  ASSERT_EQ(pred.ranked.size(), 4u);
  for (const auto& [label, prob] : pred.ranked) EXPECT_DOUBLE_EQ(prob, 0.25);
  // Ties keep label order.
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(pred.ranked[i].first, static_cast<int>(i));
}

TEST(Forward, EqualOutputRowsGiveHalf) {
  std::mt19937_64 rng(2);
  Model model = random_model(6, 2, 5, rng);
  model.params.output.row(1) = model.params.output.row(0);
  for (const TokenSeq& tokens : {TokenSeq{"t0"}, TokenSeq{"t1", "t5", "t5"}, TokenSeq{}}) {
    const std::vector<double> p = by_label(forward(model, tokens), 2);
    EXPECT_DOUBLE_EQ(p[0], 0.5);
    EXPECT_DOUBLE_EQ(p[1], 0.5);
  }
}

TEST(Forward, MatchesNaiveOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Model model = random_model(3 + static_cast<int>(rng() % 8),
                                     2 + static_cast<int>(rng() % 5),
                                     2 + static_cast<int>(rng() % 15), rng);
    const TokenSeq tokens = tokenize(testing::random_text(model, 1 + rng() % 6, rng));
    const std::vector<double> expected = naive_probabilities(model, tokens);
    const std::vector<double> actual = by_label(forward(model, tokens), model.labels.size());
    double sum = 0.0;
    for (std::size_t l = 0; l < expected.size(); ++l) {
      EXPECT_NEAR(actual[l], expected[l], 1e-6);
      sum += actual[l];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Forward, TokenOrderDoesNotMatter) {
  std::mt19937_64 rng(4);
  const Model model = random_model(8, 3, 6, rng);
  TokenSeq tokens = {"t0", "t3", "t3", "t7", "t1"};
  const std::vector<double> before = by_label(forward(model, tokens), 3);
  std::reverse(tokens.begin(), tokens.end());
  const std::vector<double> after = by_label(forward(model, tokens), 3);
  for (int l = 0; l < 3; ++l) EXPECT_NEAR(before[l], after[l], 1e-12);
}

TEST(Forward, RankedDescending) {
  std::mt19937_64 rng(5);
  const Model model = random_model(8, 6, 6, rng);
  const Prediction pred = forward(model, {"t2", "t4"});
  for (std::size_t i = 1; i < pred.ranked.size(); ++i) {
    EXPECT_GE(pred.ranked[i - 1].second, pred.ranked[i].second);
  }
}

TEST(Train, SeparableOverfit) {
  TrainLog log;
  const Model model = train(separable_corpus(), Hyperparams{}, &log);
  ASSERT_EQ(log.epoch_loss.size(), 6u);
  EXPECT_LT(log.epoch_loss.back(), log.epoch_loss.front());
  for (const Record& r : separable_corpus()) {
    EXPECT_EQ(model.labels[predict_topk(model, r.name, 1).ranked[0].first], r.label) << r.name;
  }
}

TEST(Train, SameSeedSameBytes) {
  testing::TempDir dir;
  Hyperparams hp;
  hp.seed = 11;
  save(train(separable_corpus(), hp), dir / "a.bin");
  save(train(separable_corpus(), hp), dir / "b.bin");
  EXPECT_EQ(testing::read_text(dir / "a.bin"), testing::read_text(dir / "b.bin"));
  hp.seed = 12;
  save(train(separable_corpus(), hp), dir / "c.bin");
  EXPECT_NE(testing::read_text(dir / "a.bin"), testing::read_text(dir / "c.bin"));
}

TEST(Train, LabelsAreSortedAndNeedTwo) {
  const Model model = train({{"x", "Zeta"}, {"y", "Alpha"}}, Hyperparams{});
  EXPECT_EQ(model.labels, (std::vector<std::string>{"Alpha", "Zeta"}));
  EXPECT_THROW(train({{"x", "A"}, {"y", "A"}}, Hyperparams{}), DataError);
}

TEST(Train, NonFiniteLossIsReported) {
  Hyperparams hp;
  hp.lr = 1e30;
  hp.epochs = 50;
  EXPECT_THROW(train(separable_corpus(), hp), DataError);
}

TEST(Train, SubwordsAddHashedRows) {
  Hyperparams hp;
  hp.minn = 3;
  hp.maxn = 4;
  hp.bucket_count = 1000;
  hp.dim = 10;
  const Model model = train(separable_corpus(), hp);
  EXPECT_EQ(model.params.input.rows(), static_cast<Eigen::Index>(model.vocab.size() + 1000));
  // An unseen word still shares n-grams with "alpha".
  EXPECT_FALSE(features(model, {"alphas"}).empty());
}

TEST(PredictTopK, RangeChecks) {
  const Model model = train(separable_corpus(), Hyperparams{});
  EXPECT_EQ(predict_topk(model, "alpha", 2).ranked.size(), 2u);
  EXPECT_THROW(predict_topk(model, "alpha", 0), UsageError);
  EXPECT_THROW(predict_topk(model, "alpha", 3), UsageError);
}

TEST(PredictTopK, MaskModelMasksInput) {
  NameLexicon lex;
  lex.add("Daniel", Gender::kMale);
  lex.add("Mary", Gender::kFemale);
  const std::vector<Record> records = {{"Daniel's Gems", "Jeweller"}, {"Mary's Pipes", "Plumber"}};
  const Model model = train_model(records, Hyperparams{}, TrainingMode::kMask, lex);
  EXPECT_EQ(model.vocab.find("Daniel's"), -1);
  EXPECT_NE(model.vocab.find("_"), -1);
  EXPECT_EQ(preprocess(model, "Mary's Gems"), "_ Gems");
  const Prediction a = predict_topk(model, "Mary's Gems", 2);
  const Prediction b = predict_topk(model, "Daniel's Gems", 2);
  EXPECT_EQ(a.ranked, b.ranked);
}

TEST(TrainModel, ModesNeedLexicon) {
  EXPECT_THROW(train_model(separable_corpus(), Hyperparams{}, TrainingMode::kAugment, {}),
               UsageError);
  EXPECT_EQ(parse_training_mode("augment"), TrainingMode::kAugment);
  EXPECT_THROW(parse_training_mode("fancy"), UsageError);
}

}  // namespace
}  // namespace bizfair
