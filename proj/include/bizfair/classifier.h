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

#ifndef BIZFAIR_CLASSIFIER_H_
#define BIZFAIR_CLASSIFIER_H_

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bizfair/ingest.h"
#include "bizfair/nametext.h"

namespace bizfair {

template <typename Scalar>
using RowMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Input embeddings (one row per feature) and output weights (one row per
// label). The classifier has no bias terms.
template <typename Scalar>
struct Parameters {
  RowMatrix<Scalar> input;
  RowMatrix<Scalar> output;

  template <typename Other>
  Parameters<Other> cast() const {
    return {input.template cast<Other>(), output.template cast<Other>()};
  }
};

// Mean of the feature rows, accumulated in double. Zero when `features` is
// empty.
template <typename Scalar>
Eigen::VectorXd hidden_state(const RowMatrix<Scalar>& input,
                             std::span<const std::int32_t> features) {
  Eigen::VectorXd hidden = Eigen::VectorXd::Zero(input.cols());
  if (features.empty()) return hidden;
  for (std::int32_t f : features) {
    hidden += input.row(f).transpose().template cast<double>();
  }
  return hidden / static_cast<double>(features.size());
}

template <typename Scalar>
Eigen::VectorXd label_scores(const RowMatrix<Scalar>& output,
                             const Eigen::VectorXd& hidden) {
  Eigen::VectorXd scores(output.rows());
  for (Eigen::Index i = 0; i < output.rows(); ++i) {
    scores[i] = output.row(i).template cast<double>().dot(hidden.transpose());
  }
  return scores;
}

inline Eigen::VectorXd softmax(const Eigen::VectorXd& scores) {
  const Eigen::VectorXd shifted =
      (scores.array() - scores.maxCoeff()).exp().matrix();
  return shifted / shifted.sum();
}

template <typename Scalar>
Eigen::VectorXd probabilities(const Parameters<Scalar>& params,
                              std::span<const std::int32_t> features) {
  return softmax(label_scores(params.output, hidden_state(params.input, features)));
}

// -log softmax(W * mean(E[features]))[target].
template <typename Scalar>
double cross_entropy(const Parameters<Scalar>& params,
                     std::span<const std::int32_t> features,
                     std::int32_t target) {
  const Eigen::VectorXd scores =
      label_scores(params.output, hidden_state(params.input, features));
  const double max = scores.maxCoeff();
  const double log_sum = max + std::log((scores.array() - max).exp().sum());
  return log_sum - scores[target];
}

// Analytic cross-entropy gradient. `input_rows` holds one entry per distinct
// feature row touched (a feature repeated k times gets k / m of the hidden
// gradient).
struct Gradient {
  RowMatrix<double> output;
  std::vector<std::pair<std::int32_t, Eigen::VectorXd>> input_rows;
  double loss = 0.0;
};

template <typename Scalar>
Gradient cross_entropy_gradient(const Parameters<Scalar>& params,
                                std::span<const std::int32_t> features,
                                std::int32_t target) {
  Gradient grad;
  const Eigen::VectorXd hidden = hidden_state(params.input, features);
  const Eigen::VectorXd scores = label_scores(params.output, hidden);
  Eigen::VectorXd delta = softmax(scores);
  grad.loss = -std::log(delta[target]);
  delta[target] -= 1.0;

  grad.output = delta * hidden.transpose();
  if (features.empty()) return grad;

  const Eigen::VectorXd hidden_grad =
      params.output.template cast<double>().transpose() * delta /
      static_cast<double>(features.size());
  std::unordered_map<std::int32_t, std::size_t> slot;
  for (std::int32_t f : features) {
    auto [it, inserted] = slot.emplace(f, grad.input_rows.size());
    if (inserted) {
      grad.input_rows.emplace_back(f, hidden_grad);
    } else {
      grad.input_rows[it->second].second += hidden_grad;
    }
  }
  return grad;
}

struct Hyperparams {
  int dim = 100;
  double lr = 0.2;
  int epochs = 6;
  int window = 5;  // stored for the record; no effect in supervised mode
  int min_count = 1;
  std::int64_t bucket_count = 2'000'000;
  int minn = 0;  // char n-gram range; maxn == 0 disables subword features
  int maxn = 0;
  std::uint64_t seed = 0;

  bool subwords() const { return maxn > 0 && bucket_count > 0; }
};

void validate(const Hyperparams& hp);

// Token -> dense id in first-seen order, with frequencies.
class Vocab {
 public:
  void add(const std::string& token, std::uint64_t count = 1);
  std::int32_t find(std::string_view token) const;  // -1 when absent
  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::int32_t id) const { return tokens_[id]; }
  std::uint64_t count(std::int32_t id) const { return counts_[id]; }

  // Drops tokens with count < min_count, renumbering the rest in order.
  Vocab pruned(std::uint64_t min_count) const;

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.tokens_ == b.tokens_ && a.counts_ == b.counts_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::int32_t, Hash, std::equal_to<>> index_;
};

Vocab build_vocab(const std::vector<Record>& train, const Hyperparams& hp);

enum class TrainingMode { kRaw, kMask, kAugment };

std::string_view to_string(TrainingMode mode);
TrainingMode parse_training_mode(std::string_view s);

struct Model {
  Hyperparams hp;
  TrainingMode mode = TrainingMode::kRaw;
  MaskPolicy mask_policy;
  NameLexicon lexicon;  // populated for kMask only
  Vocab vocab;
  std::vector<std::string> labels;
  Parameters<float> params;

  std::int32_t label_index(std::string_view label) const;  // -1 when absent
};

// Row ids of `model.params.input` for the tokens: in-vocab token ids, plus
// hashed char n-gram rows when subword features are enabled.
std::vector<std::int32_t> features(const Model& model, const TokenSeq& tokens);

struct Prediction {
  std::vector<std::pair<std::int32_t, double>> ranked;  // (label index, prob)
};

// Ranked by probability, ties broken by label index. Does not mask.
Prediction forward(const Model& model, const TokenSeq& tokens);

// Applies the model's own preprocessing (masking for kMask), then returns the
// first k entries of the ranking. Throws UsageError for k outside
// [1, |labels|].
Prediction predict_topk(const Model& model, std::string_view text, int k);

// Text as the model sees it at inference.
std::string preprocess(const Model& model, std::string_view text);

struct TrainLog {
  std::vector<double> epoch_loss;  // mean loss over non-skipped records
  std::size_t skipped = 0;         // records with no in-vocab feature, summed
                                   // over epochs
};

// Core SGD training on already preprocessed records.
Model train(const std::vector<Record>& train, const Hyperparams& hp,
            TrainLog* log = nullptr);

// Applies masking or augmentation for `mode`, trains, and stores the mode
// (and for kMask the lexicon) in the model.
Model train_model(const std::vector<Record>& records, const Hyperparams& hp,
                  TrainingMode mode, const NameLexicon& lexicon,
                  const MaskPolicy& policy = {}, TrainLog* log = nullptr);

struct GradientCheck {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  // Largest |finite difference| over a sample of parameters the record does
  // not touch; the loss does not depend on them, so this is exactly 0.
  double max_untouched_difference = 0.0;
  std::size_t entries_checked = 0;
};

// Compares the analytic gradient with central differences for every touched
// entry of E and every entry of W, in double precision.
GradientCheck gradient_check(const Model& model, const Record& record,
                             double epsilon);

void save(const Model& model, const std::filesystem::path& path);
Model load(const std::filesystem::path& path);

}  // namespace bizfair

#endif  // BIZFAIR_CLASSIFIER_H_
