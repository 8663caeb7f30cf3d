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
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bizfair/error.h"
#include "text.h"

namespace bizfair {

void validate(const Hyperparams& hp) {
  if (hp.dim < 1) throw UsageError("dim must be >= 1");
  if (!(hp.lr > 0.0) || !std::isfinite(hp.lr)) throw UsageError("lr must be > 0");
  if (hp.epochs < 1) throw UsageError("epochs must be >= 1");
  if (hp.min_count < 1) throw UsageError("min_count must be >= 1");
  if (hp.maxn > 0 && (hp.minn < 1 || hp.minn > hp.maxn)) {
    throw UsageError("char n-gram range needs 1 <= minn <= maxn");
  }
  if (hp.bucket_count < 0) throw UsageError("bucket_count must be >= 0");
}

void Vocab::add(const std::string& token, std::uint64_t count) {
  auto it = index_.find(token);
  if (it != index_.end()) {
    counts_[it->second] += count;
    return;
  }
  const auto id = static_cast<std::int32_t>(tokens_.size());
  index_.emplace(token, id);
  tokens_.push_back(token);
  counts_.push_back(count);
}

std::int32_t Vocab::find(std::string_view token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

Vocab Vocab::pruned(std::uint64_t min_count) const {
  Vocab out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (counts_[i] >= min_count) out.add(tokens_[i], counts_[i]);
  }
  return out;
}

Vocab build_vocab(const std::vector<Record>& train, const Hyperparams& hp) {
  if (train.empty()) throw DataError("cannot build a vocabulary from no records");
  Vocab all;
  for (const Record& r : train) {
    for (const std::string& token : tokenize(r.name)) all.add(token);
  }
  Vocab vocab = all.pruned(static_cast<std::uint64_t>(std::max(hp.min_count, 1)));
  if (vocab.size() == 0) throw DataError("vocabulary is empty after min_count");
  return vocab;
}

std::string_view to_string(TrainingMode mode) {
  switch (mode) {
    case TrainingMode::kRaw:
      return "raw";
    case TrainingMode::kMask:
      return "mask";
    case TrainingMode::kAugment:
      return "augment";
  }
  return "?";
}

TrainingMode parse_training_mode(std::string_view s) {
  for (TrainingMode m :
       {TrainingMode::kRaw, TrainingMode::kMask, TrainingMode::kAugment}) {
    if (to_string(m) == s) return m;
  }
  throw UsageError("unknown mode '" + std::string(s) + "' (raw, mask, augment)");
}

std::int32_t Model::label_index(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<std::int32_t>(it - labels.begin());
}

namespace {

std::uint32_t fnv1a(std::string_view s) {
  std::uint32_t h = 2166136261u;
  for (char c : s) {
    h ^= static_cast<std::uint32_t>(static_cast<std::int8_t>(c));
    h *= 16777619u;
  }
  return h;
}

void append_char_ngrams(const std::string& token, const Hyperparams& hp,
                        std::int32_t offset, std::vector<std::int32_t>* out) {
  const std::string word = "<" + token + ">";
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < word.size();) {
    starts.push_back(i);
    std::size_t len = 0;
    text::decode(word, i, &len);
    i += len;
  }
  starts.push_back(word.size());
  const std::size_t chars = starts.size() - 1;
  for (std::size_t i = 0; i < chars; ++i) {
    for (int n = hp.minn; n <= hp.maxn && i + n <= chars; ++n) {
      // The bare boundary markers are not n-grams.
      if (n == 1 && (i == 0 || i + 1 == chars)) continue;
      const std::string_view gram(word.data() + starts[i], starts[i + n] - starts[i]);
      out->push_back(offset + static_cast<std::int32_t>(
                                  fnv1a(gram) % static_cast<std::uint64_t>(hp.bucket_count)));
    }
  }
}

}  // namespace

std::vector<std::int32_t> features(const Model& model, const TokenSeq& tokens) {
  std::vector<std::int32_t> out;
  out.reserve(tokens.size());
  const auto offset = static_cast<std::int32_t>(model.vocab.size());
  for (const std::string& token : tokens) {
    const std::int32_t id = model.vocab.find(token);
    if (id >= 0) out.push_back(id);
    if (model.hp.subwords()) append_char_ngrams(token, model.hp, offset, &out);
  }
  return out;
}

Prediction forward(const Model& model, const TokenSeq& tokens) {
  const std::vector<std::int32_t> feats = features(model, tokens);
  const Eigen::VectorXd probs = probabilities(model.params, feats);
  Prediction pred;
  pred.ranked.reserve(probs.size());
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    pred.ranked.emplace_back(static_cast<std::int32_t>(i), probs[i]);
  }
  std::stable_sort(pred.ranked.begin(), pred.ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return pred;
}

std::string preprocess(const Model& model, std::string_view text) {
  if (model.mode == TrainingMode::kMask) {
    return mask_names(text, model.lexicon, model.mask_policy);
  }
  return std::string(text);
}

Prediction predict_topk(const Model& model, std::string_view text, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > model.labels.size()) {
    throw UsageError("k must be in [1, " + std::to_string(model.labels.size()) + "]");
  }
  Prediction pred = forward(model, tokenize(preprocess(model, text)));
  pred.ranked.resize(static_cast<std::size_t>(k));
  return pred;
}

Model train(const std::vector<Record>& records, const Hyperparams& hp,
            TrainLog* log) {
  validate(hp);
  if (records.empty()) throw DataError("no training records");

  Model model;
  model.hp = hp;
  {
    std::set<std::string> distinct;
    for (const Record& r : records) distinct.insert(r.label);
    if (distinct.size() < 2) throw DataError("training needs at least 2 distinct labels");
    model.labels.assign(distinct.begin(), distinct.end());
  }
  model.vocab = build_vocab(records, hp);

  const Eigen::Index rows = static_cast<Eigen::Index>(model.vocab.size()) +
                            (hp.subwords() ? hp.bucket_count : 0);
  std::mt19937_64 rng(hp.seed);
  model.params.input.resize(rows, hp.dim);
  std::uniform_real_distribution<float> init(-1.0f / hp.dim, 1.0f / hp.dim);
  for (Eigen::Index i = 0; i < model.params.input.size(); ++i) {
    model.params.input.data()[i] = init(rng);
  }
  model.params.output = RowMatrix<float>::Zero(
      static_cast<Eigen::Index>(model.labels.size()), hp.dim);

  std::vector<std::vector<std::int32_t>> feats;
  std::vector<std::int32_t> targets;
  feats.reserve(records.size());
  targets.reserve(records.size());
  for (const Record& r : records) {
    feats.push_back(features(model, tokenize(r.name)));
    targets.push_back(model.label_index(r.label));
  }

  const std::size_t n = records.size();
  const double total = static_cast<double>(n) * hp.epochs;
  std::size_t processed = 0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  RowMatrix<float>& input = model.params.input;
  RowMatrix<float>& output = model.params.output;
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t idx : order) {
      const double lr = hp.lr * (1.0 - static_cast<double>(processed) / total);
      ++processed;
      const std::vector<std::int32_t>& f = feats[idx];
      if (f.empty()) {
        if (log) ++log->skipped;
        continue;
      }
      const Eigen::VectorXd hidden = hidden_state(input, f);
      const Eigen::VectorXd scores = label_scores(output, hidden);
      Eigen::VectorXd delta = softmax(scores);
      const double loss = -std::log(delta[targets[idx]]);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "non-finite loss at epoch " << epoch + 1 << " on record '"
            << records[idx].name << "' (lr " << lr << ")";
        throw DataError(msg.str());
      }
      loss_sum += loss;
      ++counted;
      delta[targets[idx]] -= 1.0;

      const Eigen::VectorXf hidden_step =
          (-lr / static_cast<double>(f.size()) *
           (output.cast<double>().transpose() * delta))
              .cast<float>();
      output.noalias() -= ((lr * delta) * hidden.transpose()).cast<float>();
      for (std::int32_t row : f) input.row(row) += hidden_step.transpose();
    }
    if (log) log->epoch_loss.push_back(counted ? loss_sum / counted : 0.0);
  }
  return model;
}

Model train_model(const std::vector<Record>& records, const Hyperparams& hp,
                  TrainingMode mode, const NameLexicon& lexicon,
                  const MaskPolicy& policy, TrainLog* log) {
  if (mode != TrainingMode::kRaw && lexicon.empty()) {
    throw UsageError(std::string("mode ") + std::string(to_string(mode)) +
                     " needs a name lexicon");
  }
  Model model;
  switch (mode) {
    case TrainingMode::kRaw:
      model = train(records, hp, log);
      break;
    case TrainingMode::kMask: {
      validate(policy, lexicon);
      std::vector<Record> masked;
      masked.reserve(records.size());
      for (const Record& r : records) {
        masked.push_back({mask_names(r.name, lexicon, policy), r.label});
      }
      model = train(masked, hp, log);
      model.lexicon = lexicon;
      model.mask_policy = policy;
      break;
    }
    case TrainingMode::kAugment:
      model = train(gender_swap_augment(records, lexicon, hp.seed), hp, log);
      break;
  }
  model.mode = mode;
  return model;
}

GradientCheck gradient_check(const Model& model, const Record& record,
                             double epsilon) {
  const std::int32_t target = model.label_index(record.label);
  if (target < 0) throw UsageError("record label not in model: " + record.label);
  const std::vector<std::int32_t> feats =
      features(model, tokenize(preprocess(model, record.name)));

  Parameters<double> params = model.params.cast<double>();
  const Gradient grad = cross_entropy_gradient(params, feats, target);

  GradientCheck result;
  const auto numeric = [&](double* entry) {
    const double saved = *entry;
    *entry = saved + epsilon;
    const double plus = cross_entropy(params, feats, target);
    *entry = saved - epsilon;
    const double minus = cross_entropy(params, feats, target);
    *entry = saved;
    return (plus - minus) / (2.0 * epsilon);
  };
  const auto compare = [&](double analytic, double fd) {
    const double abs_err = std::abs(analytic - fd);
    const double scale = std::max({std::abs(analytic), std::abs(fd), 1e-6});
    result.max_absolute_error = std::max(result.max_absolute_error, abs_err);
    result.max_relative_error = std::max(result.max_relative_error, abs_err / scale);
    ++result.entries_checked;
  };

  for (Eigen::Index i = 0; i < params.output.rows(); ++i) {
    for (Eigen::Index j = 0; j < params.output.cols(); ++j) {
      compare(grad.output(i, j), numeric(&params.output(i, j)));
    }
  }
  std::set<std::int32_t> touched;
  for (const auto& [row, g] : grad.input_rows) {
    touched.insert(row);
    for (Eigen::Index j = 0; j < params.input.cols(); ++j) {
      compare(g[j], numeric(&params.input(row, j)));
    }
  }
  // A few untouched rows: the loss must not move at all.
  std::size_t sampled = 0;
  for (Eigen::Index row = 0; row < params.input.rows() && sampled < 3; ++row) {
    if (touched.contains(static_cast<std::int32_t>(row))) continue;
    ++sampled;
    for (Eigen::Index j = 0; j < params.input.cols(); ++j) {
      result.max_untouched_difference = std::max(
          result.max_untouched_difference, std::abs(numeric(&params.input(row, j))));
    }
  }
  return result;
}

}  // namespace bizfair
